pub mod linmap;
pub mod mat;
pub mod solve;
pub mod spectral;

pub use linmap::LinMap;
pub use mat::Mat;
