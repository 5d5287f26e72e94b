//! Model builders for classical and non-Kac examples.

pub mod builders;
pub mod group;

pub use builders::{drinfeld_double, function_algebra, group_algebra, taft};
pub use group::GroupTable;

use crate::hopf::QGModel;

/// Names accepted by [`by_name`].
pub const STANDARD: [&str; 10] = ["trivial", "c_z2", "c_z3", "c_s3", "cg_z2", "cg_s3", "d_z3", "d_s3", "sweedler_h4", "taft_t3"];

/// The built-in models.
pub fn by_name(name: &str) -> Option<QGModel> {
    let m = match name {
        "trivial" => function_algebra(&GroupTable::trivial(), name),
        "c_z2" => function_algebra(&GroupTable::cyclic(2), name),
        "c_z3" => function_algebra(&GroupTable::cyclic(3), name),
        "c_s3" => function_algebra(&GroupTable::symmetric3(), name),
        "cg_z2" => group_algebra(&GroupTable::cyclic(2), name),
        "cg_s3" => group_algebra(&GroupTable::symmetric3(), name),
        "d_z3" => drinfeld_double(&GroupTable::cyclic(3), name),
        "d_s3" => drinfeld_double(&GroupTable::symmetric3(), name),
        "sweedler_h4" => taft(2).ok()?.renamed(name),
        "taft_t3" => taft(3).ok()?.renamed(name),
        _ => return None,
    };
    Some(m)
}
