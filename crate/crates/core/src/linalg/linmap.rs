use super::mat::Mat;
use super::solve;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A linear map between tensor products of spaces. Legs are the dimensions
/// of the tensor factors; basis multi-indices are row-major (leg 0 most
/// significant), matching [`Mat::kron`].
#[derive(Clone, Debug, PartialEq)]
pub struct LinMap<S> {
    dom: Vec<usize>,
    cod: Vec<usize>,
    mat: Mat<S>,
}

pub fn leg_product(legs: &[usize]) -> usize {
    legs.iter().product()
}

/// Splits a flat index into per-leg indices.
pub fn unflatten(mut idx: usize, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for k in (0..dims.len()).rev() {
        out[k] = idx % dims[k];
        idx /= dims[k];
    }
    out
}

pub fn flatten(multi: &[usize], dims: &[usize]) -> usize {
    multi.iter().zip(dims).fold(0, |acc, (&i, &d)| acc * d + i)
}

impl<S: Scalar> LinMap<S> {
    pub fn new(dom: Vec<usize>, cod: Vec<usize>, mat: Mat<S>) -> Result<Self> {
        if mat.cols() != leg_product(&dom) {
            return Err(Error::Dimension { what: "linear map columns".into(), expected: leg_product(&dom), found: mat.cols() });
        }
        if mat.rows() != leg_product(&cod) {
            return Err(Error::Dimension { what: "linear map rows".into(), expected: leg_product(&cod), found: mat.rows() });
        }
        Ok(LinMap { dom, cod, mat })
    }

    /// Map from a single leg of dimension `cols` to a single leg of dimension `rows`.
    pub fn from_mat(mat: Mat<S>) -> Self {
        LinMap { dom: vec![mat.cols()], cod: vec![mat.rows()], mat }
    }

    pub fn identity(legs: &[usize]) -> Self {
        LinMap { dom: legs.to_vec(), cod: legs.to_vec(), mat: Mat::identity(leg_product(legs)) }
    }

    /// Leg permutation: output leg `k` carries input leg `perm[k]`.
    pub fn permutation(dims: &[usize], perm: &[usize]) -> Result<Self> {
        let mut seen = vec![false; dims.len()];
        if perm.len() != dims.len() || perm.iter().any(|&p| p >= dims.len() || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::BadLegSelection { legs: perm.to_vec(), reason: "not a permutation of the legs" });
        }
        let out_dims: Vec<usize> = perm.iter().map(|&p| dims[p]).collect();
        let n = leg_product(dims);
        let mut mat = Mat::zeros(n, n);
        for col in 0..n {
            let input = unflatten(col, dims);
            let output: Vec<usize> = perm.iter().map(|&p| input[p]).collect();
            mat[(flatten(&output, &out_dims), col)] = S::one();
        }
        Ok(LinMap { dom: dims.to_vec(), cod: out_dims, mat })
    }

    /// The flip `a⊗b ↦ b⊗a`.
    pub fn flip(d1: usize, d2: usize) -> Self {
        Self::permutation(&[d1, d2], &[1, 0]).expect("valid permutation")
    }

    pub fn dom(&self) -> &[usize] {
        &self.dom
    }

    pub fn cod(&self) -> &[usize] {
        &self.cod
    }

    pub fn mat(&self) -> &Mat<S> {
        &self.mat
    }

    pub fn into_mat(self) -> Mat<S> {
        self.mat
    }

    /// `self ∘ g`
    pub fn compose(&self, g: &LinMap<S>) -> Result<Self> {
        if g.cod != self.dom {
            return Err(Error::LegMismatch { expected: self.dom.clone(), found: g.cod.clone() });
        }
        Ok(LinMap { dom: g.dom.clone(), cod: self.cod.clone(), mat: self.mat.mul(&g.mat) })
    }

    pub fn tensor(&self, g: &LinMap<S>) -> Self {
        let dom = self.dom.iter().chain(&g.dom).copied().collect();
        let cod = self.cod.iter().chain(&g.cod).copied().collect();
        LinMap { dom, cod, mat: self.mat.kron(&g.mat) }
    }

    pub fn apply(&self, v: &[S]) -> Result<Vec<S>> {
        if v.len() != self.mat.cols() {
            return Err(Error::Dimension { what: "vector".into(), expected: self.mat.cols(), found: v.len() });
        }
        Ok(self.mat.mul_vec(v))
    }

    pub fn inverse(&self, tol: f64) -> Result<Self> {
        let mat = solve::inverse(&self.mat, tol)?;
        Ok(LinMap { dom: self.cod.clone(), cod: self.dom.clone(), mat })
    }

    fn check_legs(&self, legs: &[usize], dims: &[usize]) -> Result<()> {
        if let Some(&leg) = legs.iter().find(|&&l| l >= dims.len()) {
            return Err(Error::LegOutOfRange { leg, count: dims.len() });
        }
        let mut sorted = legs.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != legs.len() {
            return Err(Error::BadLegSelection { legs: legs.to_vec(), reason: "repeated leg" });
        }
        if self.dom.len() != self.cod.len() {
            return Err(Error::BadLegSelection { legs: legs.to_vec(), reason: "map changes the number of legs" });
        }
        let selected: Vec<usize> = legs.iter().map(|&l| dims[l]).collect();
        if selected != self.dom {
            return Err(Error::LegMismatch { expected: self.dom.clone(), found: selected });
        }
        Ok(())
    }

    /// Applies `self` to the selected legs (0-based) of a vector in the tensor
    /// product with leg dimensions `dims`; leg `legs[k]` of the output carries
    /// codomain leg `k` of `self`. This is the leg-numbering convention of
    /// expressions like `W₁₂W₁₃W₂₃`.
    pub fn apply_on_legs(&self, legs: &[usize], dims: &[usize], v: &[S]) -> Result<Vec<S>> {
        self.check_legs(legs, dims)?;
        if v.len() != leg_product(dims) {
            return Err(Error::Dimension { what: "tensor vector".into(), expected: leg_product(dims), found: v.len() });
        }
        let mut out_dims = dims.to_vec();
        for (k, &l) in legs.iter().enumerate() {
            out_dims[l] = self.cod[k];
        }
        let columns: Vec<Vec<(usize, S)>> = (0..self.mat.cols()).map(|c| self.mat.column_nonzeros(c)).collect();
        let mut out = vec![S::zero(); leg_product(&out_dims)];
        for (idx, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let mut multi = unflatten(idx, dims);
            let sub: Vec<usize> = legs.iter().map(|&l| multi[l]).collect();
            for (row, c) in &columns[flatten(&sub, &self.dom)] {
                let rsub = unflatten(*row, &self.cod);
                for (k, &l) in legs.iter().enumerate() {
                    multi[l] = rsub[k];
                }
                out[flatten(&multi, &out_dims)].add_mul(c, x);
            }
        }
        Ok(out)
    }

    /// The full matrix of `self` acting on the selected legs of the tensor
    /// product with leg dimensions `dims`, identity elsewhere.
    pub fn embed_on_legs(&self, legs: &[usize], dims: &[usize]) -> Result<Self> {
        self.check_legs(legs, dims)?;
        let mut out_dims = dims.to_vec();
        for (k, &l) in legs.iter().enumerate() {
            out_dims[l] = self.cod[k];
        }
        let columns: Vec<Vec<(usize, S)>> = (0..self.mat.cols()).map(|c| self.mat.column_nonzeros(c)).collect();
        let mut mat = Mat::zeros(leg_product(&out_dims), leg_product(dims));
        for col in 0..leg_product(dims) {
            let mut multi = unflatten(col, dims);
            let sub: Vec<usize> = legs.iter().map(|&l| multi[l]).collect();
            for (row, c) in &columns[flatten(&sub, &self.dom)] {
                let rsub = unflatten(*row, &self.cod);
                for (k, &l) in legs.iter().enumerate() {
                    multi[l] = rsub[k];
                }
                mat[(flatten(&multi, &out_dims), col)] = c.clone();
            }
        }
        Ok(LinMap { dom: dims.to_vec(), cod: out_dims, mat })
    }

    pub fn max_diff(&self, other: &LinMap<S>) -> Result<(f64, Option<(usize, usize)>)> {
        if self.dom != other.dom || self.cod != other.cod {
            return Err(Error::LegMismatch { expected: [self.dom.clone(), self.cod.clone()].concat(), found: [other.dom.clone(), other.cod.clone()].concat() });
        }
        Ok(self.mat.max_diff(&other.mat))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Cyclo, Rational};
    use proptest::prelude::*;

    fn basis(n: usize, i: usize) -> Vec<Cyclo> {
        (0..n).map(|k| if k == i { Cyclo::one() } else { Cyclo::zero() }).collect()
    }

    #[test]
    fn identity_composition() {
        let f = LinMap::new(vec![2], vec![3], Mat::from_fn(3, 2, |r, c| Cyclo::from_int((r + 3 * c) as i64))).unwrap();
        assert_eq!(LinMap::identity(&[3]).compose(&f).unwrap(), f);
        assert_eq!(f.compose(&LinMap::identity(&[2])).unwrap(), f);
    }

    #[test]
    fn compose_reports_both_signatures() {
        let f = LinMap::<Cyclo>::identity(&[2, 2]);
        let g = LinMap::<Cyclo>::identity(&[4]);
        match f.compose(&g) {
            Err(Error::LegMismatch { expected, found }) => {
                assert_eq!(expected, vec![2, 2]);
                assert_eq!(found, vec![4]);
            }
            other => panic!("expected leg mismatch, got {other:?}"),
        }
    }

    #[test]
    fn flip_is_an_involution() {
        let f = LinMap::<Cyclo>::flip(2, 2);
        assert_eq!(f.compose(&f).unwrap(), LinMap::identity(&[2, 2]));
    }

    #[test]
    fn three_cycle_factors_into_transpositions() {
        let dims = [2, 2, 2];
        let p12 = LinMap::<Cyclo>::permutation(&dims, &[1, 0, 2]).unwrap();
        let p23 = LinMap::<Cyclo>::permutation(&dims, &[0, 2, 1]).unwrap();
        let cycle = LinMap::<Cyclo>::permutation(&dims, &[2, 0, 1]).unwrap();
        assert_eq!(p12.compose(&p23).unwrap(), cycle);
        // e_a⊗e_b⊗e_c ↦ e_c⊗e_a⊗e_b
        for col in 0..8 {
            let [a, b, c] = [col / 4, (col / 2) % 2, col % 2];
            let image = cycle.apply(&basis(8, col)).unwrap();
            assert_eq!(image, basis(8, c * 4 + a * 2 + b));
        }
    }

    #[test]
    fn apply_on_legs_examples() {
        let v = basis(6, 4); // e_2⊗e_1 in C³⊗C²
        assert_eq!(LinMap::<Cyclo>::identity(&[3]).apply_on_legs(&[0], &[3, 2], &v).unwrap(), v);

        let dims = [3, 3, 3];
        let e = flatten(&[0, 1, 2], &dims);
        let flipped = LinMap::<Cyclo>::flip(3, 3).apply_on_legs(&[0, 1], &dims, &basis(27, e)).unwrap();
        assert_eq!(flipped, basis(27, flatten(&[1, 0, 2], &dims)));

        assert!(matches!(
            LinMap::<Cyclo>::identity(&[3]).apply_on_legs(&[3], &dims, &basis(27, 0)),
            Err(Error::LegOutOfRange { leg: 3, count: 3 })
        ));
    }

    #[test]
    fn pentagon_for_the_scalar_unitary() {
        let w = LinMap::<Cyclo>::identity(&[1, 1]);
        let dims = [1, 1, 1];
        let v = vec![Cyclo::one()];
        let lhs = w.apply_on_legs(&[1, 2], &dims, &v).unwrap();
        let lhs = w.apply_on_legs(&[0, 2], &dims, &lhs).unwrap();
        let lhs = w.apply_on_legs(&[0, 1], &dims, &lhs).unwrap();
        let rhs = w.apply_on_legs(&[0, 1], &dims, &v).unwrap();
        let rhs = w.apply_on_legs(&[1, 2], &dims, &rhs).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn embed_matches_apply() {
        let f = LinMap::new(vec![2, 3], vec![2, 3], Mat::from_fn(6, 6, |r, c| Cyclo::from_int(((r * 7 + c * 3) % 5) as i64 - 2))).unwrap();
        let dims = [3, 2, 2];
        let big = f.embed_on_legs(&[2, 0], &dims).unwrap();
        for col in 0..12 {
            assert_eq!(big.apply(&basis(12, col)).unwrap(), f.apply_on_legs(&[2, 0], &dims, &basis(12, col)).unwrap());
        }
    }

    #[test]
    fn tensor_acts_factorwise() {
        let f = LinMap::from_mat(Mat::from_fn(2, 2, |r, c| Cyclo::from_int((r + 2 * c) as i64 + 1)));
        let g = LinMap::from_mat(Mat::from_fn(3, 3, |r, c| Cyclo::from_int(r as i64 - c as i64)));
        let fg = f.tensor(&g);
        for i in 0..2 {
            for j in 0..3 {
                let lhs = fg.apply(&basis(6, i * 3 + j)).unwrap();
                let fv = f.apply(&basis(2, i)).unwrap();
                let gv = g.apply(&basis(3, j)).unwrap();
                let rhs = Mat::from_columns(2, &[fv]).kron(&Mat::from_columns(3, &[gv])).column(0);
                assert_eq!(lhs, rhs);
            }
        }
    }

    fn small_rational() -> impl Strategy<Value = Cyclo> {
        (-3i64..4, 1i64..3).prop_map(|(p, q)| Cyclo::from_rational(Rational::new(p, q)))
    }

    proptest! {
        #[test]
        fn disjoint_legs_commute(
            fm in prop::collection::vec(small_rational(), 4),
            gm in prop::collection::vec(small_rational(), 9),
            v in prop::collection::vec(small_rational(), 24),
        ) {
            let f = LinMap::from_mat(Mat::from_rows(2, 2, fm));
            let g = LinMap::from_mat(Mat::from_rows(3, 3, gm));
            let dims = [3, 4, 2];
            let fg = g.apply_on_legs(&[0], &dims, &f.apply_on_legs(&[2], &dims, &v).unwrap()).unwrap();
            let gf = f.apply_on_legs(&[2], &dims, &g.apply_on_legs(&[0], &dims, &v).unwrap()).unwrap();
            prop_assert_eq!(fg, gf);
        }

        #[test]
        fn composition_is_associative(
            a in prop::collection::vec(small_rational(), 6),
            b in prop::collection::vec(small_rational(), 6),
            c in prop::collection::vec(small_rational(), 4),
        ) {
            let f = LinMap::from_mat(Mat::from_rows(3, 2, a));
            let g = LinMap::from_mat(Mat::from_rows(2, 3, b));
            let h = LinMap::new(vec![2, 2], vec![3], Mat::from_rows(3, 4, [c.clone(), c.clone(), c].concat()[..12].to_vec())).unwrap();
            prop_assert_eq!(f.compose(&g).unwrap().compose(&LinMap::from_mat(h.mat().clone())).unwrap(),
                            f.compose(&g.compose(&LinMap::from_mat(h.mat().clone())).unwrap()).unwrap());
        }
    }
}
