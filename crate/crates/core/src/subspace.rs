//! Linear subspaces with a canonical reduced row-echelon basis.
//!
//! Two subspaces are equal iff their canonical bases are identical, so all
//! the set-level identities (sum, intersection, annihilator, preimage)
//! reduce to syntactic equality of matrices.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::FieldScalar;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace<T> {
    ambient: usize,
    basis: Matrix<T>, // RREF, rows independent
}

impl<T: FieldScalar> Subspace<T> {
    /// Span of the rows of `gens` inside the ambient space.
    pub fn span(ambient: usize, gens: &Matrix<T>) -> Self {
        assert_eq!(gens.cols(), ambient, "generator length mismatch");
        Self {
            ambient,
            basis: gens.rref().basis,
        }
    }

    pub fn zero(ambient: usize) -> Self {
        Self {
            ambient,
            basis: Matrix::zero(0, ambient),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self {
            ambient,
            basis: Matrix::identity(ambient),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// Canonical basis, one vector per row.
    pub fn basis(&self) -> &Matrix<T> {
        &self.basis
    }

    /// Injection matrix whose columns are the basis vectors.
    pub fn inclusion(&self) -> Matrix<T> {
        self.basis.transpose()
    }

    pub fn contains(&self, v: &[T]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let stacked = self
            .basis
            .vstack(&Matrix::from_rows(vec![v.to_vec()]));
        stacked.rank() == self.dim()
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.ambient == other.ambient
            && other.basis.vstack(&self.basis).rank() == other.dim()
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch {
                left: self.ambient,
                right: other.ambient,
            });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        Ok(Self::span(self.ambient, &self.basis.vstack(&other.basis)))
    }

    /// Annihilator in the dual space: functionals vanishing on `self`,
    /// written in the dual basis. Also serves as the intersection engine.
    pub fn annihilator(&self) -> Self {
        let ker = self.basis.kernel();
        Self::span(self.ambient, &ker)
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        // Ann(a ∩ b) = Ann a + Ann b, and Ann∘Ann = id in finite dimension.
        let a = self.annihilator();
        let b = other.annihilator();
        Ok(a.sum(&b)?.annihilator())
    }

    /// Surjection onto a complement of `self`, with kernel exactly `self`:
    /// the rows are a basis of the annihilator.
    pub fn quotient_map(&self) -> Matrix<T> {
        self.annihilator().basis.clone()
    }

    /// Image under a linear map given by its matrix (columns act on
    /// ambient coordinates).
    pub fn image(&self, map: &Matrix<T>) -> Self {
        assert_eq!(map.cols(), self.ambient, "image shape mismatch");
        let rows: Vec<Vec<T>> = (0..self.dim())
            .map(|r| map.apply(&self.basis.row_vec(r)))
            .collect();
        if rows.is_empty() {
            Subspace::zero(map.rows())
        } else {
            Self::span(map.rows(), &Matrix::from_rows(rows))
        }
    }

    /// Preimage `{x : map·x ∈ self}`.
    pub fn preimage(&self, map: &Matrix<T>) -> Self {
        assert_eq!(map.rows(), self.ambient, "preimage shape mismatch");
        // x is in the preimage iff Q·map·x = 0 for Q the quotient map.
        let q = self.quotient_map();
        let comp = &q * map;
        Self::span(map.cols(), &comp.kernel())
    }

    /// Invariance under an ambient endomorphism.
    pub fn is_invariant_under(&self, map: &Matrix<T>) -> bool {
        self.image(map).is_subspace_of(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat_int, Rational};
    use num_traits::Zero;

    fn sp(ambient: usize, rows: &[&[i64]]) -> Subspace<Rational> {
        let m = Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| rat_int(v)).collect())
                .collect(),
        );
        Subspace::span(ambient, &m)
    }

    #[test]
    fn axes_intersect_trivially() {
        let x = sp(2, &[&[1, 0]]);
        let y = sp(2, &[&[0, 1]]);
        assert_eq!(x.intersect(&y).unwrap(), Subspace::zero(2));
        assert_eq!(x.sum(&y).unwrap(), Subspace::full(2));
    }

    #[test]
    fn annihilator_of_first_axis() {
        let e1 = sp(3, &[&[1, 0, 0]]);
        let ann = e1.annihilator();
        assert_eq!(ann.dim(), 2);
        // every annihilator row kills e1
        for r in 0..ann.dim() {
            assert!(ann.basis().row(r)[0].is_zero());
        }
    }

    #[test]
    fn quotient_map_kernel_is_subspace() {
        let u = sp(4, &[&[1, 2, 0, 0], &[0, 0, 1, 1]]);
        let q = u.quotient_map();
        assert_eq!(q.rows(), 2);
        let ker = Subspace::span(4, &q.kernel());
        assert_eq!(ker, u);
        assert_eq!(q.rank(), 2); // surjective
    }

    #[test]
    fn modular_dimension_identity() {
        let a = sp(4, &[&[1, 0, 1, 0], &[0, 1, 0, 0]]);
        let b = sp(4, &[&[1, 0, 0, 0], &[0, 0, 0, 1]]);
        let s = a.sum(&b).unwrap();
        let i = a.intersect(&b).unwrap();
        assert_eq!(a.dim() + b.dim(), s.dim() + i.dim());
    }

    #[test]
    fn ambient_mismatch_rejected() {
        let a = sp(2, &[&[1, 0]]);
        let b = sp(3, &[&[1, 0, 0]]);
        assert!(a.sum(&b).is_err());
        assert!(a.intersect(&b).is_err());
    }

    #[test]
    fn preimage_of_zero_is_kernel() {
        let map = Matrix::from_rows(vec![
            vec![rat_int(1), rat_int(0), rat_int(2)],
            vec![rat_int(0), rat_int(1), rat_int(3)],
        ]);
        let z = Subspace::zero(2);
        let pre = z.preimage(&map);
        assert_eq!(pre.dim(), 1);
        assert!(map.apply(&pre.basis().row_vec(0)).iter().all(|v| v.is_zero()));
    }
}
