//! Dense matrices over an exact scalar ring.
//!
//! Deliberately naive: desk-scale dimensions, no sparsity, no pivot
//! strategies beyond "first nonzero". Elimination multiplies scalars in a
//! fixed left-to-right order so the same code serves the quaternions.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{FieldScalar, RingScalar};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: RingScalar> Matrix<T> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        Self {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vec(&self, r: usize) -> Vec<T> {
        self.row(r).to_vec()
    }

    pub fn col_vec(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn map<U: RingScalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|x| c.clone() * x.clone())
    }

    /// Stack `self` on top of `other`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Self {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Place `other` to the right of `self`.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        Self::from_fn(self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self[(r, c)].clone()
            } else {
                other[(r, c - self.cols)].clone()
            }
        })
    }

    pub fn block_diag(&self, other: &Self) -> Self {
        Self::from_fn(
            self.rows + other.rows,
            self.cols + other.cols,
            |r, c| {
                if r < self.rows && c < self.cols {
                    self[(r, c)].clone()
                } else if r >= self.rows && c >= self.cols {
                    other[(r - self.rows, c - self.cols)].clone()
                } else {
                    T::zero()
                }
            },
        )
    }

    /// Kronecker product, row-major block layout.
    pub fn kronecker(&self, other: &Self) -> Self {
        Self::from_fn(
            self.rows * other.rows,
            self.cols * other.cols,
            |r, c| {
                let (rb, ri) = (r / other.rows, r % other.rows);
                let (cb, ci) = (c / other.cols, c % other.cols);
                self[(rb, cb)].clone() * other[(ri, ci)].clone()
            },
        )
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols);
        Self::from_fn(rows, cols, |r, c| self[(r0 + r, c0 + c)].clone())
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols, "apply length mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = T::zero();
                for c in 0..self.cols {
                    if !self[(r, c)].is_zero() && !v[c].is_zero() {
                        acc = acc + self[(r, c)].clone() * v[c].clone();
                    }
                }
                acc
            })
            .collect()
    }
}

impl<T: RingScalar> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (r, c): (usize, usize)) -> &T {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl<T: RingScalar> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl<T: RingScalar> Add for &Matrix<T> {
    type Output = Matrix<T>;
    fn add(self, rhs: Self) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix::from_fn(self.rows, self.cols, |r, c| {
            self[(r, c)].clone() + rhs[(r, c)].clone()
        })
    }
}

impl<T: RingScalar> Sub for &Matrix<T> {
    type Output = Matrix<T>;
    fn sub(self, rhs: Self) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix::from_fn(self.rows, self.cols, |r, c| {
            self[(r, c)].clone() - rhs[(r, c)].clone()
        })
    }
}

impl<T: RingScalar> Neg for &Matrix<T> {
    type Output = Matrix<T>;
    fn neg(self) -> Matrix<T> {
        self.map(|x| -x.clone())
    }
}

impl<T: RingScalar> Mul for &Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: Self) -> Matrix<T> {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out: Matrix<T> = Matrix::zero(self.rows, rhs.cols);
        for r in 0..self.rows {
            for l in 0..self.cols {
                let a = &self[(r, l)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = &rhs[(l, c)];
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out[(r, c)].clone();
                    out[(r, c)] = cur + a.clone() * b.clone();
                }
            }
        }
        out
    }
}

impl<T: RingScalar> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(r, c)])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Outcome of row reduction: the canonical reduced row-echelon form with
/// zero rows dropped, the rank, and the pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon<T> {
    pub basis: Matrix<T>,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl<T: FieldScalar> Matrix<T> {
    /// Reduced row-echelon form. Returns the canonical basis of the row
    /// space (zero rows removed, pivots normalized to 1, pivot columns
    /// cleared above and below).
    pub fn rref(&self) -> Echelon<T> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pr = 0usize;
        for pc in 0..m.cols {
            if pr == m.rows {
                break;
            }
            // first nonzero entry at or below pr
            let Some(sel) = (pr..m.rows).find(|&r| !m[(r, pc)].is_zero()) else {
                continue;
            };
            if sel != pr {
                for c in 0..m.cols {
                    m.data.swap(sel * m.cols + c, pr * m.cols + c);
                }
            }
            let inv = m[(pr, pc)].inv();
            for c in pc..m.cols {
                let v = m[(pr, c)].clone();
                if !v.is_zero() {
                    m[(pr, c)] = inv.clone() * v;
                }
            }
            for r in 0..m.rows {
                if r == pr || m[(r, pc)].is_zero() {
                    continue;
                }
                let factor = m[(r, pc)].clone();
                for c in pc..m.cols {
                    let sub = factor.clone() * m[(pr, c)].clone();
                    if !sub.is_zero() {
                        let cur = m[(r, c)].clone();
                        m[(r, c)] = cur - sub;
                    }
                }
                m[(r, pc)] = T::zero();
            }
            pivots.push(pc);
            pr += 1;
        }
        let rank = pr;
        let basis = m.submatrix(0, 0, rank, m.cols);
        Echelon { basis, rank, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the right null space `{x : self·x = 0}`, one solution per
    /// row of the returned matrix.
    pub fn kernel(&self) -> Matrix<T> {
        let ech = self.rref();
        let free: Vec<usize> = (0..self.cols)
            .filter(|c| !ech.pivots.contains(c))
            .collect();
        let mut rows = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![T::zero(); self.cols];
            v[fc] = T::one();
            for (pi, &pc) in ech.pivots.iter().enumerate() {
                v[pc] = -ech.basis[(pi, fc)].clone();
            }
            rows.push(v);
        }
        if rows.is_empty() {
            Matrix::zero(0, self.cols)
        } else {
            Matrix::from_rows(rows)
        }
    }

    /// Unique solution check: solve `self · x = b` treating the system as
    /// potentially over- or under-determined. `None` when inconsistent or
    /// when the solution is not unique.
    pub fn solve_unique(&self, b: &[T]) -> Option<Vec<T>> {
        assert_eq!(b.len(), self.rows);
        let rhs = Matrix::from_fn(self.rows, 1, |r, _| b[r].clone());
        let aug = self.hstack(&rhs);
        let ech = aug.rref();
        if ech.pivots.contains(&self.cols) {
            return None; // inconsistent
        }
        if ech.rank != self.cols {
            return None; // underdetermined
        }
        let mut x = vec![T::zero(); self.cols];
        for (pi, &pc) in ech.pivots.iter().enumerate() {
            x[pc] = ech.basis[(pi, self.cols)].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Self::identity(n));
        let ech = aug.rref();
        if ech.rank != n || ech.pivots != (0..n).collect::<Vec<_>>() {
            return None;
        }
        Some(ech.basis.submatrix(0, n, n, n))
    }

    /// Determinant by elimination; only used at desk scale.
    pub fn det(&self) -> Result<T> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                what: "determinant",
                expected: self.rows,
                found: self.cols,
            });
        }
        let mut m = self.clone();
        let n = m.rows;
        let mut det = T::one();
        for p in 0..n {
            let Some(sel) = (p..n).find(|&r| !m[(r, p)].is_zero()) else {
                return Ok(T::zero());
            };
            if sel != p {
                for c in 0..n {
                    m.data.swap(sel * n + c, p * n + c);
                }
                det = -det;
            }
            det = det * m[(p, p)].clone();
            let inv = m[(p, p)].inv();
            for r in p + 1..n {
                if m[(r, p)].is_zero() {
                    continue;
                }
                let factor = m[(r, p)].clone() * inv.clone();
                for c in p..n {
                    let sub = factor.clone() * m[(p, c)].clone();
                    let cur = m[(r, c)].clone();
                    m[(r, c)] = cur - sub;
                }
            }
        }
        Ok(det)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat_int, Rational};

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| rat_int(v)).collect())
                .collect(),
        )
    }

    #[test]
    fn rref_identity() {
        let id: Matrix<Rational> = Matrix::identity(3);
        let ech = id.rref();
        assert_eq!(ech.rank, 3);
        assert_eq!(ech.basis, id);
    }

    #[test]
    fn rref_zero() {
        let z: Matrix<Rational> = Matrix::zero(2, 4);
        let ech = z.rref();
        assert_eq!(ech.rank, 0);
        assert_eq!(ech.basis.rows(), 0);
    }

    #[test]
    fn rref_rank_one() {
        // hand elimination: r2 := r2 - 2 r1 leaves a single row [1, 2]
        let a = m(&[&[1, 2], &[2, 4]]);
        let ech = a.rref();
        assert_eq!(ech.rank, 1);
        assert_eq!(ech.basis, m(&[&[1, 2]]));
    }

    #[test]
    fn kernel_and_solve() {
        let a = m(&[&[1, 0, 2], &[0, 1, 3]]);
        let k = a.kernel();
        assert_eq!(k.rows(), 1);
        for r in 0..a.rows() {
            let prod = a.apply(&k.row_vec(0));
            assert!(prod[r].is_zero());
        }
        let x = a.solve_unique(&[rat_int(5), rat_int(7)]);
        assert!(x.is_none()); // kernel nontrivial => not unique

        let b = m(&[&[2, 1], &[1, 1]]);
        let x = b.solve_unique(&[rat_int(3), rat_int(2)]).unwrap();
        assert_eq!(x, vec![rat_int(1), rat_int(1)]);
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, Matrix::identity(2));
        let s = m(&[&[1, 2], &[2, 4]]);
        assert!(s.inverse().is_none());
    }

    #[test]
    fn det_small() {
        let a = m(&[&[2, 1], &[1, 1]]);
        assert_eq!(a.det().unwrap(), rat_int(1));
        let b = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(b.det().unwrap(), rat_int(-1));
    }

    #[test]
    fn kronecker_blocks() {
        let a = m(&[&[0, 1], &[1, 0]]);
        let id = Matrix::<Rational>::identity(2);
        let k = a.kronecker(&id);
        assert_eq!(k.rows(), 4);
        assert_eq!(k[(0, 2)], rat_int(1));
        assert_eq!(k[(1, 3)], rat_int(1));
        assert_eq!(k[(2, 0)], rat_int(1));
        assert_eq!(k[(0, 0)], rat_int(0));
    }
}
