//! Smith normal form over a univariate polynomial ring (field coefficients)
//! by the classical elementary-operations algorithm. Coefficient growth is
//! accepted; inputs stay at desk scale.

use num_traits::Zero;

use crate::matrix::Matrix;
use crate::poly::Polynomial;
use crate::scalar::FieldScalar;

/// Monic invariant factors d₁ | d₂ | … | d_r of a polynomial matrix.
/// Only the nonzero factors are returned, so the length is the rank.
pub fn smith_normal_form<T: FieldScalar>(m: &Matrix<Polynomial<T>>) -> Vec<Polynomial<T>> {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let n = rows.min(cols);
    let mut factors = Vec::new();

    for t in 0..n {
        loop {
            // pick the entry of minimal degree in the working submatrix
            let mut best: Option<(usize, usize, usize)> = None;
            for r in t..rows {
                for c in t..cols {
                    if let Some(d) = a[(r, c)].degree() {
                        if best.is_none_or(|(_, _, bd)| d < bd) {
                            best = Some((r, c, d));
                        }
                    }
                }
            }
            let Some((pr, pc, _)) = best else {
                // submatrix is zero; done
                return factors;
            };
            swap_rows(&mut a, t, pr);
            swap_cols(&mut a, t, pc);

            // clear the pivot column
            let mut dirty = false;
            for r in t + 1..rows {
                if a[(r, t)].is_zero() {
                    continue;
                }
                let (q, rem) = a[(r, t)].div_rem(&a[(t, t)]);
                row_sub_mul(&mut a, r, t, &q);
                if !rem.is_zero() {
                    dirty = true;
                }
            }
            // clear the pivot row
            for c in t + 1..cols {
                if a[(t, c)].is_zero() {
                    continue;
                }
                let (q, rem) = a[(t, c)].div_rem(&a[(t, t)]);
                col_sub_mul(&mut a, c, t, &q);
                if !rem.is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue; // remainders became new smaller-degree entries
            }
            if (t + 1..rows).any(|r| !a[(r, t)].is_zero())
                || (t + 1..cols).any(|c| !a[(t, c)].is_zero())
            {
                continue;
            }

            // enforce divisibility: pivot must divide the whole submatrix
            let mut fixed = true;
            'search: for r in t + 1..rows {
                for c in t + 1..cols {
                    if !a[(r, c)].is_zero() && !a[(t, t)].divides(&a[(r, c)]) {
                        row_add(&mut a, t, r);
                        fixed = false;
                        break 'search;
                    }
                }
            }
            if fixed {
                break;
            }
        }
        factors.push(a[(t, t)].monic());
    }
    factors
}

fn swap_rows<T: FieldScalar>(a: &mut Matrix<Polynomial<T>>, r1: usize, r2: usize) {
    if r1 == r2 {
        return;
    }
    for c in 0..a.cols() {
        let tmp = a[(r1, c)].clone();
        a[(r1, c)] = a[(r2, c)].clone();
        a[(r2, c)] = tmp;
    }
}

fn swap_cols<T: FieldScalar>(a: &mut Matrix<Polynomial<T>>, c1: usize, c2: usize) {
    if c1 == c2 {
        return;
    }
    for r in 0..a.rows() {
        let tmp = a[(r, c1)].clone();
        a[(r, c1)] = a[(r, c2)].clone();
        a[(r, c2)] = tmp;
    }
}

/// row r -= q * row s
fn row_sub_mul<T: FieldScalar>(
    a: &mut Matrix<Polynomial<T>>,
    r: usize,
    s: usize,
    q: &Polynomial<T>,
) {
    for c in 0..a.cols() {
        let sub = q.clone() * a[(s, c)].clone();
        let cur = a[(r, c)].clone();
        a[(r, c)] = cur - sub;
    }
}

/// col c -= q * col s
fn col_sub_mul<T: FieldScalar>(
    a: &mut Matrix<Polynomial<T>>,
    c: usize,
    s: usize,
    q: &Polynomial<T>,
) {
    for r in 0..a.rows() {
        let sub = q.clone() * a[(r, s)].clone();
        let cur = a[(r, c)].clone();
        a[(r, c)] = cur - sub;
    }
}

/// row r += row s
fn row_add<T: FieldScalar>(a: &mut Matrix<Polynomial<T>>, r: usize, s: usize) {
    for c in 0..a.cols() {
        let cur = a[(r, c)].clone();
        a[(r, c)] = cur + a[(s, c)].clone();
    }
}
