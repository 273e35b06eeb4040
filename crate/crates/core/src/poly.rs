//! Univariate polynomials in the chart coordinate `z`, coefficients in an
//! exact field. Trailing zeros are always trimmed.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::scalar::{FieldScalar, RingScalar};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial<T> {
    coeffs: Vec<T>, // ascending degree, no trailing zeros
}

impl<T: RingScalar> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c·z^k`.
    pub fn monomial(c: T, k: usize) -> Self {
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn var() -> Self {
        Self::monomial(T::one(), 1)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    /// Multiplicity of the root 0, i.e. the number of leading zero
    /// coefficients; 0 for the zero polynomial.
    pub fn order_at_zero(&self) -> usize {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(0)
    }
}

impl<T: FieldScalar> Polynomial<T> {
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::new(vec![]),
            Some(l) => {
                let inv = l.inv();
                Self::new(self.coeffs.iter().map(|c| inv.clone() * c.clone()).collect())
            }
        }
    }

    /// Euclidean division, returns (quotient, remainder).
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = d.leading().unwrap().inv();
        let mut rem = self.clone();
        let mut quot = vec![T::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let factor = rem.leading().unwrap().clone() * lead_inv.clone();
            let shift = rd - dd;
            quot[shift] = factor.clone();
            let sub = Self::monomial(factor, shift) * d.clone();
            rem = rem - sub;
        }
        (Self::new(quot), rem)
    }

    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_rem(self).1.is_zero()
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }
}

impl<T: RingScalar> Add for Polynomial<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.coeffs.get(k).cloned().unwrap_or_else(T::zero);
            let b = rhs.coeffs.get(k).cloned().unwrap_or_else(T::zero);
            out.push(a + b);
        }
        Self::new(out)
    }
}

impl<T: RingScalar> Sub for Polynomial<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<T: RingScalar> Neg for Polynomial<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl<T: RingScalar> Mul for Polynomial<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::new(vec![]);
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let cur = out[i + j].clone();
                out[i + j] = cur + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }
}

impl<T: RingScalar> Zero for Polynomial<T> {
    fn zero() -> Self {
        Self::new(vec![])
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<T: RingScalar> One for Polynomial<T> {
    fn one() -> Self {
        Self::constant(T::one())
    }
    fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }
}

impl<T: RingScalar> RingScalar for Polynomial<T> {}

impl<T: RingScalar> fmt::Display for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            let cs = c.to_string();
            let wrapped = cs.contains('+') || cs.contains('-') || cs.contains('/');
            match k {
                0 => write!(f, "{cs}")?,
                _ => {
                    if c.is_one() {
                        // coefficient 1 omitted
                    } else if wrapped {
                        write!(f, "({cs})")?;
                    } else {
                        write!(f, "{cs}")?;
                    }
                    if k == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{gauss, rat_int, GaussianRational};
    use num_traits::Zero;

    type P = Polynomial<GaussianRational>;

    fn z() -> P {
        P::var()
    }

    fn c(n: i64) -> P {
        P::constant(gauss(crate::scalar::rat_int(n), rat_int(0)))
    }

    #[test]
    fn degree_of_product_adds() {
        let a = z() * z() + c(3); // z^2 + 3
        let b = z() - c(1); // z - 1
        let p = a.clone() * b.clone();
        assert_eq!(
            p.degree().unwrap(),
            a.degree().unwrap() + b.degree().unwrap()
        );
    }

    #[test]
    fn trailing_zeros_trimmed() {
        let p = z() - z();
        assert!(p.is_zero());
        assert_eq!(p.degree(), None);
    }

    #[test]
    fn div_rem_recombines() {
        let a = z() * z() * z() + c(2) * z() + c(1);
        let d = z() + c(1);
        let (q, r) = a.div_rem(&d);
        assert_eq!(q * d + r, a);
    }

    #[test]
    fn gcd_of_common_factor() {
        let f = z() - c(1);
        let a = f.clone() * (z() + c(2));
        let b = f.clone() * (z() * z() + c(5));
        assert_eq!(a.gcd(&b), f.monic());
    }

    #[test]
    fn order_at_zero() {
        let p = z() * z() * (z() + c(3));
        assert_eq!(p.order_at_zero(), 2);
        assert_eq!(c(4).order_at_zero(), 0);
    }
}
