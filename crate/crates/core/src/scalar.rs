//! Exact scalar types: rationals, Gaussian rationals and quaternions over ℚ.
//!
//! Everything downstream (matrices, subspaces, pencils) is generic over
//! [`RingScalar`] / [`FieldScalar`], so the same elimination code runs over
//! ℚ, ℚ(i) and ℚ(i)[z]. Concrete aliases live at the crate root.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Arbitrary-precision rational, always in reduced form with positive
/// denominator (guaranteed by `num-rational`).
pub type Rational = num_rational::BigRational;

/// Commutative-enough ring scalar for matrix arithmetic.
///
/// `Quaternion` also implements this; the elimination routines only ever
/// multiply scalars in a fixed left-to-right order, so a division ring is
/// acceptable wherever the code asks for [`FieldScalar`].
pub trait RingScalar:
    Clone
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + fmt::Debug
    + fmt::Display
    + 'static
{
}

/// Ring scalar with exact inverses for nonzero elements.
pub trait FieldScalar: RingScalar + Div<Output = Self> {
    /// Multiplicative inverse. Panics on zero; callers check first.
    fn inv(&self) -> Self;
}

impl RingScalar for Rational {}

impl FieldScalar for Rational {
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        self.recip()
    }
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    Rational::from_str(s.trim())
        .map_err(|e| Error::Parse(format!("bad rational {s:?}: {e}")))
}

/// Element of ℚ(i).
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn from_re(re: Rational) -> Self {
        Self { re, im: Rational::zero() }
    }

    pub fn i() -> Self {
        Self { re: Rational::zero(), im: Rational::one() }
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -self.im.clone() }
    }

    /// |z|² = z·z̄, a rational.
    pub fn norm_sq(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
}

impl From<Rational> for GaussianRational {
    fn from(re: Rational) -> Self {
        Self::from_re(re)
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self { re: self.re + rhs.re, im: self.im + rhs.im }
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self { re: self.re - rhs.re, im: self.im - rhs.im }
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        Self { re: -self.re, im: -self.im }
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Div for GaussianRational {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let n = rhs.norm_sq();
        assert!(!n.is_zero(), "division by zero in Q(i)");
        let c = rhs.conj();
        let p = self * c;
        Self { re: p.re / &n, im: p.im / &n }
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self { re: Rational::zero(), im: Rational::zero() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self { re: Rational::one(), im: Rational::zero() }
    }
    fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }
}

impl RingScalar for GaussianRational {}

impl FieldScalar for GaussianRational {
    fn inv(&self) -> Self {
        let n = self.norm_sq();
        assert!(!n.is_zero(), "inverse of zero in Q(i)");
        Self { re: &self.re / &n, im: -(&self.im / &n) }
    }
}

impl fmt::Display for GaussianRational {
    /// Canonical form `p/q` for real values, `p/q+r/si` / `p/q-r/si` otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -self.im.clone())
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl FromStr for GaussianRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if !s.ends_with('i') {
            return Ok(Self::from_re(parse_rational(s)?));
        }
        let body = &s[..s.len() - 1];
        // Split off the imaginary term at the last top-level sign.
        let bytes = body.as_bytes();
        let mut split = None;
        for idx in (1..bytes.len()).rev() {
            let c = bytes[idx] as char;
            if (c == '+' || c == '-') && bytes[idx - 1] as char != '/' {
                split = Some(idx);
                break;
            }
        }
        let (re_str, im_str) = match split {
            Some(idx) => (&body[..idx], &body[idx..]),
            None => ("0", body),
        };
        let im_str = match im_str {
            "" | "+" => "1",
            "-" => "-1",
            other => other,
        };
        Ok(Self::new(parse_rational(re_str)?, parse_rational(im_str)?))
    }
}

pub fn gauss(re: Rational, im: Rational) -> GaussianRational {
    GaussianRational::new(re, im)
}

/// Quaternion with rational coefficients of 1, i, j, k.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Quaternion {
    pub w: Rational,
    pub x: Rational,
    pub y: Rational,
    pub z: Rational,
}

impl Quaternion {
    pub fn new(w: Rational, x: Rational, y: Rational, z: Rational) -> Self {
        Self { w, x, y, z }
    }

    pub fn from_ints(w: i64, x: i64, y: i64, z: i64) -> Self {
        Self::new(rat_int(w), rat_int(x), rat_int(y), rat_int(z))
    }

    pub fn i() -> Self {
        Self::from_ints(0, 1, 0, 0)
    }

    pub fn j() -> Self {
        Self::from_ints(0, 0, 1, 0)
    }

    pub fn k() -> Self {
        Self::from_ints(0, 0, 0, 1)
    }

    pub fn conj(&self) -> Self {
        Self {
            w: self.w.clone(),
            x: -self.x.clone(),
            y: -self.y.clone(),
            z: -self.z.clone(),
        }
    }

    pub fn norm_sq(&self) -> Rational {
        &self.w * &self.w + &self.x * &self.x + &self.y * &self.y + &self.z * &self.z
    }

    pub fn is_unit(&self) -> bool {
        self.norm_sq().is_one()
    }

    pub fn is_imaginary(&self) -> bool {
        self.w.is_zero()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            w: &self.w * c,
            x: &self.x * c,
            y: &self.y * c,
            z: &self.z * c,
        }
    }

    /// The coefficient 4-vector (w, x, y, z).
    pub fn coords(&self) -> [Rational; 4] {
        [self.w.clone(), self.x.clone(), self.y.clone(), self.z.clone()]
    }

    pub fn from_coords(c: &[Rational]) -> Self {
        assert_eq!(c.len(), 4);
        Self::new(c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone())
    }
}

impl Add for Quaternion {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self {
            w: self.w + rhs.w,
            x: self.x + rhs.x,
            y: self.y + rhs.y,
            z: self.z + rhs.z,
        }
    }
}

impl Sub for Quaternion {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self {
            w: self.w - rhs.w,
            x: self.x - rhs.x,
            y: self.y - rhs.y,
            z: self.z - rhs.z,
        }
    }
}

impl Neg for Quaternion {
    type Output = Self;
    fn neg(self) -> Self {
        Self { w: -self.w, x: -self.x, y: -self.y, z: -self.z }
    }
}

impl Mul for Quaternion {
    type Output = Self;
    /// Hamilton product with i·j = k, j·k = i, k·i = j.
    fn mul(self, rhs: Self) -> Self {
        let (a, b, c, d) = (&self.w, &self.x, &self.y, &self.z);
        let (e, f, g, h) = (&rhs.w, &rhs.x, &rhs.y, &rhs.z);
        Self {
            w: a * e - b * f - c * g - d * h,
            x: a * f + b * e + c * h - d * g,
            y: a * g - b * h + c * e + d * f,
            z: a * h + b * g - c * f + d * e,
        }
    }
}

impl Div for Quaternion {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        self * rhs.inv()
    }
}

impl Zero for Quaternion {
    fn zero() -> Self {
        Self::from_ints(0, 0, 0, 0)
    }
    fn is_zero(&self) -> bool {
        self.w.is_zero() && self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }
}

impl One for Quaternion {
    fn one() -> Self {
        Self::from_ints(1, 0, 0, 0)
    }
    fn is_one(&self) -> bool {
        self.w.is_one() && self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }
}

impl RingScalar for Quaternion {}

impl FieldScalar for Quaternion {
    fn inv(&self) -> Self {
        let n = self.norm_sq();
        assert!(!n.is_zero(), "inverse of zero quaternion");
        self.conj().scale(&n.recip())
    }
}

impl fmt::Display for Quaternion {
    /// Coefficient form `w,x,y,z`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.w, self.x, self.y, self.z)
    }
}

impl FromStr for Quaternion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 4 {
            return Err(Error::Parse(format!(
                "quaternion needs 4 comma-separated rationals, got {s:?}"
            )));
        }
        Ok(Self::new(
            parse_rational(parts[0])?,
            parse_rational(parts[1])?,
            parse_rational(parts[2])?,
            parse_rational(parts[3])?,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_conjugation_involution() {
        let z = gauss(rat(1, 2), rat(-3, 4));
        assert_eq!(z.conj().conj(), z);
        assert_eq!((z.clone() * z.conj()).im, Rational::zero());
    }

    #[test]
    fn gaussian_display_parse_round_trip() {
        for s in ["1/2+3/4i", "1/2-3/4i", "-2", "0+1i", "5-1/3i"] {
            let z: GaussianRational = s.parse().unwrap();
            let back: GaussianRational = z.to_string().parse().unwrap();
            assert_eq!(z, back);
        }
        // shorthand inputs
        let z: GaussianRational = "i".parse().unwrap();
        assert_eq!(z, GaussianRational::i());
        let z: GaussianRational = "-i".parse().unwrap();
        assert_eq!(z, -GaussianRational::i());
        let z: GaussianRational = "3i".parse().unwrap();
        assert_eq!(z, gauss(rat_int(0), rat_int(3)));
    }

    #[test]
    fn quaternion_table() {
        let (i, j, k) = (Quaternion::i(), Quaternion::j(), Quaternion::k());
        assert_eq!(i.clone() * j.clone(), k);
        assert_eq!(j.clone() * k.clone(), i);
        assert_eq!(k.clone() * i.clone(), j);
        assert_eq!(i.clone() * i.clone(), -Quaternion::one());
        assert_eq!(j.clone() * i, -k);
    }

    #[test]
    fn quaternion_norm_multiplicative() {
        let p = Quaternion::new(rat(1, 2), rat(2, 3), rat_int(-1), rat_int(0));
        let q = Quaternion::new(rat_int(3), rat(1, 5), rat_int(2), rat(-1, 2));
        let pq = p.clone() * q.clone();
        assert_eq!(pq.norm_sq(), p.norm_sq() * q.norm_sq());
    }

    #[test]
    fn quaternion_inverse() {
        let q = Quaternion::new(rat_int(1), rat_int(2), rat_int(-3), rat(1, 2));
        let prod = q.clone() * q.inv();
        assert!(prod.is_one());
    }
}
