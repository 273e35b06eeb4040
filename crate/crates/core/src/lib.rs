//! Exact-arithmetic quaternionic linear algebra.
//!
//! Decides CR / co-CR / f-quaternionic status of subspace pairs in
//! quaternionic vector spaces, computes splitting types of the associated
//! sheaves over the twistor sphere, classifies pairs into model factors and
//! implements the conjugation / quaternionification constructions.
//!
//! All arithmetic is over ℚ (and ℚ(i) after complexification): every rank
//! and zero test is decidable, so quantified conditions over the whole
//! twistor sphere are certified rather than sampled.

pub mod conjugation;
pub mod error;
pub mod ftriple;
pub mod json;
pub mod matrix;
pub mod models;
pub mod poly;
pub mod scalar;
pub mod selftest;
pub mod smith;
pub mod pencil;
pub mod sample;
pub mod structures;
pub mod subspace;

pub use error::{Error, Result};
pub use scalar::{GaussianRational, Quaternion, Rational};

/// Matrix over the rationals.
pub type QMatrix = matrix::Matrix<Rational>;
/// Matrix over ℚ(i).
pub type CMatrix = matrix::Matrix<GaussianRational>;
/// Polynomial over ℚ(i) in the chart coordinate.
pub type CPoly = poly::Polynomial<GaussianRational>;
/// Polynomial matrix over ℚ(i)[z].
pub type PMatrix = matrix::Matrix<CPoly>;
/// Subspace of ℚ^n.
pub type QSubspace = subspace::Subspace<Rational>;
/// Subspace of ℚ(i)^n.
pub type CSubspace = subspace::Subspace<GaussianRational>;

/// Complexification of a rational matrix.
pub fn complexify(m: &QMatrix) -> CMatrix {
    m.map(|x| GaussianRational::from_re(x.clone()))
}
