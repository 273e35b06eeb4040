//! Deterministic rational sampling: sphere points, chart values and unit
//! quaternions. Everything is seeded, so suites are reproducible and exact.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use num_traits::Zero;

use crate::matrix::Matrix;
use crate::scalar::{gauss, rat, GaussianRational, Quaternion, Rational};
use crate::structures::{chart_to_sphere, AdmissiblePoint, SphereChart};
use crate::subspace::Subspace;

/// Sphere-sampling count used by the built-in cross-oracles.
pub const DEFAULT_SAMPLES: usize = 25;

/// Seed for the fixed internal oracle samples.
pub const ORACLE_SEED: u64 = 0x51_0e_ac_1e;

pub fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.random_range(-3..=3), rng.random_range(1..=3))
}

fn small_gaussian(rng: &mut ChaCha8Rng) -> GaussianRational {
    gauss(small_rational(rng), small_rational(rng))
}

/// Affine chart values: 0, 1, i first (the I, J, K axes), then seeded
/// rationals; `Infinity` is appended last.
pub fn sample_charts(count: usize, seed: u64) -> Vec<SphereChart> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![
        SphereChart::zero(),
        SphereChart::Finite(gauss(rat(1, 1), rat(0, 1))),
        SphereChart::Finite(GaussianRational::i()),
    ];
    while out.len() + 1 < count {
        let z = SphereChart::Finite(small_gaussian(&mut rng));
        if !out.contains(&z) {
            out.push(z);
        }
    }
    out.push(SphereChart::Infinity);
    out.truncate(count.max(1));
    out
}

/// Exact rational points of the twistor sphere, via the chart convention.
pub fn sample_sphere_points(count: usize, seed: u64) -> Vec<AdmissiblePoint> {
    sample_charts(count, seed)
        .iter()
        .map(chart_to_sphere)
        .collect()
}

/// Rational imaginary unit quaternions (points of the unit 2-sphere).
pub fn sample_imaginary_units(count: usize, seed: u64) -> Vec<Quaternion> {
    sample_sphere_points(count, seed)
        .iter()
        .map(AdmissiblePoint::quaternion)
        .collect()
}

/// Random subspace of the given dimension, seeded; basis entries stay small.
pub fn random_subspace(ambient: usize, dim: usize, rng: &mut ChaCha8Rng) -> Subspace<Rational> {
    assert!(dim <= ambient);
    loop {
        let gens = Matrix::from_fn(dim, ambient, |_, _| small_rational(rng));
        let s = Subspace::span(ambient, &gens);
        if s.dim() == dim {
            return s;
        }
    }
}

/// Random invertible rational matrix with small entries.
pub fn random_invertible(n: usize, rng: &mut ChaCha8Rng) -> Matrix<Rational> {
    loop {
        let m = Matrix::from_fn(n, n, |_, _| small_rational(rng));
        if n == 0 || !m.det().map(|d| d.is_zero()).unwrap_or(true) {
            return m;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn charts_are_deterministic_and_end_at_infinity() {
        let a = sample_charts(25, 7);
        let b = sample_charts(25, 7);
        assert_eq!(a, b);
        assert_eq!(a.len(), 25);
        assert_eq!(a.last(), Some(&SphereChart::Infinity));
    }

    #[test]
    fn sphere_points_are_unit() {
        for p in sample_sphere_points(25, ORACLE_SEED) {
            let n = &p.a * &p.a + &p.b * &p.b + &p.c * &p.c;
            assert!(n.is_one());
        }
    }

    #[test]
    fn imaginary_units_are_unit_imaginary() {
        for q in sample_imaginary_units(20, 3) {
            assert!(q.is_unit());
            assert!(q.is_imaginary());
        }
    }
}
