//! Linear hypercomplex / quaternionic structures on ℝ^{4k}: admissible
//! complex structures, the twistor-sphere chart, duals, quaternionic linear
//! maps and standardization onto the left-multiplication model.

use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{gauss, rat, rat_int, FieldScalar, GaussianRational, Quaternion, Rational};

/// 4×4 matrix of x ↦ q·x on the basis (1, i, j, k).
pub fn left_mult_matrix(q: &Quaternion) -> Matrix<Rational> {
    let basis = [
        Quaternion::one(),
        Quaternion::i(),
        Quaternion::j(),
        Quaternion::k(),
    ];
    Matrix::from_fn(4, 4, |r, c| (q.clone() * basis[c].clone()).coords()[r].clone())
}

/// 4×4 matrix of x ↦ x·q on the basis (1, i, j, k).
pub fn right_mult_matrix(q: &Quaternion) -> Matrix<Rational> {
    let basis = [
        Quaternion::one(),
        Quaternion::i(),
        Quaternion::j(),
        Quaternion::k(),
    ];
    Matrix::from_fn(4, 4, |r, c| (basis[c].clone() * q.clone()).coords()[r].clone())
}

/// 3×3 matrix of v ↦ q·v·q⁻¹ on the imaginary basis (i, j, k).
/// Rational for any nonzero rational q; a rotation when q ≠ 0.
pub fn rotation_matrix(q: &Quaternion) -> Matrix<Rational> {
    let qinv = q.inv();
    let basis = [Quaternion::i(), Quaternion::j(), Quaternion::k()];
    Matrix::from_fn(3, 3, |r, c| {
        (q.clone() * basis[c].clone() * qinv.clone()).coords()[r + 1].clone()
    })
}

pub fn is_special_orthogonal(r: &Matrix<Rational>) -> bool {
    r.rows() == 3
        && r.cols() == 3
        && &r.transpose() * r == Matrix::identity(3)
        && r.det().map(|d| d.is_one()).unwrap_or(false)
}

/// A chosen hypercomplex representative (I, J, K) of a linear quaternionic
/// structure on ℝ^{4k}.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HypercomplexStructure {
    dim: usize,
    i_op: Matrix<Rational>,
    j_op: Matrix<Rational>,
    k_op: Matrix<Rational>,
}

impl HypercomplexStructure {
    /// Validates the full set of structure identities:
    /// I² = J² = K² = −Id, IJ = K, JK = I, KI = J, IJ = −JI.
    pub fn new(
        i_op: Matrix<Rational>,
        j_op: Matrix<Rational>,
        k_op: Matrix<Rational>,
    ) -> Result<Self> {
        let dim = i_op.rows();
        for (name, m) in [("I", &i_op), ("J", &j_op), ("K", &k_op)] {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::InvalidStructure(format!(
                    "{name} is not {dim}x{dim}"
                )));
            }
        }
        if dim % 4 != 0 {
            return Err(Error::InvalidStructure(format!(
                "dimension {dim} is not a multiple of 4"
            )));
        }
        let neg_id = -&Matrix::<Rational>::identity(dim);
        let checks: [(&str, Matrix<Rational>, &Matrix<Rational>); 7] = [
            ("I^2 = -Id", &i_op * &i_op, &neg_id),
            ("J^2 = -Id", &j_op * &j_op, &neg_id),
            ("K^2 = -Id", &k_op * &k_op, &neg_id),
            ("IJ = K", &i_op * &j_op, &k_op),
            ("JK = I", &j_op * &k_op, &i_op),
            ("KI = J", &k_op * &i_op, &j_op),
            ("IJ = -JI", &i_op * &j_op, &(-&(&j_op * &i_op))),
        ];
        for (name, got, want) in &checks {
            if got != *want {
                return Err(Error::InvalidStructure(format!("{name} fails")));
            }
        }
        Ok(Self { dim, i_op, j_op, k_op })
    }

    /// Left-multiplication model on ℍ^k, basis (1, i, j, k) per coordinate.
    pub fn standard(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument(
                "standard structure needs k >= 1".into(),
            ));
        }
        Ok(Self::standard_unchecked(k))
    }

    pub(crate) fn standard_unchecked(k: usize) -> Self {
        let idk = Matrix::identity(k);
        Self {
            dim: 4 * k,
            i_op: idk.kronecker(&left_mult_matrix(&Quaternion::i())),
            j_op: idk.kronecker(&left_mult_matrix(&Quaternion::j())),
            k_op: idk.kronecker(&left_mult_matrix(&Quaternion::k())),
        }
    }

    pub fn trivial() -> Self {
        Self {
            dim: 0,
            i_op: Matrix::zero(0, 0),
            j_op: Matrix::zero(0, 0),
            k_op: Matrix::zero(0, 0),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Quaternionic dimension k = dim/4.
    pub fn quat_dim(&self) -> usize {
        self.dim / 4
    }

    pub fn i_op(&self) -> &Matrix<Rational> {
        &self.i_op
    }

    pub fn j_op(&self) -> &Matrix<Rational> {
        &self.j_op
    }

    pub fn k_op(&self) -> &Matrix<Rational> {
        &self.k_op
    }

    /// aI + bJ + cK for a unit point (a, b, c) of the twistor sphere.
    pub fn admissible(&self, p: &AdmissiblePoint) -> Matrix<Rational> {
        &(&self.i_op.scale(&p.a) + &self.j_op.scale(&p.b)) + &self.k_op.scale(&p.c)
    }

    /// σ*(q) = σ(q̄)ᵀ: the dual structure on E*.
    pub fn dual(&self) -> Self {
        Self {
            dim: self.dim,
            i_op: -&self.i_op.transpose(),
            j_op: -&self.j_op.transpose(),
            k_op: -&self.k_op.transpose(),
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        Self {
            dim: self.dim + other.dim,
            i_op: self.i_op.block_diag(&other.i_op),
            j_op: self.j_op.block_diag(&other.j_op),
            k_op: self.k_op.block_diag(&other.k_op),
        }
    }

    /// Rotate the representative by r ∈ SO(3): the new (I, J, K) are the
    /// admissible operators at the columns of r. Same quaternionic
    /// structure, different hypercomplex representative.
    pub fn rotate_representative(&self, r: &Matrix<Rational>) -> Result<Self> {
        if !is_special_orthogonal(r) {
            return Err(Error::InvalidArgument(
                "representative rotation must be in SO(3)".into(),
            ));
        }
        let col = |c: usize| {
            AdmissiblePoint::new_unchecked(r[(0, c)].clone(), r[(1, c)].clone(), r[(2, c)].clone())
        };
        Self::new(
            self.admissible(&col(0)),
            self.admissible(&col(1)),
            self.admissible(&col(2)),
        )
    }

    /// Conjugate the structure by an invertible map: ops ↦ t·op·t⁻¹.
    pub fn conjugate(&self, t: &Matrix<Rational>) -> Result<Self> {
        let tinv = t
            .inverse()
            .ok_or_else(|| Error::InvalidArgument("conjugating map is singular".into()))?;
        Self::new(
            &(t * &self.i_op) * &tinv,
            &(t * &self.j_op) * &tinv,
            &(t * &self.k_op) * &tinv,
        )
    }
}

/// Unit point (a, b, c) of the twistor sphere; the admissible operator
/// there is aI + bJ + cK.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AdmissiblePoint {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

impl AdmissiblePoint {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Result<Self> {
        let n = &a * &a + &b * &b + &c * &c;
        if !n.is_one() {
            return Err(Error::NotUnit(format!("({a}, {b}, {c})")));
        }
        Ok(Self { a, b, c })
    }

    pub(crate) fn new_unchecked(a: Rational, b: Rational, c: Rational) -> Self {
        Self { a, b, c }
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Result<Self> {
        Self::new(rat_int(a), rat_int(b), rat_int(c))
    }

    /// The imaginary unit quaternion ai + bj + ck.
    pub fn quaternion(&self) -> Quaternion {
        Quaternion::new(Rational::zero(), self.a.clone(), self.b.clone(), self.c.clone())
    }
}

/// Affine chart coordinate on the twistor sphere, plus the point at
/// infinity. The fixed convention is
/// (a, b, c) = ((1−|ζ|²)/(1+|ζ|²), (ζ+ζ̄)/(1+|ζ|²), i(ζ̄−ζ)/(1+|ζ|²)),
/// so ζ = 0 ↦ I, ζ = 1 ↦ J, ζ = i ↦ K and ∞ ↦ −I.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SphereChart {
    Finite(GaussianRational),
    Infinity,
}

impl SphereChart {
    pub fn zero() -> Self {
        SphereChart::Finite(GaussianRational::zero())
    }
}

pub fn chart_to_sphere(chart: &SphereChart) -> AdmissiblePoint {
    match chart {
        SphereChart::Infinity => {
            AdmissiblePoint::new_unchecked(rat_int(-1), Rational::zero(), Rational::zero())
        }
        SphereChart::Finite(z) => {
            let (x, y) = (&z.re, &z.im);
            let nsq = z.norm_sq();
            let d = Rational::one() + &nsq;
            AdmissiblePoint::new_unchecked(
                (Rational::one() - nsq) / d.clone(),
                rat(2, 1) * x / d.clone(),
                rat(2, 1) * y / d,
            )
        }
    }
}

pub fn sphere_to_chart(p: &AdmissiblePoint) -> SphereChart {
    if p.a == rat_int(-1) {
        return SphereChart::Infinity;
    }
    let d = Rational::one() + &p.a;
    SphereChart::Finite(gauss(&p.b / &d, &p.c / &d))
}

/// A quaternionic linear map together with the rotation it induces on the
/// twistor sphere.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuaternionicMap {
    pub matrix: Matrix<Rational>,
    pub rotation: Matrix<Rational>,
}

impl QuaternionicMap {
    pub fn compose(&self, inner: &Self) -> Self {
        Self {
            matrix: &self.matrix * &inner.matrix,
            rotation: &self.rotation * &inner.rotation,
        }
    }
}

/// Decide whether t intertwines the two structures up to a sphere rotation:
/// t ∘ (aI + bJ + cK) = (admissible operator of s′ at R(a,b,c)) ∘ t for all
/// unit (a, b, c). Returns the rotation when it exists; for t ≠ 0 it is
/// unique. The zero map is quaternionic for every rotation; we return Id.
pub fn is_quaternionic_map(
    t: &Matrix<Rational>,
    s: &HypercomplexStructure,
    s_prime: &HypercomplexStructure,
) -> Option<Matrix<Rational>> {
    if t.cols() != s.dim() || t.rows() != s_prime.dim() {
        return None;
    }
    if t.is_zero_matrix() || s.dim() == 0 {
        return Some(Matrix::identity(3));
    }

    // Columns of the unknown rotation solve t·g = (α I' + β J' + γ K')·t
    // per generator g; vectorize and solve the 3-unknown linear system.
    let candidates = [
        s_prime.i_op() * t,
        s_prime.j_op() * t,
        s_prime.k_op() * t,
    ];
    let n = t.rows() * t.cols();
    let coeff = Matrix::from_fn(n, 3, |row, col| {
        candidates[col][(row / t.cols(), row % t.cols())].clone()
    });

    let mut rotation = Matrix::zero(3, 3);
    for (gi, g) in [s.i_op(), s.j_op(), s.k_op()].iter().enumerate() {
        let rhs_mat = t * *g;
        let rhs: Vec<Rational> = (0..n)
            .map(|row| rhs_mat[(row / t.cols(), row % t.cols())].clone())
            .collect();
        let sol = coeff.solve_unique(&rhs)?;
        for r in 0..3 {
            rotation[(r, gi)] = sol[r].clone();
        }
    }
    if !is_special_orthogonal(&rotation) {
        return None;
    }
    Some(rotation)
}

/// Hypercomplex isomorphism onto the standard structure: picks a vector
/// outside the running span, adjoins its I, J, K images, repeats. The
/// returned map has rotation Id and conjugating (I, J, K) through it gives
/// the standard blocks.
pub fn standardize(s: &HypercomplexStructure) -> Result<QuaternionicMap> {
    let dim = s.dim();
    let mut columns: Vec<Vec<Rational>> = Vec::with_capacity(dim);
    let mut span = crate::subspace::Subspace::<Rational>::zero(dim);
    while columns.len() < dim {
        let seed = (0..dim)
            .map(|idx| {
                let mut v = vec![Rational::zero(); dim];
                v[idx] = Rational::one();
                v
            })
            .find(|v| !span.contains(v))
            .ok_or_else(|| Error::Internal("quaternionic span exhausted early".into()))?;
        for op in [None, Some(s.i_op()), Some(s.j_op()), Some(s.k_op())] {
            columns.push(match op {
                None => seed.clone(),
                Some(m) => m.apply(&seed),
            });
        }
        let gens = Matrix::from_rows(columns.clone());
        span = crate::subspace::Subspace::span(dim, &gens);
    }
    let p = Matrix::from_fn(dim, dim, |r, c| columns[c][r].clone());
    let matrix = p
        .inverse()
        .ok_or_else(|| Error::Internal("standardizing basis is singular".into()))?;
    Ok(QuaternionicMap {
        matrix,
        rotation: Matrix::identity(3),
    })
}

fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.random_range(-3..=3), rng.random_range(1..=2))
}

fn random_quaternion(rng: &mut ChaCha8Rng) -> Quaternion {
    Quaternion::new(
        small_rational(rng),
        small_rational(rng),
        small_rational(rng),
        small_rational(rng),
    )
}

/// Deterministic rational point on the unit 3-sphere: q²/|q|² for a random
/// nonzero quaternion q.
pub fn random_unit_quaternion(rng: &mut ChaCha8Rng) -> Quaternion {
    loop {
        let q = random_quaternion(rng);
        if q.is_zero() {
            continue;
        }
        let n = q.norm_sq();
        let u = (q.clone() * q).scale(&n.recip());
        debug_assert!(u.is_unit());
        return u;
    }
}

/// Random automorphism of the quaternionic structure: on the standard model
/// x ↦ a·x·A⁻¹ with a a rational unit quaternion and A ∈ GL(k, ℍ), carried
/// over to s by the standardizing isomorphism. Rotation is conjugation by a.
pub fn random_automorphism(s: &HypercomplexStructure, seed: u64) -> Result<QuaternionicMap> {
    let k = s.quat_dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if k == 0 {
        return Ok(QuaternionicMap {
            matrix: Matrix::zero(0, 0),
            rotation: Matrix::identity(3),
        });
    }
    let a = random_unit_quaternion(&mut rng);
    let a_inv_mat = loop {
        let m = Matrix::<Quaternion>::from_fn(k, k, |_, _| random_quaternion(&mut rng));
        if let Some(inv) = m.inverse() {
            break inv;
        }
    };
    // Real 4k×4k matrix of x ↦ a·x·A⁻¹, block (i,j) = L_a · R_{(A⁻¹)_{ji}}.
    let la = left_mult_matrix(&a);
    let mut real = Matrix::zero(4 * k, 4 * k);
    for bi in 0..k {
        for bj in 0..k {
            let block = &la * &right_mult_matrix(&a_inv_mat[(bj, bi)]);
            for r in 0..4 {
                for c in 0..4 {
                    real[(4 * bi + r, 4 * bj + c)] = block[(r, c)].clone();
                }
            }
        }
    }
    let std_map = standardize(s)?;
    let to_std = &std_map.matrix;
    let from_std = to_std
        .inverse()
        .ok_or_else(|| Error::Internal("standardizing map not invertible".into()))?;
    Ok(QuaternionicMap {
        matrix: &(&from_std * &real) * to_std,
        rotation: rotation_matrix(&a),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_k1_is_left_multiplication() {
        let s = HypercomplexStructure::standard(1).unwrap();
        // left multiplication by i: 1 ↦ i, i ↦ −1, j ↦ k, k ↦ −j
        let e0 = vec![rat_int(1), rat_int(0), rat_int(0), rat_int(0)];
        assert_eq!(
            s.i_op().apply(&e0),
            vec![rat_int(0), rat_int(1), rat_int(0), rat_int(0)]
        );
        let e2 = vec![rat_int(0), rat_int(0), rat_int(1), rat_int(0)];
        assert_eq!(
            s.i_op().apply(&e2),
            vec![rat_int(0), rat_int(0), rat_int(0), rat_int(1)]
        );
        assert_eq!(&(s.i_op() * s.j_op()), s.k_op());
    }

    #[test]
    fn standard_k3_validates() {
        let s = HypercomplexStructure::standard(3).unwrap();
        // round-trip through the validating constructor re-checks all seven
        // structure identities
        HypercomplexStructure::new(s.i_op().clone(), s.j_op().clone(), s.k_op().clone()).unwrap();
    }

    #[test]
    fn standard_rejects_zero() {
        assert!(HypercomplexStructure::standard(0).is_err());
    }

    #[test]
    fn admissible_point_validation() {
        assert!(AdmissiblePoint::from_ints(1, 0, 0).is_ok());
        assert!(AdmissiblePoint::from_ints(1, 1, 0).is_err());
        let p = AdmissiblePoint::new(rat(3, 5), rat(4, 5), rat_int(0)).unwrap();
        let s = HypercomplexStructure::standard(1).unwrap();
        let op = s.admissible(&p);
        assert_eq!(&op * &op, -&Matrix::<Rational>::identity(4));
    }

    #[test]
    fn chart_convention() {
        let z0 = chart_to_sphere(&SphereChart::zero());
        assert_eq!((z0.a, z0.b, z0.c), (rat_int(1), rat_int(0), rat_int(0)));
        let z1 = chart_to_sphere(&SphereChart::Finite(gauss(rat_int(1), rat_int(0))));
        assert_eq!((z1.a, z1.b, z1.c), (rat_int(0), rat_int(1), rat_int(0)));
        let zi = chart_to_sphere(&SphereChart::Finite(GaussianRational::i()));
        assert_eq!((zi.a, zi.b, zi.c), (rat_int(0), rat_int(0), rat_int(1)));
        let inf = chart_to_sphere(&SphereChart::Infinity);
        assert_eq!((inf.a, inf.b, inf.c), (rat_int(-1), rat_int(0), rat_int(0)));
    }

    #[test]
    fn chart_round_trip() {
        for (re, im) in [(0, 0), (1, 0), (0, 1), (2, -3), (-1, 5)] {
            let chart = SphereChart::Finite(gauss(rat_int(re), rat_int(im)));
            let back = sphere_to_chart(&chart_to_sphere(&chart));
            assert_eq!(back, chart);
        }
    }

    #[test]
    fn dual_is_involutive_and_valid() {
        let s = HypercomplexStructure::standard(2).unwrap();
        let d = s.dual();
        HypercomplexStructure::new(d.i_op().clone(), d.j_op().clone(), d.k_op().clone()).unwrap();
        assert_eq!(d.dual(), s);
    }

    #[test]
    fn dual_commutes_with_direct_sum() {
        let a = HypercomplexStructure::standard(1).unwrap();
        let b = HypercomplexStructure::standard(2).unwrap();
        assert_eq!(a.direct_sum(&b).dual(), a.dual().direct_sum(&b.dual()));
    }

    #[test]
    fn identity_is_quaternionic_with_identity_rotation() {
        let s = HypercomplexStructure::standard(1).unwrap();
        let rot = is_quaternionic_map(&Matrix::identity(4), &s, &s).unwrap();
        assert_eq!(rot, Matrix::identity(3));
    }

    #[test]
    fn structure_matrix_rotates_by_pi() {
        // J itself is quaternionic: JIJ⁻¹ = −I, JJJ⁻¹ = J, JKJ⁻¹ = −K,
        // i.e. rotation by π about the j-axis.
        let s = HypercomplexStructure::standard(1).unwrap();
        let rot = is_quaternionic_map(s.j_op(), &s, &s).unwrap();
        let mut expect = Matrix::<Rational>::zero(3, 3);
        expect[(0, 0)] = rat_int(-1);
        expect[(1, 1)] = rat_int(1);
        expect[(2, 2)] = rat_int(-1);
        assert_eq!(rot, expect);
    }

    #[test]
    fn defective_map_is_rejected() {
        let s = HypercomplexStructure::standard(1).unwrap();
        let mut t = Matrix::<Rational>::identity(4);
        t[(3, 3)] = Rational::zero(); // rank 3, cannot be quaternionic
        assert!(is_quaternionic_map(&t, &s, &s).is_none());
    }

    #[test]
    fn standardize_standard_is_identity() {
        let s = HypercomplexStructure::standard(2).unwrap();
        let m = standardize(&s).unwrap();
        assert_eq!(m.matrix, Matrix::identity(8));
    }

    #[test]
    fn standardize_recovers_standard_blocks() {
        let s = HypercomplexStructure::standard(1).unwrap().dual();
        let m = standardize(&s).unwrap();
        let conj = s.conjugate(&m.matrix).unwrap();
        assert_eq!(conj, HypercomplexStructure::standard(1).unwrap());
        assert_eq!(is_quaternionic_map(&m.matrix, &s, &conj).unwrap(), Matrix::identity(3));
    }

    #[test]
    fn random_automorphism_is_quaternionic() {
        let s = HypercomplexStructure::standard(2).unwrap();
        for seed in 0..5u64 {
            let a = random_automorphism(&s, seed).unwrap();
            let rot = is_quaternionic_map(&a.matrix, &s, &s).unwrap();
            assert_eq!(rot, a.rotation);
        }
    }

    #[test]
    fn random_automorphism_deterministic() {
        let s = HypercomplexStructure::standard(1).unwrap();
        let a = random_automorphism(&s, 42).unwrap();
        let b = random_automorphism(&s, 42).unwrap();
        assert_eq!(a.matrix, b.matrix);
    }

    #[test]
    fn rotated_representative_still_valid() {
        let s = HypercomplexStructure::standard(2).unwrap();
        let q = Quaternion::new(rat(3, 5), rat(4, 5), rat_int(0), rat_int(0));
        let r = rotation_matrix(&q);
        assert!(is_special_orthogonal(&r));
        let s2 = s.rotate_representative(&r).unwrap();
        assert_ne!(s2, s);
    }
}
