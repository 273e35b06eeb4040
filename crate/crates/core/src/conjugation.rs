//! Conjugations and quaternionifications: the involutive quaternionic
//! automorphisms τ_q of ℍ ⊗ ℝⁿ, recovery of a real form from two distinct
//! commuting conjugations, and the subspace correspondences between linear
//! quaternionic / CR / co-CR structures on a space and quaternionic
//! subspaces of its quaternionification.
//!
//! Quantifications over the space of all conjugations are checked on the
//! generator family τ_i, τ_j, τ_k plus a seeded sample of rational τ_q;
//! every constructed pair is then certified by the exact pencil tests, so
//! a sampling escape cannot survive undetected.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::pencil::{is_co_cr_pair, is_cr_pair, Pair};
use crate::sample::sample_imaginary_units;
use crate::scalar::{rat_int, Quaternion, Rational};
use crate::structures::{
    is_quaternionic_map, left_mult_matrix, right_mult_matrix, AdmissiblePoint,
    HypercomplexStructure,
};
use crate::subspace::Subspace;
use crate::{QMatrix, QSubspace};

/// Default count of sampled conjugations added to the τ_i, τ_j, τ_k
/// generators when checking conditions quantified over all conjugations.
pub const CONJUGATION_SAMPLES: usize = 10;

/// ℍ ⊗ ℝⁿ with the left-multiplication structure, basis ordered as
/// {1⊗u_α}, {i⊗u_α}, {j⊗u_α}, {k⊗u_α}.
#[derive(Clone, PartialEq, Debug)]
pub struct Quaternionification {
    n: usize,
    structure: HypercomplexStructure,
}

impl Quaternionification {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn structure(&self) -> &HypercomplexStructure {
        &self.structure
    }

    pub fn into_structure(self) -> HypercomplexStructure {
        self.structure
    }
}

pub fn quaternionify(n: usize) -> Result<Quaternionification> {
    if n == 0 {
        return Err(Error::InvalidArgument("quaternionify needs n >= 1".into()));
    }
    let idn = QMatrix::identity(n);
    let block = |q: Quaternion| left_mult_matrix(&q).kronecker(&idn);
    let structure = HypercomplexStructure::new(
        block(Quaternion::i()),
        block(Quaternion::j()),
        block(Quaternion::k()),
    )?;
    Ok(Quaternionification { n, structure })
}

/// Id_ℍ ⊗ f: the quaternionification of a linear map, in the block basis.
pub fn quaternionify_map(f: &QMatrix) -> QMatrix {
    QMatrix::identity(4).kronecker(f)
}

/// A conjugation: an involutive quaternionic automorphism ≠ Id whose
/// sphere isometry is a rotation by π (a symmetry in a line).
#[derive(Clone, PartialEq, Debug)]
pub struct ConjugationMap {
    pub matrix: QMatrix,
    pub rotation: QMatrix,
}

/// 4×4 matrix of q′ ↦ −q·q′·q.
fn tau_block(q: &Quaternion) -> QMatrix {
    (&left_mult_matrix(q) * &right_mult_matrix(q)).map(|e| -e.clone())
}

/// The conjugation q′⊗u ↦ −q·q′·q ⊗ u on ℍ ⊗ ℝⁿ, for an imaginary unit q.
/// Its sphere isometry is conjugation by q: the symmetry fixing the line
/// through q.
pub fn tau(q: &Quaternion, n: usize) -> Result<ConjugationMap> {
    if !q.is_imaginary() || !q.is_unit() {
        return Err(Error::InvalidConjugation(format!(
            "tau needs an imaginary unit quaternion, got {q}"
        )));
    }
    Ok(ConjugationMap {
        matrix: tau_block(q).kronecker(&QMatrix::identity(n)),
        rotation: crate::structures::rotation_matrix(q),
    })
}

/// m is a conjugation for s iff m² = Id, m ≠ Id and its sphere isometry is
/// an involution fixing a line (but not all of the sphere).
pub fn is_conjugation(m: &QMatrix, s: &HypercomplexStructure) -> bool {
    conjugation_from_matrix(m, s).is_some()
}

pub fn conjugation_from_matrix(m: &QMatrix, s: &HypercomplexStructure) -> Option<ConjugationMap> {
    if m.rows() != s.dim() || m.cols() != s.dim() {
        return None;
    }
    let id = QMatrix::identity(s.dim());
    if m == &id || &(m * m) != &id {
        return None;
    }
    let rotation = is_quaternionic_map(m, s, s)?;
    let id3 = QMatrix::identity(3);
    if rotation == id3 || &(&rotation * &rotation) != &id3 {
        return None;
    }
    Some(ConjugationMap {
        matrix: m.clone(),
        rotation,
    })
}

/// Unit point spanning the fixed line of a π-rotation, sign-canonicalized
/// so the first nonzero coordinate is positive. Errors when the line has
/// no rational unit point (possible for rational π-rotations: the axis can
/// have irrational norm even though the rotation matrix is rational).
pub fn rotation_axis(r: &QMatrix) -> Result<AdmissiblePoint> {
    let diff = r - &QMatrix::identity(3);
    let ker = diff.kernel();
    if ker.rows() != 1 {
        return Err(Error::InvalidConjugation(format!(
            "rotation fixes a {}-dimensional space, not a line",
            ker.rows()
        )));
    }
    let v = ker.row_vec(0);
    // clear denominators to a primitive integer vector
    let denom_lcm = v
        .iter()
        .fold(num_bigint::BigInt::one(), |acc, x| {
            num_integer::lcm(acc, x.denom().clone())
        });
    let ints: Vec<num_bigint::BigInt> = v
        .iter()
        .map(|x| x.numer() * (&denom_lcm / x.denom()))
        .collect();
    let gcd = ints
        .iter()
        .fold(num_bigint::BigInt::zero(), |acc, x| num_integer::gcd(acc, x.clone()));
    let prim: Vec<num_bigint::BigInt> = ints.iter().map(|x| x / &gcd).collect();
    let norm_sq: num_bigint::BigInt = prim.iter().map(|x| x * x).sum();
    let root = norm_sq.sqrt();
    if &root * &root != norm_sq {
        return Err(Error::NonRationalAxis(format!(
            "axis ({}, {}, {}) has norm² = {}",
            prim[0], prim[1], prim[2], norm_sq
        )));
    }
    let mut unit: Vec<Rational> = prim
        .iter()
        .map(|x| Rational::new(x.clone(), root.clone()))
        .collect();
    if unit
        .iter()
        .find(|c| !c.is_zero())
        .map(|c| c.is_negative())
        .unwrap_or(false)
    {
        for c in unit.iter_mut() {
            *c = -c.clone();
        }
    }
    AdmissiblePoint::new(unit[0].clone(), unit[1].clone(), unit[2].clone())
}

fn fixed_space(m: &QMatrix, sign: bool) -> QSubspace {
    let id = QMatrix::identity(m.rows());
    let diff = if sign { m - &id } else { &(m + &id) - &(QMatrix::zero(m.rows(), m.rows())) };
    Subspace::span(m.rows(), &diff.kernel())
}

/// Outcome of the real-form recovery: the recovered real subspace U ⊆ E
/// and the quaternionic isomorphism ℍ ⊗ U → E (columns ordered as the
/// quaternionification basis).
#[derive(Clone, Debug)]
pub struct RealFormRecovery {
    pub subspace: QSubspace,
    pub iso: QMatrix,
}

/// Reconstruct E as a quaternionification from two distinct commuting
/// conjugations: U is the joint fixed space, I and J are the admissible
/// operators along the fixed lines of the two sphere symmetries, and the
/// isomorphism sends q⊗u ↦ q₀u + q₁Iu + q₂Ju + q₃Ku. Conjugating τ₁, τ₂
/// through it yields exactly tau(i) and tau(j).
pub fn recover_real_form(
    s: &HypercomplexStructure,
    t1: &QMatrix,
    t2: &QMatrix,
) -> Result<RealFormRecovery> {
    if t1 == t2 {
        return Err(Error::InvalidConjugation(
            "conjugations must be distinct".into(),
        ));
    }
    if &(t1 * t2) != &(t2 * t1) {
        return Err(Error::InvalidConjugation(
            "conjugations must commute".into(),
        ));
    }
    let c1 = conjugation_from_matrix(t1, s)
        .ok_or_else(|| Error::InvalidConjugation("first map is not a conjugation".into()))?;
    let c2 = conjugation_from_matrix(t2, s)
        .ok_or_else(|| Error::InvalidConjugation("second map is not a conjugation".into()))?;
    let ax1 = rotation_axis(&c1.rotation)?;
    let ax2 = rotation_axis(&c2.rotation)?;
    let dot = &ax1.a * &ax2.a + &ax1.b * &ax2.b + &ax1.c * &ax2.c;
    if !dot.is_zero() {
        return Err(Error::InvalidConjugation(
            "fixed lines are neither orthogonal nor handled (equal lines contradict distinctness)"
                .into(),
        ));
    }

    let i_op = s.admissible(&ax1);
    let j_op = s.admissible(&ax2);
    let k_op = &i_op * &j_op;

    // joint eigenspace refinement
    let fix1 = fixed_space(t1, true);
    let neg1 = fixed_space(t1, false);
    let fix2 = fixed_space(t2, true);
    let neg2 = fixed_space(t2, false);
    let u = fix1.intersect(&fix2)?;
    let v_minus = fix1.intersect(&neg2)?;
    let w_plus = neg1.intersect(&fix2)?;
    let w_minus = neg1.intersect(&neg2)?;

    let n = s.dim() / 4;
    for (name, space) in [
        ("V+", &u),
        ("V-", &v_minus),
        ("W+", &w_plus),
        ("W-", &w_minus),
    ] {
        if space.dim() != n {
            return Err(Error::InvalidConjugation(format!(
                "eigenspace {name} has dimension {} ≠ {n}",
                space.dim()
            )));
        }
    }
    for (name, op, target) in [
        ("I·V+ = V-", &i_op, &v_minus),
        ("J·V+ = W+", &j_op, &w_plus),
        ("K·V+ = W-", &k_op, &w_minus),
    ] {
        if &u.image(op) != target {
            return Err(Error::InvalidConjugation(format!(
                "decomposition clause {name} fails"
            )));
        }
    }

    // columns: u basis, then its I, J, K images (quaternionification order)
    let dim = s.dim();
    let mut iso = QMatrix::zero(dim, dim);
    for (group, op) in [(0, None), (1, Some(&i_op)), (2, Some(&j_op)), (3, Some(&k_op))] {
        for alpha in 0..n {
            let base = u.basis().row_vec(alpha);
            let col = match op {
                None => base,
                Some(m) => m.apply(&base),
            };
            for r in 0..dim {
                iso[(r, group * n + alpha)] = col[r].clone();
            }
        }
    }
    if iso.inverse().is_none() {
        return Err(Error::InvalidConjugation(
            "recovered basis is not a basis of E".into(),
        ));
    }

    // postconditions: the isomorphism is quaternionic and transports the
    // conjugations to tau(i), tau(j)
    let quat = quaternionify(n)?;
    if is_quaternionic_map(&iso, quat.structure(), s).is_none() {
        return Err(Error::Internal(
            "recovered isomorphism is not quaternionic".into(),
        ));
    }
    let iso_inv = iso.inverse().expect("checked invertible");
    let back1 = &(&iso_inv * t1) * &iso;
    let back2 = &(&iso_inv * t2) * &iso;
    if back1 != tau(&Quaternion::i(), n)?.matrix || back2 != tau(&Quaternion::j(), n)?.matrix {
        return Err(Error::Internal(
            "conjugations do not become tau(i), tau(j) in the recovered form".into(),
        ));
    }
    Ok(RealFormRecovery { subspace: u, iso })
}

/// The graph subspace B = {1⊗e − i⊗Ie − j⊗Je − k⊗Ke : e ∈ E} of a
/// structure, inside ℍ ⊗ E. It is quaternionic and b(Ie) = L_i·b(e).
pub fn graph_subspace(s: &HypercomplexStructure) -> QSubspace {
    let d = s.dim();
    let rows: Vec<Vec<Rational>> = (0..d)
        .map(|idx| {
            let mut e = vec![Rational::zero(); d];
            e[idx] = rat_int(1);
            graph_vector(s, &e)
        })
        .collect();
    Subspace::span(4 * d, &Matrix::from_rows(rows))
}

/// b(e) = 1⊗e − i⊗Ie − j⊗Je − k⊗Ke in the block basis.
pub fn graph_vector(s: &HypercomplexStructure, e: &[Rational]) -> Vec<Rational> {
    let mut out = Vec::with_capacity(4 * s.dim());
    out.extend_from_slice(e);
    for op in [s.i_op(), s.j_op(), s.k_op()] {
        out.extend(op.apply(e).into_iter().map(|x| -x));
    }
    out
}

/// C = τ_i(B) + τ_j(B) + τ_k(B) inside the same quaternionification.
pub fn cosum_subspace(b: &QSubspace) -> Result<QSubspace> {
    if b.ambient() % 4 != 0 {
        return Err(Error::AmbientMismatch {
            left: b.ambient(),
            right: 4,
        });
    }
    let n = b.ambient() / 4;
    let mut acc = Subspace::zero(b.ambient());
    for q in [Quaternion::i(), Quaternion::j(), Quaternion::k()] {
        let t = tau(&q, n)?;
        acc = acc.sum(&b.image(&t.matrix))?;
    }
    Ok(acc)
}

/// Verified Bonan decomposition of ℍ⊗E: the graph subspace B, the cosum C,
/// and the checks ℍ⊗E = B ⊕ C, C quaternionic, and B = ⋂ τ_q(C) over the
/// generators and a seeded sample. Failures name the condition.
pub fn bonan_decomposition(
    s: &HypercomplexStructure,
    seed: u64,
    extra_samples: usize,
) -> Result<(QSubspace, QSubspace)> {
    let b = graph_subspace(s);
    let c = cosum_subspace(&b)?;
    let ambient = 4 * s.dim();
    let n = s.dim();
    if b.dim() + c.dim() != ambient || b.intersect(&c)?.dim() != 0 {
        return Err(Error::ConditionFailed(
            "quaternionification = B ⊕ C".into(),
        ));
    }
    let quat = quaternionify(n)?;
    for op in [quat.structure().i_op(), quat.structure().j_op()] {
        if !c.is_invariant_under(op) {
            return Err(Error::ConditionFailed("C is quaternionic".into()));
        }
    }
    let mut meet: Option<QSubspace> = None;
    for q in conjugation_family(seed, extra_samples) {
        let t = tau(&q, n)?;
        let image = c.image(&t.matrix);
        meet = Some(match meet {
            None => image,
            Some(m) => m.intersect(&image)?,
        });
    }
    if meet.expect("family nonempty") != b {
        return Err(Error::ConditionFailed(
            "B = intersection of τ(C) over the sampled family".into(),
        ));
    }
    Ok((b, c))
}

/// τ_i, τ_j, τ_k plus seeded rational imaginary units.
fn conjugation_family(seed: u64, extra: usize) -> Vec<Quaternion> {
    let mut family = vec![Quaternion::i(), Quaternion::j(), Quaternion::k()];
    for q in sample_imaginary_units(extra + 3, seed) {
        if !family.contains(&q) {
            family.push(q);
        }
    }
    family
}

fn is_quaternionic_subspace(c: &QSubspace, s: &HypercomplexStructure) -> bool {
    c.is_invariant_under(s.i_op()) && c.is_invariant_under(s.j_op())
}

/// Linear CR structure from a quaternionic subspace C ⊆ ℍ⊗ℝⁿ with
/// C ∩ ⋂τ(C) = 0 and C + σ(C) = ℍ⊗ℝⁿ (σ over the sampled family):
/// E = (ℍ⊗ℝⁿ)/C with the quotient structure and U mapped in along 1⊗—.
/// The result is certified CR by the exact pencil test.
pub fn cr_from_subspace(c: &QSubspace, seed: u64) -> Result<Pair> {
    if c.ambient() % 4 != 0 {
        return Err(Error::AmbientMismatch {
            left: c.ambient(),
            right: 4,
        });
    }
    let n = c.ambient() / 4;
    let quat = quaternionify(n)?;
    if !is_quaternionic_subspace(c, quat.structure()) {
        return Err(Error::ConditionFailed("C is quaternionic".into()));
    }
    let family = conjugation_family(seed, CONJUGATION_SAMPLES);
    let mut meet: Option<QSubspace> = None;
    for q in &family {
        let t = tau(q, n)?;
        let image = c.image(&t.matrix);
        if c.sum(&image)?.dim() != 4 * n {
            return Err(Error::ConditionFailed(format!(
                "C + τ(C) is not everything for q = {q}"
            )));
        }
        meet = Some(match meet {
            None => image,
            Some(m) => m.intersect(&image)?,
        });
    }
    if c.intersect(&meet.expect("family nonempty"))?.dim() != 0 {
        return Err(Error::ConditionFailed(
            "C ∩ ⋂τ(C) = 0 over the sampled family".into(),
        ));
    }

    let pair = quotient_pair(c, quat.structure(), n)?;
    if !is_cr_pair(&pair) {
        return Err(Error::CertificationFailed(
            "quotient pair is not CR".into(),
        ));
    }
    Ok(pair)
}

/// Quotient of the quaternionification by a quaternionic subspace, with
/// the image of 1⊗ℝⁿ as the distinguished subspace.
fn quotient_pair(c: &QSubspace, s: &HypercomplexStructure, n: usize) -> Result<Pair> {
    let q = c.quotient_map();
    let m = q.rows();
    // right inverse of the surjection
    let section = solve_section(&q)?;
    let quot_op = |op: &QMatrix| -> QMatrix { &(&q * op) * &section };
    let structure = HypercomplexStructure::new(
        quot_op(s.i_op()),
        quot_op(s.j_op()),
        quot_op(s.k_op()),
    )?;
    let real_slot = Subspace::span(
        4 * n,
        &Matrix::from_fn(n, 4 * n, |r, col| {
            if col == r {
                Rational::one()
            } else {
                Rational::zero()
            }
        }),
    );
    let u_img = real_slot.image(&q);
    debug_assert_eq!(structure.dim(), m);
    Pair::new(structure, u_img)
}

/// Solve Q·S = Id for a full-row-rank Q.
fn solve_section(q: &QMatrix) -> Result<QMatrix> {
    let m = q.rows();
    let mut cols: Vec<Vec<Rational>> = Vec::with_capacity(m);
    let qt = q.transpose();
    let gram = q * &qt;
    let gram_inv = gram
        .inverse()
        .ok_or_else(|| Error::Internal("quotient map is not surjective".into()))?;
    let s = &qt * &gram_inv;
    for cidx in 0..m {
        cols.push(s.col_vec(cidx));
    }
    Ok(s)
}

/// The quaternionic subspace of ℍ⊗U attached to a CR pair: the preimage of
/// the ambient Bonan subspace C_E under the quaternionified inclusion.
pub fn subspace_from_cr(p: &Pair) -> Result<QSubspace> {
    if !is_cr_pair(p) {
        return Err(Error::InvalidArgument(
            "subspace_from_cr needs a CR pair".into(),
        ));
    }
    let c_e = cosum_subspace(&graph_subspace(p.structure()))?;
    let iota = p.subspace().inclusion();
    let iota_h = quaternionify_map(&iota);
    Ok(c_e.preimage(&iota_h))
}

/// Linear co-CR structure from a quaternionic subspace B ⊆ ℍ⊗ℝⁿ with
/// ℍ⊗ℝⁿ = B + Στ(B) and B ∩ σ(B) = 0 (sampled): by duality, the
/// annihilator satisfies the CR conditions inside the (self-dual)
/// quaternionification of the dual space, and the co-CR pair is the dual
/// of the CR pair built there. Certified co-CR by the exact pencil test.
pub fn cocr_from_subspace(b: &QSubspace, seed: u64) -> Result<Pair> {
    if b.ambient() % 4 != 0 {
        return Err(Error::AmbientMismatch {
            left: b.ambient(),
            right: 4,
        });
    }
    let n = b.ambient() / 4;
    let quat = quaternionify(n)?;
    if !is_quaternionic_subspace(b, quat.structure()) {
        return Err(Error::ConditionFailed("B is quaternionic".into()));
    }
    let family = conjugation_family(seed, CONJUGATION_SAMPLES);
    let mut total = b.clone();
    for q in &family {
        let t = tau(q, n)?;
        let image = b.image(&t.matrix);
        if b.intersect(&image)?.dim() != 0 {
            return Err(Error::ConditionFailed(format!(
                "B ∩ σ(B) ≠ 0 for q = {q}"
            )));
        }
        total = total.sum(&image)?;
    }
    if total.dim() != 4 * n {
        return Err(Error::ConditionFailed(
            "B + Στ(B) is not everything over the sampled family".into(),
        ));
    }

    let c_dual = b.annihilator();
    let cr = cr_from_subspace(&c_dual, seed)?;
    let pair = cr.dual();
    if !is_co_cr_pair(&pair) {
        return Err(Error::CertificationFailed(
            "dual of the CR quotient is not co-CR".into(),
        ));
    }
    Ok(pair)
}
