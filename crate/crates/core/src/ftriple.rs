//! Linear f-quaternionic triples (E = U ⊕ V with J(V) ⊆ U for every
//! admissible J), their CR and co-CR sides, the automorphism group of the
//! model carrier with its explicit action, and the rank-four construction
//! over an oriented conformal 3-space.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::pencil::{is_co_cr_pair, is_cr_pair, Pair};
use crate::scalar::{FieldScalar, Quaternion, Rational};
use crate::structures::{
    left_mult_matrix, right_mult_matrix, rotation_matrix, HypercomplexStructure,
};
use crate::subspace::Subspace;
use crate::{QMatrix, QSubspace};

/// E = U ⊕ V with J(V) ⊆ U for all admissible J; checking the three
/// generators suffices by linearity.
#[derive(Clone, PartialEq, Debug)]
pub struct FQuatTriple {
    structure: HypercomplexStructure,
    u: QSubspace,
    v: QSubspace,
}

impl FQuatTriple {
    pub fn new(structure: HypercomplexStructure, u: QSubspace, v: QSubspace) -> Result<Self> {
        let violations = core_violations(&structure, &u, &v);
        if !violations.is_empty() {
            return Err(Error::InvalidTriple(violations));
        }
        Ok(Self { structure, u, v })
    }

    pub fn structure(&self) -> &HypercomplexStructure {
        &self.structure
    }

    pub fn u(&self) -> &QSubspace {
        &self.u
    }

    pub fn v(&self) -> &QSubspace {
        &self.v
    }
}

fn core_violations(e: &HypercomplexStructure, u: &QSubspace, v: &QSubspace) -> Vec<String> {
    let mut out = Vec::new();
    if u.ambient() != e.dim() || v.ambient() != e.dim() {
        out.push(format!(
            "ambient mismatch: dim E = {}, U in dim {}, V in dim {}",
            e.dim(),
            u.ambient(),
            v.ambient()
        ));
        return out;
    }
    if u.dim() + v.dim() != e.dim()
        || u.intersect(v).map(|i| i.dim()).unwrap_or(usize::MAX) != 0
    {
        out.push("direct sum: E = U ⊕ V fails".into());
    }
    for (name, op) in [("I", e.i_op()), ("J", e.j_op()), ("K", e.k_op())] {
        if !v.image(op).is_subspace_of(u) {
            out.push(format!("{name}(V) ⊆ U fails"));
        }
    }
    out
}

/// Full validation report: the defining clauses plus the derived facts
/// that (U, E) is a CR pair and (V, E) is a co-CR pair.
#[derive(Clone, Debug)]
pub struct TripleValidation {
    pub violations: Vec<String>,
    pub cr_side_ok: bool,
    pub cocr_side_ok: bool,
}

impl TripleValidation {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty() && self.cr_side_ok && self.cocr_side_ok
    }
}

/// Check a candidate triple clause by clause; every violated clause is
/// named. Derived CR / co-CR facts are only evaluated once the core
/// clauses hold (they are meaningless otherwise).
pub fn validate_triple(
    e: &HypercomplexStructure,
    u: &QSubspace,
    v: &QSubspace,
) -> TripleValidation {
    let violations = core_violations(e, u, v);
    if !violations.is_empty() {
        return TripleValidation {
            violations,
            cr_side_ok: false,
            cocr_side_ok: false,
        };
    }
    let cr = Pair::new(e.clone(), u.clone()).map(|p| is_cr_pair(&p));
    let cocr = Pair::new(e.clone(), v.clone()).map(|p| is_co_cr_pair(&p));
    TripleValidation {
        violations,
        cr_side_ok: cr.unwrap_or(false),
        cocr_side_ok: cocr.unwrap_or(false),
    }
}

/// The CR pair (U, E) of a triple.
pub fn cr_side(t: &FQuatTriple) -> Pair {
    Pair::new(t.structure.clone(), t.u.clone()).expect("triple ambient consistent")
}

/// The co-CR pair (V, E) of a triple (V is the kernel of the projection).
pub fn cocr_side(t: &FQuatTriple) -> Pair {
    Pair::new(t.structure.clone(), t.v.clone()).expect("triple ambient consistent")
}

/// Element (A, q·B) of GL(l, ℝ) × (Sp(1)·GL(m, ℍ)) acting on the model
/// carrier (Im ℍ)^l × ℍ^m. The class representative is canonicalized so
/// that the first nonzero coordinate of q is positive (flipping q flips B).
#[derive(Clone, PartialEq, Debug)]
pub struct GroupElement {
    a: QMatrix,
    q: Quaternion,
    b: Matrix<Quaternion>,
    b_inv: Matrix<Quaternion>,
}

impl GroupElement {
    pub fn new(a: QMatrix, q: Quaternion, b: Matrix<Quaternion>) -> Result<Self> {
        if !a.is_square() || !b.is_square() {
            return Err(Error::InvalidArgument("A and B must be square".into()));
        }
        if !q.is_unit() {
            return Err(Error::NotUnit(format!("q = {q}")));
        }
        if a.rows() > 0 && a.inverse().is_none() {
            return Err(Error::InvalidArgument("A is singular".into()));
        }
        let (q, b) = canonical_sign(q, b);
        let b_inv = if b.rows() == 0 {
            b.clone()
        } else {
            b.inverse()
                .ok_or_else(|| Error::InvalidArgument("B is singular".into()))?
        };
        Ok(Self { a, q, b, b_inv })
    }

    pub fn identity(l: usize, m: usize) -> Self {
        Self {
            a: Matrix::identity(l),
            q: Quaternion::one(),
            b: Matrix::identity(m),
            b_inv: Matrix::identity(m),
        }
    }

    pub fn l(&self) -> usize {
        self.a.rows()
    }

    pub fn m(&self) -> usize {
        self.b.rows()
    }

    pub fn a(&self) -> &QMatrix {
        &self.a
    }

    pub fn q(&self) -> &Quaternion {
        &self.q
    }

    pub fn b(&self) -> &Matrix<Quaternion> {
        &self.b
    }
}

fn canonical_sign(q: Quaternion, b: Matrix<Quaternion>) -> (Quaternion, Matrix<Quaternion>) {
    use num_traits::Signed;
    let coords = q.coords();
    let flip = coords
        .iter()
        .find(|c| !c.is_zero())
        .map(|c| c.is_negative())
        .unwrap_or(false);
    if flip {
        (-q, b.map(|e| -e.clone()))
    } else {
        (q, b)
    }
}

/// Point of the model carrier: l imaginary quaternions followed by m
/// arbitrary quaternions.
pub fn group_act(g: &GroupElement, x: &[Quaternion]) -> Result<Vec<Quaternion>> {
    let (l, m) = (g.l(), g.m());
    if x.len() != l + m {
        return Err(Error::DimensionMismatch {
            what: "model point",
            expected: l + m,
            found: x.len(),
        });
    }
    for (idx, q) in x.iter().take(l).enumerate() {
        if !q.is_imaginary() {
            return Err(Error::InvalidArgument(format!(
                "coordinate {idx} must be imaginary, got {q}"
            )));
        }
    }
    let q_inv = g.q.inv();
    let mut out = Vec::with_capacity(l + m);
    // (A, q·B)(X, Y) = (q(σ(A)X)q⁻¹, qYB⁻¹)
    for p in 0..l {
        let mut acc = Quaternion::zero();
        for r in 0..l {
            acc = acc + x[r].scale(&g.a[(p, r)]);
        }
        out.push(g.q.clone() * acc * q_inv.clone());
    }
    for i in 0..m {
        let mut acc = Quaternion::zero();
        for j in 0..m {
            acc = acc + x[l + j].clone() * g.b_inv[(j, i)].clone();
        }
        out.push(g.q.clone() * acc);
    }
    Ok(out)
}

/// The induced real matrix on E = ℍ^{l+m}: conjugation by q extends the
/// action to full quaternion coordinates, fixing the real axes of the
/// first l slots pointwise up to A.
pub fn group_matrix(g: &GroupElement) -> QMatrix {
    let (l, m) = (g.l(), g.m());
    let n = l + m;
    let q_inv = g.q.inv();
    // 4×4 matrix of x ↦ q·x·q⁻¹
    let conj = &left_mult_matrix(&g.q) * &right_mult_matrix(&q_inv);
    let lq = left_mult_matrix(&g.q);
    let mut out = QMatrix::zero(4 * n, 4 * n);
    for bi in 0..n {
        for bj in 0..n {
            let block = if bi < l && bj < l {
                conj.scale(&g.a[(bi, bj)])
            } else if bi >= l && bj >= l {
                &lq * &right_mult_matrix(&g.b_inv[(bj - l, bi - l)])
            } else {
                continue;
            };
            for r in 0..4 {
                for c in 0..4 {
                    out[(4 * bi + r, 4 * bj + c)] = block[(r, c)].clone();
                }
            }
        }
    }
    out
}

/// Componentwise composition (A, q·B)(A′, q′·B′) = (AA′, qq′·BB′).
pub fn group_compose(g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
    if g.l() != h.l() || g.m() != h.m() {
        return Err(Error::DimensionMismatch {
            what: "group element shapes",
            expected: g.l() + g.m(),
            found: h.l() + h.m(),
        });
    }
    GroupElement::new(
        &g.a * &h.a,
        g.q.clone() * h.q.clone(),
        &g.b * &h.b,
    )
}

/// The sphere rotation of a group element: conjugation by q, well defined
/// despite the ± class ambiguity.
pub fn rho(g: &GroupElement) -> QMatrix {
    rotation_matrix(&g.q)
}

/// Triple over an oriented conformal 3-space: given an exact inner product
/// (Gram matrix) and a positively-oriented orthonormal frame, identify
/// ℝ ⊕ ℝ³ with ℍ through the frame and transport the left multiplications.
/// Returns (E = ℝ ⊕ ℝ³, U = the 3-space, V = ℝ).
pub fn conformal_3d(frame: &QMatrix, gram: &QMatrix) -> Result<FQuatTriple> {
    if frame.rows() != 3 || frame.cols() != 3 || gram.rows() != 3 || gram.cols() != 3 {
        return Err(Error::DimensionMismatch {
            what: "frame and gram",
            expected: 3,
            found: frame.rows(),
        });
    }
    let prod = &(&frame.transpose() * gram) * frame;
    if prod != QMatrix::identity(3) {
        return Err(Error::InvalidArgument(
            "frame is not orthonormal for the given inner product".into(),
        ));
    }
    let det = frame.det()?;
    if !num_traits::Signed::is_positive(&det) {
        return Err(Error::InvalidArgument(
            "frame is negatively oriented".into(),
        ));
    }
    let phi = QMatrix::identity(1).block_diag(frame);
    let phi_inv = phi
        .inverse()
        .ok_or_else(|| Error::Internal("orthonormal frame not invertible".into()))?;
    let transport = |q: &Quaternion| -> QMatrix { &(&phi * &left_mult_matrix(q)) * &phi_inv };
    let structure = HypercomplexStructure::new(
        transport(&Quaternion::i()),
        transport(&Quaternion::j()),
        transport(&Quaternion::k()),
    )?;
    let u = Subspace::span(
        4,
        &Matrix::from_fn(3, 4, |r, c| {
            if c == r + 1 {
                Rational::one()
            } else {
                Rational::zero()
            }
        }),
    );
    let v = Subspace::span(
        4,
        &Matrix::from_fn(1, 4, |_, c| {
            if c == 0 {
                Rational::one()
            } else {
                Rational::zero()
            }
        }),
    );
    FQuatTriple::new(structure, u, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::model_f_triple;
    use crate::pencil::{cokernel_splitting, kernel_splitting, sheaf_pencil};
    use crate::scalar::{rat, rat_int};
    use crate::structures::is_quaternionic_map;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn model_triples_validate() {
        let t = model_f_triple(1, 0).unwrap();
        let report = validate_triple(t.structure(), t.u(), t.v());
        assert!(report.is_valid());

        // quaternionic degenerate case: U = E, V = 0
        let s = HypercomplexStructure::standard(1).unwrap();
        let report = validate_triple(&s, &Subspace::full(4), &Subspace::zero(4));
        assert!(report.is_valid());
    }

    #[test]
    fn common_subspace_fails_direct_sum() {
        let s = HypercomplexStructure::standard(1).unwrap();
        let common = Subspace::span(
            4,
            &Matrix::from_rows(vec![vec![
                rat_int(1),
                rat_int(0),
                rat_int(0),
                rat_int(0),
            ]]),
        );
        let report = validate_triple(&s, &common, &common);
        assert!(report
            .violations
            .iter()
            .any(|v| v.contains("direct sum")));
        assert!(FQuatTriple::new(s, common.clone(), common).is_err());
    }

    #[test]
    fn sides_of_imh_model() {
        let t = model_f_triple(1, 0).unwrap();
        let co = cocr_side(&t);
        let split = cokernel_splitting(&sheaf_pencil(&co)).unwrap();
        assert_eq!(split.degrees(), &[2]);

        let t = model_f_triple(0, 1).unwrap();
        let cr = cr_side(&t);
        assert_eq!(cr.subspace().dim(), 4);
        let split = kernel_splitting(&sheaf_pencil(&cr)).unwrap();
        assert_eq!(split.degrees(), &[-1, -1]);
    }

    #[test]
    fn mixed_model_cocr_splitting() {
        // (l, m) = (1, 1): cocr side splits as {2} ∪ {1, 1}
        let t = model_f_triple(1, 1).unwrap();
        let co = cocr_side(&t);
        let split = cokernel_splitting(&sheaf_pencil(&co)).unwrap();
        assert_eq!(split.degrees(), &[1, 1, 2]);
    }

    #[test]
    fn identity_acts_trivially() {
        let g = GroupElement::identity(1, 1);
        let x = vec![Quaternion::i(), Quaternion::from_ints(1, 2, 3, 4)];
        assert_eq!(group_act(&g, &x).unwrap(), x);
        assert_eq!(group_matrix(&g), Matrix::identity(8));
    }

    #[test]
    fn scaling_on_im_h() {
        let g = GroupElement::new(
            Matrix::from_rows(vec![vec![rat_int(2)]]),
            Quaternion::one(),
            Matrix::<Quaternion>::zero(0, 0),
        )
        .unwrap();
        let x = vec![Quaternion::from_ints(0, 1, -2, 3)];
        let y = group_act(&g, &x).unwrap();
        assert_eq!(y[0], Quaternion::from_ints(0, 2, -4, 6));
        // the induced map is an f-quaternionic automorphism of the model
        let t = model_f_triple(1, 0).unwrap();
        let mat = group_matrix(&g);
        let rot = is_quaternionic_map(&mat, t.structure(), t.structure()).unwrap();
        assert_eq!(rot, rho(&g));
        assert!(t.u().image(&mat).is_subspace_of(t.u()));
        assert!(t.v().image(&mat).is_subspace_of(t.v()));
    }

    #[test]
    fn rho_of_j_is_pi_rotation() {
        let g = GroupElement::new(
            Matrix::identity(1),
            Quaternion::j(),
            Matrix::<Quaternion>::identity(1),
        )
        .unwrap();
        let r = rho(&g);
        // conjugation by j: i ↦ −i, j ↦ j, k ↦ −k
        let mut expect = QMatrix::zero(3, 3);
        expect[(0, 0)] = rat_int(-1);
        expect[(1, 1)] = rat_int(1);
        expect[(2, 2)] = rat_int(-1);
        assert_eq!(r, expect);
    }

    #[test]
    fn quarter_turn_about_i_axis_extends() {
        // the exact rational rotation induced by conjugation with
        // (1+i)/√2: i fixed, j ↦ k, k ↦ −j
        let mut rot = QMatrix::zero(3, 3);
        rot[(0, 0)] = rat_int(1);
        rot[(2, 1)] = rat_int(1);
        rot[(1, 2)] = rat_int(-1);
        // on E = ℍ ⊕ ℍ the map acts by the rotation on both Im parts
        let t = model_f_triple(1, 1).unwrap();
        let conj4 = QMatrix::identity(1).block_diag(&rot);
        let mat = conj4.block_diag(&conj4);
        let found = is_quaternionic_map(&mat, t.structure(), t.structure()).unwrap();
        assert_eq!(found, rot);
        assert!(t.u().image(&mat).is_subspace_of(t.u()));
        assert!(t.v().image(&mat).is_subspace_of(t.v()));
    }

    #[test]
    fn composition_is_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let g = random_element(2, 1, &mut rng);
            let h = random_element(2, 1, &mut rng);
            let gh = group_compose(&g, &h).unwrap();
            assert_eq!(group_matrix(&gh), &group_matrix(&g) * &group_matrix(&h));
            assert_eq!(rho(&gh), &rho(&g) * &rho(&h));
        }
    }

    #[test]
    fn action_on_v_is_by_a_alone() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let t = model_f_triple(2, 0).unwrap();
        for _ in 0..5 {
            let g = random_element(2, 0, &mut rng);
            let mat = group_matrix(&g);
            // V = real axes: the (4p, 4r) entries must reproduce A
            for p in 0..2 {
                for r in 0..2 {
                    assert_eq!(mat[(4 * p, 4 * r)], g.a()[(p, r)]);
                }
            }
            assert!(t.v().image(&mat).is_subspace_of(t.v()));
        }
    }

    pub(super) fn random_element(l: usize, m: usize, rng: &mut ChaCha8Rng) -> GroupElement {
        let a = crate::sample::random_invertible(l, rng);
        let q = crate::structures::random_unit_quaternion(rng);
        let b = loop {
            let cand = Matrix::<Quaternion>::from_fn(m, m, |_, _| {
                Quaternion::new(
                    crate::sample::small_rational(rng),
                    crate::sample::small_rational(rng),
                    crate::sample::small_rational(rng),
                    crate::sample::small_rational(rng),
                )
            });
            if m == 0 || cand.inverse().is_some() {
                break cand;
            }
        };
        GroupElement::new(a, q, b).unwrap()
    }

    #[test]
    fn conformal_standard_frame_is_model() {
        let t = conformal_3d(&Matrix::identity(3), &Matrix::identity(3)).unwrap();
        assert_eq!(&t, &model_f_triple(1, 0).unwrap());
        let co = cocr_side(&t);
        let split = cokernel_splitting(&sheaf_pencil(&co)).unwrap();
        assert_eq!(split.degrees(), &[2]);
    }

    #[test]
    fn conformal_rejects_flipped_orientation() {
        let mut swapped = QMatrix::zero(3, 3);
        swapped[(0, 1)] = rat_int(1);
        swapped[(1, 0)] = rat_int(1);
        swapped[(2, 2)] = rat_int(1);
        assert!(conformal_3d(&swapped, &Matrix::identity(3)).is_err());
    }

    #[test]
    fn conformal_rescale_gives_identical_report() {
        // frame scaled by 1/λ, inner product by λ²
        let lambda = rat(3, 2);
        let frame = QMatrix::identity(3).scale(&lambda.recip());
        let gram = QMatrix::identity(3).scale(&(lambda.clone() * lambda));
        let t = conformal_3d(&frame, &gram).unwrap();
        let base = conformal_3d(&Matrix::identity(3), &Matrix::identity(3)).unwrap();
        let r1 = crate::pencil::analyze_pair(&cocr_side(&t)).unwrap();
        let r2 = crate::pencil::analyze_pair(&cocr_side(&base)).unwrap();
        assert_eq!(r1, r2);
    }
}
