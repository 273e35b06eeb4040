//! The sheaf of a subspace pair over the twistor sphere, realized as a
//! degree-1 matrix pencil in the chart coordinate.
//!
//! For a pair (U, E) the tautological map goes from the antiholomorphic
//! eigenbundle of E (trivialized by an explicit frame linear in the chart
//! coordinate) to the trivial bundle with fibre (E/U)ᶜ. Its kernel and
//! cokernel are computed exactly: fibrewise full-rank questions reduce to
//! Smith invariant factors plus a rank check in the chart at infinity, and
//! splitting types come from dimension counts of polynomial solution
//! spaces.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::Polynomial;
use crate::sample::{sample_sphere_points, DEFAULT_SAMPLES, ORACLE_SEED};
use crate::scalar::{gauss, rat, FieldScalar, GaussianRational};
use crate::smith::smith_normal_form;
use crate::structures::{chart_to_sphere, AdmissiblePoint, HypercomplexStructure, SphereChart};
use crate::{complexify, CMatrix, CPoly, QMatrix, QSubspace};

/// A quaternionic vector space with a distinguished real subspace.
#[derive(Clone, PartialEq, Debug)]
pub struct Pair {
    structure: HypercomplexStructure,
    subspace: QSubspace,
}

impl Pair {
    pub fn new(structure: HypercomplexStructure, subspace: QSubspace) -> Result<Self> {
        if subspace.ambient() != structure.dim() {
            return Err(Error::AmbientMismatch {
                left: structure.dim(),
                right: subspace.ambient(),
            });
        }
        Ok(Self { structure, subspace })
    }

    pub fn structure(&self) -> &HypercomplexStructure {
        &self.structure
    }

    pub fn subspace(&self) -> &QSubspace {
        &self.subspace
    }

    /// Transport the pair along an invertible linear map t: E → E′,
    /// conjugating the structure and pushing the subspace forward.
    pub fn transform(&self, t: &QMatrix) -> Result<Self> {
        let structure = self.structure.conjugate(t)?;
        let subspace = self.subspace.image(t);
        Pair::new(structure, subspace)
    }

    /// Same pair, rotated hypercomplex representative.
    pub fn rotate_representative(&self, r: &QMatrix) -> Result<Self> {
        Pair::new(self.structure.rotate_representative(r)?, self.subspace.clone())
    }

    /// The dual pair: annihilator subspace inside the dual structure.
    pub fn dual(&self) -> Self {
        Self {
            structure: self.structure.dual(),
            subspace: self.subspace.annihilator(),
        }
    }
}

/// Frame of the antiholomorphic eigenbundle: M(ζ) = M₀ + ζM₁, whose columns
/// span the −i eigenspace of the admissible operator at the chart point ζ;
/// at ∞ the columns of M₁ span the −i eigenspace of −I.
#[derive(Clone, PartialEq, Debug)]
pub struct AntiholoFrame {
    pub m0: CMatrix,
    pub m1: CMatrix,
}

impl AntiholoFrame {
    pub fn evaluate(&self, chart: &SphereChart) -> CMatrix {
        match chart {
            SphereChart::Infinity => self.m1.clone(),
            SphereChart::Finite(z) => {
                &self.m0 + &self.m1.map(|e| z.clone() * e.clone())
            }
        }
    }
}

/// M₀ = canonical basis of ker(I + i·Id) in Eᶜ, M₁ = ½(K + iJ)·M₀.
pub fn antiholomorphic_frame(s: &HypercomplexStructure) -> AntiholoFrame {
    let dim = s.dim();
    let i_c = complexify(s.i_op());
    let plus_i = &i_c + &CMatrix::identity(dim).map(|e| GaussianRational::i() * e.clone());
    // kernel rows are solutions; columns of m0 span the eigenspace
    let m0 = plus_i.kernel().transpose();
    let half = rat(1, 2);
    let factor = Matrix::from_fn(dim, dim, |r, c| {
        gauss(
            s.k_op()[(r, c)].clone() * half.clone(),
            s.j_op()[(r, c)].clone() * half.clone(),
        )
    });
    let m1 = &factor * &m0;
    AntiholoFrame { m0, m1 }
}

/// Check J(ζ)·M(ζ) = −i·M(ζ) at one chart point.
pub fn frame_eigen_identity(
    s: &HypercomplexStructure,
    frame: &AntiholoFrame,
    chart: &SphereChart,
) -> bool {
    let op = complexify(&s.admissible(&chart_to_sphere(chart)));
    let m = frame.evaluate(chart);
    let lhs = &op * &m;
    let rhs = m.map(|e| -(GaussianRational::i() * e.clone()));
    lhs == rhs
}

/// Degree-1 pencil N(ζ) = N₀ + ζN₁ representing the tautological map of a
/// pair in the frame: rows = dim(E/U), columns = dim E / 2.
#[derive(Clone, PartialEq, Debug)]
pub struct SheafPencil {
    pub n0: CMatrix,
    pub n1: CMatrix,
    quat_dim: usize,
}

impl SheafPencil {
    pub fn rows(&self) -> usize {
        self.n0.rows()
    }

    pub fn cols(&self) -> usize {
        self.n0.cols()
    }

    /// Quaternionic dimension k of the underlying space.
    pub fn quat_dim(&self) -> usize {
        self.quat_dim
    }

    pub fn evaluate(&self, chart: &SphereChart) -> CMatrix {
        match chart {
            SphereChart::Infinity => self.n1.clone(),
            SphereChart::Finite(z) => &self.n0 + &self.n1.map(|e| z.clone() * e.clone()),
        }
    }

    /// N₀ + z·N₁ as a polynomial matrix.
    pub fn poly_matrix(&self) -> Matrix<CPoly> {
        Matrix::from_fn(self.rows(), self.cols(), |r, c| {
            Polynomial::new(vec![self.n0[(r, c)].clone(), self.n1[(r, c)].clone()])
        })
    }

    /// N₁ + z̃·N₀: the pencil in the chart at infinity.
    pub fn infinity_poly_matrix(&self) -> Matrix<CPoly> {
        Matrix::from_fn(self.rows(), self.cols(), |r, c| {
            Polynomial::new(vec![self.n1[(r, c)].clone(), self.n0[(r, c)].clone()])
        })
    }

    pub fn transpose(&self) -> Self {
        Self {
            n0: self.n0.transpose(),
            n1: self.n1.transpose(),
            quat_dim: self.quat_dim,
        }
    }
}

/// Exact fibrewise-rank data of a pencil over the whole sphere.
#[derive(Clone, Debug)]
pub struct PencilRanks {
    /// Rank over the rational function field.
    pub generic_rank: usize,
    /// Invariant factors of positive degree (finite rank drops).
    pub finite_factors: Vec<CPoly>,
    /// Rank of the pencil at the point at infinity.
    pub rank_at_infinity: usize,
}

impl PencilRanks {
    /// Full rank `required` at every point of the sphere.
    pub fn full_rank_everywhere(&self, required: usize) -> bool {
        self.generic_rank == required
            && self.finite_factors.is_empty()
            && self.rank_at_infinity == required
    }

    /// Rank constant over the whole sphere (kernel and cokernel both
    /// locally free).
    pub fn constant_rank(&self) -> bool {
        self.finite_factors.is_empty() && self.rank_at_infinity == self.generic_rank
    }
}

pub fn pencil_ranks(p: &SheafPencil) -> PencilRanks {
    let factors = smith_normal_form(&p.poly_matrix());
    let generic_rank = factors.len();
    let finite_factors: Vec<CPoly> = factors
        .into_iter()
        .filter(|f| !f.is_constant())
        .collect();
    let rank_at_infinity = p.n1.rank();
    PencilRanks {
        generic_rank,
        finite_factors,
        rank_at_infinity,
    }
}

/// Orders of the rank drop at infinity: positive powers of z̃ dividing the
/// invariant factors of the infinity-chart pencil.
fn infinity_orders(p: &SheafPencil) -> Vec<usize> {
    smith_normal_form(&p.infinity_poly_matrix())
        .iter()
        .map(Polynomial::order_at_zero)
        .filter(|&o| o > 0)
        .collect()
}

/// The tautological pencil of a pair: quotient map onto (E/U)ᶜ composed
/// with the frame.
pub fn sheaf_pencil(p: &Pair) -> SheafPencil {
    let frame = antiholomorphic_frame(p.structure());
    let q = complexify(&p.subspace().quotient_map());
    SheafPencil {
        n0: &q * &frame.m0,
        n1: &q * &frame.m1,
        quat_dim: p.structure().quat_dim(),
    }
}

/// dim(U + J·U) = dim E at one admissible point (surjectivity witness).
pub fn direct_cr_at(p: &Pair, point: &AdmissiblePoint) -> bool {
    stacked_rank(p, point) == p.structure().dim()
}

/// U ∩ J·U = 0 at one admissible point (injectivity witness).
pub fn direct_cocr_at(p: &Pair, point: &AdmissiblePoint) -> bool {
    stacked_rank(p, point) == 2 * p.subspace().dim()
}

fn stacked_rank(p: &Pair, point: &AdmissiblePoint) -> usize {
    let op_t = p.structure().admissible(point).transpose();
    let b = p.subspace().basis();
    let image_rows = b * &op_t;
    b.vstack(&image_rows).rank()
}

fn cross_oracle(p: &Pair, is_cr: bool, is_co_cr: bool, samples: usize) {
    for point in sample_sphere_points(samples, ORACLE_SEED) {
        if is_cr {
            assert!(
                direct_cr_at(p, &point),
                "pencil says CR but U + JU < E at ({}, {}, {})",
                point.a,
                point.b,
                point.c
            );
        }
        if is_co_cr {
            assert!(
                direct_cocr_at(p, &point),
                "pencil says co-CR but U ∩ JU ≠ 0 at ({}, {}, {})",
                point.a,
                point.b,
                point.c
            );
        }
    }
}

/// CR ⟺ the pencil is fibrewise surjective over the whole sphere. The exact
/// decision is cross-checked against the direct subspace condition at
/// sampled rational points.
pub fn is_cr_pair(p: &Pair) -> bool {
    is_cr_pair_sampled(p, DEFAULT_SAMPLES)
}

pub fn is_cr_pair_sampled(p: &Pair, samples: usize) -> bool {
    let pencil = sheaf_pencil(p);
    let ranks = pencil_ranks(&pencil);
    let flag = ranks.full_rank_everywhere(pencil.rows());
    cross_oracle(p, flag, false, samples);
    flag
}

/// co-CR ⟺ the pencil is fibrewise injective over the whole sphere.
pub fn is_co_cr_pair(p: &Pair) -> bool {
    is_co_cr_pair_sampled(p, DEFAULT_SAMPLES)
}

pub fn is_co_cr_pair_sampled(p: &Pair, samples: usize) -> bool {
    let pencil = sheaf_pencil(p);
    let ranks = pencil_ranks(&pencil);
    let flag = ranks.full_rank_everywhere(pencil.cols());
    cross_oracle(p, false, flag, samples);
    flag
}

/// Multiset of line-bundle degrees, kept sorted.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SplittingType {
    degrees: Vec<i64>,
}

impl SplittingType {
    pub fn new(mut degrees: Vec<i64>) -> Self {
        degrees.sort_unstable();
        Self { degrees }
    }

    pub fn empty() -> Self {
        Self { degrees: Vec::new() }
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn degree_sum(&self) -> i64 {
        self.degrees.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut d = self.degrees.clone();
        d.extend_from_slice(&other.degrees);
        Self::new(d)
    }

    pub fn negated(&self) -> Self {
        Self::new(self.degrees.iter().map(|d| -d).collect())
    }
}

impl std::fmt::Display for SplittingType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, d) in self.degrees.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, "}}")
    }
}

/// Kernel dimensions of the banded block-Toeplitz systems
/// T_t = [A; B A; … ; B] with t column blocks, for t = 1..=tmax.
/// T_t’s kernel is the space of polynomial vectors p with < t coefficient
/// blocks and A·p(ζ) + ζ·B·p(ζ) ≡ 0.
fn toeplitz_kernel_dims(a: &CMatrix, b: &CMatrix, tmax: usize, stop_count: usize) -> Vec<usize> {
    let m = a.rows();
    let c = a.cols();
    let total_cols = tmax * c;
    // materialize rows at full width; block-row r holds B at block r-1, A at r
    let mut rows: Vec<Vec<GaussianRational>> = Vec::with_capacity((tmax + 1) * m);
    for br in 0..=tmax {
        for r in 0..m {
            let mut row = vec![GaussianRational::zero(); total_cols];
            if br < tmax {
                for cc in 0..c {
                    row[br * c + cc] = a[(r, cc)].clone();
                }
            }
            if br > 0 {
                for cc in 0..c {
                    row[(br - 1) * c + cc] = b[(r, cc)].clone();
                }
            }
            rows.push(row);
        }
    }

    let mut dims = Vec::with_capacity(tmax);
    let mut rank = 0usize; // pivot rows are swapped to the front
    let mut prev_dim = 0usize;
    for t in 1..=tmax {
        for col in (t - 1) * c..t * c {
            let Some(sel) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(rank, sel);
            let inv = rows[rank][col].inv();
            for r in rank + 1..rows.len() {
                if rows[r][col].is_zero() {
                    continue;
                }
                let factor = rows[r][col].clone() * inv.clone();
                for cc in col..total_cols {
                    let s = rows[rank][cc].clone();
                    if s.is_zero() {
                        continue;
                    }
                    let cur = rows[r][cc].clone();
                    rows[r][cc] = cur - factor.clone() * s;
                }
            }
            rank += 1;
        }
        let dim = t * c - rank;
        dims.push(dim);
        // once the per-step growth hits the expected count the multiset is
        // fully determined
        if dim - prev_dim >= stop_count {
            break;
        }
        prev_dim = dim;
    }
    dims
}

/// Recover minimal solution degrees from the dimension sequence
/// h(t) = Σ_j max(0, t − d_j) with exactly `expected` indices d_j.
fn minimal_degrees_from_dims(h: &[usize], expected: usize) -> Result<Vec<usize>> {
    let mut degrees = Vec::with_capacity(expected);
    let mut prev_h = 0usize;
    let mut prev_delta = 0usize;
    for (idx, &ht) in h.iter().enumerate() {
        let t = idx + 1;
        if ht < prev_h {
            return Err(Error::Internal(
                "solution dimension sequence decreased".into(),
            ));
        }
        let delta = ht - prev_h;
        if delta < prev_delta || delta > expected {
            return Err(Error::Internal(format!(
                "dimension sequence inconsistent with a degree multiset at t = {t}"
            )));
        }
        for _ in 0..delta - prev_delta {
            degrees.push(t - 1);
        }
        prev_h = ht;
        prev_delta = delta;
        if delta == expected {
            break;
        }
    }
    if degrees.len() != expected {
        return Err(Error::Internal(format!(
            "expected {expected} minimal solutions, found {}",
            degrees.len()
        )));
    }
    Ok(degrees)
}

fn kernel_splitting_with(pencil: &SheafPencil, ranks: &PencilRanks) -> Result<SplittingType> {
    let ker_rank = pencil.cols() - ranks.generic_rank;
    if ker_rank == 0 {
        return Ok(SplittingType::empty());
    }
    let tmax = 4 * pencil.quat_dim() + 3;
    let dims = toeplitz_kernel_dims(&pencil.n0, &pencil.n1, tmax.max(2), ker_rank);
    let minimal = minimal_degrees_from_dims(&dims, ker_rank)?;
    Ok(SplittingType::new(
        minimal.iter().map(|&d| -1 - (d as i64)).collect(),
    ))
}

/// Splitting type of the kernel sheaf (a vector bundle for every pair):
/// degrees of its line-bundle summands, each ≤ −1. When the pencil is
/// fibrewise surjective the degrees sum to −2k.
pub fn kernel_splitting(pencil: &SheafPencil) -> Result<SplittingType> {
    let ranks = pencil_ranks(pencil);
    kernel_splitting_with(pencil, &ranks)
}

fn cokernel_splitting_with(pencil: &SheafPencil, ranks: &PencilRanks) -> Result<SplittingType> {
    let coker_rank = pencil.rows() - ranks.generic_rank;
    if coker_rank == 0 {
        return Ok(SplittingType::empty());
    }
    // the dual of the cokernel is the kernel sheaf of the transposed pencil
    let t = pencil.transpose();
    let tmax = 4 * pencil.quat_dim() + 3;
    let dims = toeplitz_kernel_dims(&t.n0, &t.n1, tmax.max(2), coker_rank);
    let minimal = minimal_degrees_from_dims(&dims, coker_rank)?;
    Ok(SplittingType::new(
        minimal.iter().map(|&d| d as i64).collect(),
    ))
}

fn torsion_strings(ranks: &PencilRanks, pencil: &SheafPencil) -> Vec<String> {
    let mut out: Vec<String> = ranks
        .finite_factors
        .iter()
        .map(|f| f.to_string())
        .collect();
    for order in infinity_orders(pencil) {
        out.push(format!("inf^{order}"));
    }
    out
}

/// Splitting type of the cokernel sheaf. Requires the pencil to be
/// fibrewise injective over the whole sphere; otherwise the cokernel has
/// torsion and the offending elementary divisors are reported.
pub fn cokernel_splitting(pencil: &SheafPencil) -> Result<SplittingType> {
    let ranks = pencil_ranks(pencil);
    if !ranks.full_rank_everywhere(pencil.cols()) {
        return Err(Error::TorsionDetected {
            factors: torsion_strings(&ranks, pencil),
        });
    }
    let split = cokernel_splitting_with(pencil, &ranks)?;
    if split.degree_sum() != 2 * pencil.quat_dim() as i64 {
        return Err(Error::Internal(format!(
            "cokernel degree checksum: {} ≠ {}",
            split.degree_sum(),
            2 * pencil.quat_dim()
        )));
    }
    Ok(split)
}

/// Cokernel part of a sheaf report: a bundle splitting when the pencil has
/// constant rank, otherwise the detected elementary divisors.
#[derive(Clone, PartialEq, Debug)]
pub enum CokernelPart {
    Bundle(SplittingType),
    Torsion(Vec<String>),
}

impl CokernelPart {
    pub fn is_empty_bundle(&self) -> bool {
        matches!(self, CokernelPart::Bundle(s) if s.is_empty())
    }

    pub fn splitting(&self) -> Option<&SplittingType> {
        match self {
            CokernelPart::Bundle(s) => Some(s),
            CokernelPart::Torsion(_) => None,
        }
    }
}

/// Full exact analysis of a pair: the CR / co-CR flags and the splitting
/// types of both halves of its sheaf.
#[derive(Clone, PartialEq, Debug)]
pub struct SheafReport {
    pub is_cr: bool,
    pub is_co_cr: bool,
    pub minus: SplittingType,
    pub plus: CokernelPart,
}

pub fn analyze_pair(p: &Pair) -> Result<SheafReport> {
    analyze_pair_sampled(p, DEFAULT_SAMPLES)
}

pub fn analyze_pair_sampled(p: &Pair, samples: usize) -> Result<SheafReport> {
    let pencil = sheaf_pencil(p);
    let ranks = pencil_ranks(&pencil);
    let is_cr = ranks.full_rank_everywhere(pencil.rows());
    let is_co_cr = ranks.full_rank_everywhere(pencil.cols());
    cross_oracle(p, is_cr, is_co_cr, samples);
    let minus = kernel_splitting_with(&pencil, &ranks)?;
    let plus = if ranks.constant_rank() {
        CokernelPart::Bundle(cokernel_splitting_with(&pencil, &ranks)?)
    } else {
        CokernelPart::Torsion(torsion_strings(&ranks, &pencil))
    };
    debug_assert_eq!(is_cr, plus.is_empty_bundle());
    // an isolated rank drop can leave the kernel sheaf zero without the
    // pair being co-CR, so emptiness alone is not equivalent
    debug_assert_eq!(
        is_co_cr,
        minus.is_empty() && matches!(plus, CokernelPart::Bundle(_))
    );
    Ok(SheafReport {
        is_cr,
        is_co_cr,
        minus,
        plus,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::sample_charts;
    use crate::scalar::{rat_int, Rational};
    use crate::subspace::Subspace;
    use num_traits::One;

    fn standard_pair(k: usize, rows: Vec<Vec<Rational>>) -> Pair {
        let s = HypercomplexStructure::standard(k).unwrap();
        let sub = if rows.is_empty() {
            Subspace::zero(4 * k)
        } else {
            Subspace::span(4 * k, &Matrix::from_rows(rows))
        };
        Pair::new(s, sub).unwrap()
    }

    fn span_i_in_h() -> Pair {
        // span{i} ⊆ ℍ
        standard_pair(1, vec![vec![rat_int(0), rat_int(1), rat_int(0), rat_int(0)]])
    }

    #[test]
    fn frame_k1_at_zero_spans_expected_eigenspace() {
        let s = HypercomplexStructure::standard(1).unwrap();
        let frame = antiholomorphic_frame(&s);
        assert_eq!(frame.m0.cols(), 2);
        // eigenspace of left multiplication by i: span{e0 + i·e1, e2 + i·e3}
        let expect = Subspace::span(
            4,
            &Matrix::from_rows(vec![
                vec![
                    GaussianRational::one(),
                    GaussianRational::i(),
                    GaussianRational::zero(),
                    GaussianRational::zero(),
                ],
                vec![
                    GaussianRational::zero(),
                    GaussianRational::zero(),
                    GaussianRational::one(),
                    GaussianRational::i(),
                ],
            ]),
        );
        let got = Subspace::span(4, &frame.m0.transpose());
        assert_eq!(got, expect);
    }

    #[test]
    fn frame_k1_at_one_spans_j_eigenspace() {
        let s = HypercomplexStructure::standard(1).unwrap();
        let frame = antiholomorphic_frame(&s);
        let chart = SphereChart::Finite(GaussianRational::one());
        assert!(frame_eigen_identity(&s, &frame, &chart));
        // explicit membership: 1 + i·j and i − i·k lie in the span of M(1)
        let m = frame.evaluate(&chart);
        let span = Subspace::span(4, &m.transpose());
        let v1 = vec![
            GaussianRational::one(),
            GaussianRational::zero(),
            GaussianRational::i(),
            GaussianRational::zero(),
        ];
        let v2 = vec![
            GaussianRational::zero(),
            GaussianRational::one(),
            GaussianRational::zero(),
            -GaussianRational::i(),
        ];
        assert!(span.contains(&v1));
        assert!(span.contains(&v2));
    }

    #[test]
    fn frame_full_rank_at_samples() {
        for k in [1usize, 2] {
            let s = HypercomplexStructure::standard(k).unwrap();
            let frame = antiholomorphic_frame(&s);
            for chart in sample_charts(25, ORACLE_SEED) {
                assert!(frame_eigen_identity(&s, &frame, &chart));
                assert_eq!(frame.evaluate(&chart).rank(), 2 * k);
            }
        }
    }

    #[test]
    fn pencil_of_full_subspace_is_empty() {
        let s = HypercomplexStructure::standard(1).unwrap();
        let p = Pair::new(s, Subspace::full(4)).unwrap();
        let pencil = sheaf_pencil(&p);
        assert_eq!(pencil.rows(), 0);
        assert_eq!(pencil.cols(), 2);
    }

    #[test]
    fn pencil_of_zero_subspace_is_frame() {
        let s = HypercomplexStructure::standard(1).unwrap();
        let frame = antiholomorphic_frame(&s);
        let p = Pair::new(s, Subspace::zero(4)).unwrap();
        let pencil = sheaf_pencil(&p);
        // quotient map of the zero subspace is a basis of the full dual;
        // with the canonical (identity) basis N = M exactly
        assert_eq!(pencil.n0, frame.m0);
        assert_eq!(pencil.n1, frame.m1);
    }

    #[test]
    fn v1_model_is_cocr_not_cr() {
        let p = span_i_in_h();
        assert!(is_co_cr_pair(&p));
        assert!(!is_cr_pair(&p));
        let pencil = sheaf_pencil(&p);
        // fibrewise injective: kernel trivial at samples
        for chart in sample_charts(10, 3) {
            assert_eq!(pencil.evaluate(&chart).rank(), 2);
        }
    }

    #[test]
    fn full_pair_is_cr_zero_pair_is_cocr() {
        let s = HypercomplexStructure::standard(1).unwrap();
        let full = Pair::new(s.clone(), Subspace::full(4)).unwrap();
        assert!(is_cr_pair(&full));
        assert!(!is_co_cr_pair(&full));
        let zero = Pair::new(s, Subspace::zero(4)).unwrap();
        assert!(is_co_cr_pair(&zero));
        assert!(!is_cr_pair(&zero));
    }

    #[test]
    fn kernel_splitting_of_zero_pencil() {
        // pair (ℍ, ℍ): zero pencil with two columns, kernel ≅ 2·O(−1)
        let s = HypercomplexStructure::standard(1).unwrap();
        let p = Pair::new(s, Subspace::full(4)).unwrap();
        let pencil = sheaf_pencil(&p);
        let split = kernel_splitting(&pencil).unwrap();
        assert_eq!(split.degrees(), &[-1, -1]);
    }

    #[test]
    fn dual_of_v1_has_kernel_o_minus_2() {
        let p = span_i_in_h().dual();
        let pencil = sheaf_pencil(&p);
        let split = kernel_splitting(&pencil).unwrap();
        assert_eq!(split.degrees(), &[-2]);
        assert!(is_cr_pair(&p));
    }

    #[test]
    fn cokernel_of_v1_is_o2() {
        let p = span_i_in_h();
        let pencil = sheaf_pencil(&p);
        let split = cokernel_splitting(&pencil).unwrap();
        assert_eq!(split.degrees(), &[2]);
    }

    #[test]
    fn cokernel_of_zero_pair_is_o1_o1() {
        let s = HypercomplexStructure::standard(1).unwrap();
        let p = Pair::new(s, Subspace::zero(4)).unwrap();
        let pencil = sheaf_pencil(&p);
        let split = cokernel_splitting(&pencil).unwrap();
        assert_eq!(split.degrees(), &[1, 1]);
    }

    #[test]
    fn analyze_full_pair_k2() {
        let s = HypercomplexStructure::standard(2).unwrap();
        let p = Pair::new(s, Subspace::full(8)).unwrap();
        let report = analyze_pair(&p).unwrap();
        assert!(report.is_cr);
        assert!(!report.is_co_cr);
        assert_eq!(report.minus.degrees(), &[-1, -1, -1, -1]);
        assert!(report.plus.is_empty_bundle());
    }

    #[test]
    fn degenerate_pair_detects_torsion() {
        // span of the real and imaginary parts of one antiholomorphic
        // eigenvector at ζ = 0: the pencil drops rank there only
        let s = HypercomplexStructure::standard(1).unwrap();
        let sub = Subspace::span(
            4,
            &Matrix::from_rows(vec![
                vec![rat_int(1), rat_int(0), rat_int(0), rat_int(0)],
                vec![rat_int(0), rat_int(1), rat_int(0), rat_int(0)],
            ]),
        );
        let p = Pair::new(s, sub).unwrap();
        let report = analyze_pair(&p).unwrap();
        assert!(!report.is_cr);
        assert!(!report.is_co_cr);
        match &report.plus {
            CokernelPart::Torsion(factors) => assert!(!factors.is_empty()),
            CokernelPart::Bundle(_) => panic!("expected torsion"),
        }
        let pencil = sheaf_pencil(&p);
        assert!(matches!(
            cokernel_splitting(&pencil),
            Err(Error::TorsionDetected { .. })
        ));
    }

    #[test]
    fn zero_dimensional_pair_is_both() {
        let p = Pair::new(HypercomplexStructure::trivial(), Subspace::zero(0)).unwrap();
        let report = analyze_pair(&p).unwrap();
        assert!(report.is_cr);
        assert!(report.is_co_cr);
        assert!(report.minus.is_empty());
        assert!(report.plus.is_empty_bundle());
    }

    #[test]
    fn report_invariant_under_automorphism() {
        let p = span_i_in_h();
        let base = analyze_pair(&p).unwrap();
        for seed in 0..3u64 {
            let auto = crate::structures::random_automorphism(p.structure(), seed).unwrap();
            let q = p.transform(&auto.matrix).unwrap();
            assert_eq!(analyze_pair(&q).unwrap(), base);
        }
    }

    #[test]
    fn report_invariant_under_representative_rotation() {
        let p = span_i_in_h();
        let base = analyze_pair(&p).unwrap();
        let q = crate::scalar::Quaternion::new(rat(1, 2), rat(1, 2), rat(1, 2), rat(1, 2));
        let rot = crate::structures::rotation_matrix(&q);
        let rotated = p.rotate_representative(&rot).unwrap();
        assert_eq!(analyze_pair(&rotated).unwrap(), base);
    }
}
