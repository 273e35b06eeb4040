//! Model pairs, dual pairs, direct sums, and the classification of (co-)CR
//! pairs into model factors by their splitting types.
//!
//! The two families of irreducible co-CR models are `model_v(k)` with
//! cokernel O(2k) and `model_vp(k)` with cokernel 2·O(2k+1); their duals
//! give the CR side. Every (co-)CR pair decomposes as a product of these,
//! uniquely up to order, so the degree multiset is a complete invariant and
//! classification is multiset arithmetic.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::pencil::{analyze_pair, CokernelPart, Pair, SheafReport};
use crate::scalar::{rat_int, Quaternion, Rational};
use crate::structures::HypercomplexStructure;
use crate::subspace::Subspace;
use crate::QSubspace;

/// One irreducible factor of a decomposition. `CoV(k)`/`CoVp(k)` are the
/// co-CR models with cokernel O(2k) and 2·O(2k+1); `CrV`/`CrVp` are their
/// dual CR models with kernel O(−2k) and 2·O(−2k−1).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum FactorSpec {
    CoV(u32),
    CoVp(u32),
    CrV(u32),
    CrVp(u32),
}

impl FactorSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            FactorSpec::CoV(k) | FactorSpec::CrV(k) if *k == 0 => Err(Error::InvalidArgument(
                "V-type factors need k >= 1".into(),
            )),
            _ => Ok(()),
        }
    }

    pub fn is_cocr(&self) -> bool {
        matches!(self, FactorSpec::CoV(_) | FactorSpec::CoVp(_))
    }

    /// The dual factor (CR ↔ co-CR).
    pub fn dual(&self) -> Self {
        match *self {
            FactorSpec::CoV(k) => FactorSpec::CrV(k),
            FactorSpec::CoVp(k) => FactorSpec::CrVp(k),
            FactorSpec::CrV(k) => FactorSpec::CoV(k),
            FactorSpec::CrVp(k) => FactorSpec::CoVp(k),
        }
    }

    /// Quaternionic dimension of the carrier space of the factor.
    pub fn quat_dim(&self) -> usize {
        match *self {
            FactorSpec::CoV(k) | FactorSpec::CrV(k) => k as usize,
            FactorSpec::CoVp(k) | FactorSpec::CrVp(k) => 2 * k as usize + 1,
        }
    }

    /// Build the model pair for this factor.
    pub fn build(&self) -> Result<Pair> {
        match *self {
            FactorSpec::CoV(k) => model_v(k as usize),
            FactorSpec::CoVp(k) => model_vp(k as usize),
            FactorSpec::CrV(k) => Ok(model_v(k as usize)?.dual()),
            FactorSpec::CrVp(k) => Ok(model_vp(k as usize)?.dual()),
        }
    }
}

impl std::fmt::Display for FactorSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FactorSpec::CoV(k) => write!(f, "CoV:{k}"),
            FactorSpec::CoVp(k) => write!(f, "CoVp:{k}"),
            FactorSpec::CrV(k) => write!(f, "CrV:{k}"),
            FactorSpec::CrVp(k) => write!(f, "CrVp:{k}"),
        }
    }
}

/// Multiset of factors, canonically sorted. All factors are of one kind
/// (CR or co-CR); mixed products are not (co-)CR pairs of a single kind.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Decomposition {
    factors: Vec<FactorSpec>,
}

impl Decomposition {
    pub fn new(mut factors: Vec<FactorSpec>) -> Result<Self> {
        for f in &factors {
            f.validate()?;
        }
        let cocr = factors.iter().filter(|f| f.is_cocr()).count();
        if cocr != 0 && cocr != factors.len() {
            return Err(Error::InvalidArgument(
                "decomposition mixes CR and co-CR factors".into(),
            ));
        }
        factors.sort_unstable();
        Ok(Self { factors })
    }

    pub fn factors(&self) -> &[FactorSpec] {
        &self.factors
    }
}

impl std::fmt::Display for Decomposition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Quaternion-valued coordinate slots, flattened to real coordinates in
/// the per-coordinate basis (1, i, j, k).
fn vector_from_slots(slots: &[Quaternion]) -> Vec<Rational> {
    slots
        .iter()
        .flat_map(|q| q.coords().into_iter())
        .collect()
}

/// Basis of the first co-CR model family: the subspace of ℍ^k cut out by
/// the alternating complex-coordinate pattern with the final reality
/// constraint. Parameters are complex z₁…z_k; slot 1 = z₁,
/// slot 2m = z̄_{2m−1} + z_{2m}·j, slot 2m+1 = z_{2m+1} − z̄_{2m}·j,
/// the last parameter being real for even k and imaginary for odd k.
/// dim = 2k − 1 and the cokernel splits as O(2k).
pub fn model_v(k: usize) -> Result<Pair> {
    if k == 0 {
        return Err(Error::InvalidArgument("model_v needs k >= 1".into()));
    }
    let structure = HypercomplexStructure::standard(k)?;
    let rows = pattern_basis(k, k, Constraint::Reality)?;
    let subspace = Subspace::span(4 * k, &Matrix::from_rows(rows));
    debug_assert_eq!(subspace.dim(), 2 * k - 1);
    Pair::new(structure, subspace)
}

/// Basis of the second co-CR model family inside ℍ^{2k+1}: same pattern
/// with 2k free complex parameters and the extra trailing slot −z̄_{2k}·j.
/// dim = 4k and the cokernel splits as 2·O(2k+1). For k = 0 this is the
/// zero subspace of ℍ.
pub fn model_vp(k: usize) -> Result<Pair> {
    let slots = 2 * k + 1;
    let structure = HypercomplexStructure::standard(slots)?;
    if k == 0 {
        return Pair::new(structure, Subspace::zero(4));
    }
    let rows = pattern_basis(slots, 2 * k, Constraint::TrailingJ)?;
    let subspace = Subspace::span(4 * slots, &Matrix::from_rows(rows));
    debug_assert_eq!(subspace.dim(), 4 * k);
    Pair::new(structure, subspace)
}

enum Constraint {
    /// z̄_k = (−1)^k z_k on the last parameter.
    Reality,
    /// extra slot −z̄_{last}·j appended after the pattern.
    TrailingJ,
}

/// Rows spanning the pattern subspace: one row per free real parameter.
fn pattern_basis(
    slots: usize,
    params: usize,
    constraint: Constraint,
) -> Result<Vec<Vec<Rational>>> {
    // slot contents as ℝ-linear expressions in (x_p, y_p), z_p = x_p + i y_p:
    //   slot 1      = z₁
    //   slot 2m     = z̄_{2m−1} + z_{2m}·j
    //   slot 2m+1   = z_{2m+1} − z̄_{2m}·j
    // and for TrailingJ an extra slot −z̄_{params}·j.
    let slot_of = |p: usize, re: bool| -> Vec<Quaternion> {
        // contribution of the parameter basis vector (x_p = 1 or y_p = 1)
        let mut out = vec![Quaternion::zero(); slots];
        let unit = |w: i64, x: i64, y: i64, z: i64| Quaternion::from_ints(w, x, y, z);
        for (idx, out_slot) in out.iter_mut().enumerate() {
            let slot = idx + 1;
            let q = if slot == 1 {
                if p == 1 {
                    // z₁
                    if re {
                        unit(1, 0, 0, 0)
                    } else {
                        unit(0, 1, 0, 0)
                    }
                } else {
                    continue;
                }
            } else if slot % 2 == 0 {
                let m = slot / 2;
                if p == 2 * m - 1 {
                    // z̄_{2m−1}
                    if re {
                        unit(1, 0, 0, 0)
                    } else {
                        unit(0, -1, 0, 0)
                    }
                } else if p == 2 * m {
                    // z_{2m}·j
                    if re {
                        unit(0, 0, 1, 0)
                    } else {
                        unit(0, 0, 0, 1)
                    }
                } else {
                    continue;
                }
            } else {
                let m = (slot - 1) / 2;
                if p == 2 * m + 1 {
                    // z_{2m+1}
                    if re {
                        unit(1, 0, 0, 0)
                    } else {
                        unit(0, 1, 0, 0)
                    }
                } else if p == 2 * m {
                    // −z̄_{2m}·j = −(x − iy)j = −x·j + y·(ij) … ij = k
                    if re {
                        unit(0, 0, -1, 0)
                    } else {
                        unit(0, 0, 0, 1)
                    }
                } else {
                    continue;
                }
            };
            *out_slot = q;
        }
        out
    };

    let mut rows = Vec::new();
    for p in 1..=params {
        let last = p == params;
        let (use_re, use_im) = match constraint {
            Constraint::Reality if last => {
                // z̄_k = (−1)^k z_k: k even keeps the real part, k odd the
                // imaginary part
                if params % 2 == 0 {
                    (true, false)
                } else {
                    (false, true)
                }
            }
            _ => (true, true),
        };
        let mut push = |re: bool| {
            let mut slots_v = slot_of(p, re);
            if let Constraint::TrailingJ = constraint {
                if p == params {
                    // extra slot −z̄_{params}·j
                    let q = if re {
                        Quaternion::from_ints(0, 0, -1, 0)
                    } else {
                        Quaternion::from_ints(0, 0, 0, 1)
                    };
                    *slots_v.last_mut().unwrap() = q;
                }
            }
            rows.push(vector_from_slots(&slots_v));
        };
        if use_re {
            push(true);
        }
        if use_im {
            push(false);
        }
    }
    Ok(rows)
}

/// Direct sum of two pairs: block-diagonal structures, stacked subspaces.
pub fn direct_sum(p: &Pair, q: &Pair) -> Pair {
    let structure = p.structure().direct_sum(q.structure());
    let (dp, dq) = (p.structure().dim(), q.structure().dim());
    let pad_left = |b: &Matrix<Rational>| -> Matrix<Rational> {
        b.hstack(&Matrix::zero(b.rows(), dq))
    };
    let pad_right = |b: &Matrix<Rational>| -> Matrix<Rational> {
        Matrix::zero(b.rows(), dp).hstack(b)
    };
    let gens = pad_left(p.subspace().basis()).vstack(&pad_right(q.subspace().basis()));
    let subspace = Subspace::span(dp + dq, &gens);
    Pair::new(structure, subspace).expect("direct sum dimensions consistent")
}

/// The dual pair (annihilator inside the dual structure).
pub fn dual_pair(p: &Pair) -> Pair {
    p.dual()
}

/// Classify a (co-)CR pair into model factors from the degree multiset of
/// its sheaf: each even cokernel degree 2k gives a `CoV(k)`, odd degrees
/// pair up into `CoVp` factors; the CR side runs on negated kernel degrees.
pub fn classify(p: &Pair) -> Result<Decomposition> {
    classify_report(&analyze_pair(p)?)
}

pub fn classify_report(report: &SheafReport) -> Result<Decomposition> {
    if report.is_co_cr {
        let plus = report
            .plus
            .splitting()
            .ok_or_else(|| Error::Internal("co-CR pair with torsion marker".into()))?;
        let tags = degrees_to_factors(plus.degrees(), false)?;
        Decomposition::new(tags)
    } else if report.is_cr {
        let negated = report.minus.negated();
        let tags = degrees_to_factors(negated.degrees(), true)?;
        Decomposition::new(tags)
    } else {
        Err(Error::NotClassifiable(format!(
            "minus = {}, plus = {}",
            report.minus,
            match &report.plus {
                CokernelPart::Bundle(s) => s.to_string(),
                CokernelPart::Torsion(t) => format!("torsion{t:?}"),
            }
        )))
    }
}

fn degrees_to_factors(degrees: &[i64], cr: bool) -> Result<Vec<FactorSpec>> {
    let mut factors = Vec::new();
    let mut odd_pending: Option<i64> = None;
    // degrees arrive sorted, so equal odd degrees are adjacent
    for &d in degrees {
        if d <= 0 {
            return Err(Error::DegreeLaw(format!("degree {d} is not positive")));
        }
        if d % 2 == 0 {
            if odd_pending.is_some() {
                break; // unpaired odd degree, reported below
            }
            let k = (d / 2) as u32;
            factors.push(if cr { FactorSpec::CrV(k) } else { FactorSpec::CoV(k) });
        } else {
            match odd_pending.take() {
                None => odd_pending = Some(d),
                Some(prev) if prev == d => {
                    let k = ((d - 1) / 2) as u32;
                    factors.push(if cr { FactorSpec::CrVp(k) } else { FactorSpec::CoVp(k) });
                }
                Some(_) => break,
            }
        }
    }
    if odd_pending.is_some() {
        return Err(Error::DegreeLaw(format!(
            "odd degrees do not pair up in {degrees:?}"
        )));
    }
    Ok(factors)
}

/// Model f-quaternionic triple on ℍ^{l+m}: U = (Im ℍ)^l × ℍ^m,
/// V = the real axes of the first l coordinates.
pub fn model_f_triple(l: usize, m: usize) -> Result<crate::ftriple::FQuatTriple> {
    if l + m == 0 {
        return Err(Error::InvalidArgument(
            "model f-triple needs l + m >= 1".into(),
        ));
    }
    let n = l + m;
    let structure = HypercomplexStructure::standard(n)?;
    let dim = 4 * n;
    let mut u_rows: Vec<Vec<Rational>> = Vec::new();
    let mut v_rows: Vec<Vec<Rational>> = Vec::new();
    let unit_row = |idx: usize| -> Vec<Rational> {
        let mut v = vec![Rational::zero(); dim];
        v[idx] = rat_int(1);
        v
    };
    for coord in 0..n {
        if coord < l {
            for axis in 1..4 {
                u_rows.push(unit_row(4 * coord + axis));
            }
            v_rows.push(unit_row(4 * coord));
        } else {
            for axis in 0..4 {
                u_rows.push(unit_row(4 * coord + axis));
            }
        }
    }
    let u = QSubspace::span(dim, &Matrix::from_rows(u_rows));
    let v = if v_rows.is_empty() {
        Subspace::zero(dim)
    } else {
        QSubspace::span(dim, &Matrix::from_rows(v_rows))
    };
    crate::ftriple::FQuatTriple::new(structure, u, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pencil::{cokernel_splitting, is_co_cr_pair, kernel_splitting, sheaf_pencil};

    #[test]
    fn model_v1_is_span_i() {
        let p = model_v(1).unwrap();
        assert_eq!(p.subspace().dim(), 1);
        assert!(p
            .subspace()
            .contains(&[rat_int(0), rat_int(1), rat_int(0), rat_int(0)]));
        let split = cokernel_splitting(&sheaf_pencil(&p)).unwrap();
        assert_eq!(split.degrees(), &[2]);
    }

    #[test]
    fn model_v2_has_splitting_4() {
        let p = model_v(2).unwrap();
        assert_eq!(p.subspace().dim(), 3);
        assert!(is_co_cr_pair(&p));
        let split = cokernel_splitting(&sheaf_pencil(&p)).unwrap();
        assert_eq!(split.degrees(), &[4]);
    }

    #[test]
    fn model_vp0_is_zero_in_h() {
        let p = model_vp(0).unwrap();
        assert_eq!(p.subspace().dim(), 0);
        assert_eq!(p.structure().dim(), 4);
        let split = cokernel_splitting(&sheaf_pencil(&p)).unwrap();
        assert_eq!(split.degrees(), &[1, 1]);
    }

    #[test]
    fn model_vp1_has_splitting_3_3() {
        let p = model_vp(1).unwrap();
        assert_eq!(p.structure().dim(), 12);
        assert_eq!(p.subspace().dim(), 4);
        assert!(is_co_cr_pair(&p));
        let split = cokernel_splitting(&sheaf_pencil(&p)).unwrap();
        assert_eq!(split.degrees(), &[3, 3]);
    }

    #[test]
    fn dual_of_v1_classifies_as_crv1() {
        let d = dual_pair(&model_v(1).unwrap());
        let split = kernel_splitting(&sheaf_pencil(&d)).unwrap();
        assert_eq!(split.degrees(), &[-2]);
        let dec = classify(&d).unwrap();
        assert_eq!(dec.factors(), &[FactorSpec::CrV(1)]);
    }

    #[test]
    fn double_dual_reports_match() {
        let p = model_v(2).unwrap();
        let dd = dual_pair(&dual_pair(&p));
        assert_eq!(
            analyze_pair(&p).unwrap(),
            analyze_pair(&dd).unwrap()
        );
    }

    #[test]
    fn direct_sum_unions_splittings() {
        let v1 = model_v(1).unwrap();
        let sum = direct_sum(&v1, &model_v(1).unwrap());
        let split = cokernel_splitting(&sheaf_pencil(&sum)).unwrap();
        assert_eq!(split.degrees(), &[2, 2]);

        let mixed = direct_sum(&model_v(1).unwrap(), &model_vp(0).unwrap());
        let split = cokernel_splitting(&sheaf_pencil(&mixed)).unwrap();
        assert_eq!(split.degrees(), &[1, 1, 2]);
    }

    #[test]
    fn direct_sum_with_zero_pair_is_identity() {
        let p = model_v(1).unwrap();
        let zero = Pair::new(HypercomplexStructure::trivial(), Subspace::zero(0)).unwrap();
        let sum = direct_sum(&p, &zero);
        assert_eq!(analyze_pair(&sum).unwrap(), analyze_pair(&p).unwrap());
        let sum_left = direct_sum(&zero, &p);
        assert_eq!(analyze_pair(&sum_left).unwrap(), analyze_pair(&p).unwrap());
    }

    #[test]
    fn classify_models() {
        let dec = classify(&model_v(2).unwrap()).unwrap();
        assert_eq!(dec.factors(), &[FactorSpec::CoV(2)]);

        // (0, ℍ²) has splitting {1,1,1,1} → two CoVp(0)
        let zero2 = Pair::new(
            HypercomplexStructure::standard(2).unwrap(),
            Subspace::zero(8),
        )
        .unwrap();
        let dec = classify(&zero2).unwrap();
        assert_eq!(dec.factors(), &[FactorSpec::CoVp(0), FactorSpec::CoVp(0)]);
    }

    #[test]
    fn classify_rejects_non_cocr() {
        // span{1, i} in ℍ is neither CR nor co-CR
        let s = HypercomplexStructure::standard(1).unwrap();
        let sub = Subspace::span(
            4,
            &Matrix::from_rows(vec![
                vec![rat_int(1), rat_int(0), rat_int(0), rat_int(0)],
                vec![rat_int(0), rat_int(1), rat_int(0), rat_int(0)],
            ]),
        );
        let p = Pair::new(s, sub).unwrap();
        assert!(matches!(classify(&p), Err(Error::NotClassifiable(_))));
    }

    #[test]
    fn build_then_classify_round_trip() {
        let specs = vec![
            FactorSpec::CoV(1),
            FactorSpec::CoV(1),
            FactorSpec::CoVp(1),
        ];
        let mut pair = specs[0].build().unwrap();
        for spec in &specs[1..] {
            pair = direct_sum(&pair, &spec.build().unwrap());
        }
        let dec = classify(&pair).unwrap();
        assert_eq!(dec, Decomposition::new(specs).unwrap());
    }

    #[test]
    fn decomposition_rejects_mixed_kinds() {
        assert!(Decomposition::new(vec![FactorSpec::CoV(1), FactorSpec::CrV(1)]).is_err());
        assert!(Decomposition::new(vec![FactorSpec::CoV(0)]).is_err());
    }
}
