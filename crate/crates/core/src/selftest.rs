//! Seeded invariant suites over every module, runnable from the CLI.
//! Each check either passes or reports the invariant name together with a
//! reproducing seed. A negative control corrupts a multiplication table on
//! purpose and demands that the validator catches it.

use num_traits::{One, Zero};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::conjugation::{
    bonan_decomposition, cocr_from_subspace, cr_from_subspace, graph_subspace, quaternionify,
    recover_real_form, tau,
};
use crate::ftriple::{cocr_side, group_act, group_compose, group_matrix, rho, GroupElement};
use crate::matrix::Matrix;
use crate::models::{classify, direct_sum, model_f_triple, model_v, model_vp, FactorSpec};
use crate::pencil::{
    analyze_pair, antiholomorphic_frame, cokernel_splitting, frame_eigen_identity, sheaf_pencil,
    CokernelPart, Pair,
};
use crate::sample::{
    random_invertible, random_subspace, sample_charts, sample_imaginary_units, small_rational,
};
use crate::scalar::{FieldScalar, GaussianRational, Quaternion, Rational};
use crate::smith::smith_normal_form;
use crate::structures::{
    chart_to_sphere, is_quaternionic_map, random_automorphism, random_unit_quaternion,
    rotation_matrix, sphere_to_chart, standardize, HypercomplexStructure,
};
use crate::subspace::Subspace;
use crate::{CPoly, QMatrix};

#[derive(Clone, Debug)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct SelfTestSummary {
    pub seed: u64,
    pub suites: Vec<SuiteResult>,
}

impl SelfTestSummary {
    pub fn all_passed(&self) -> bool {
        self.suites.iter().all(|s| s.failed == 0)
    }

    pub fn total_passed(&self) -> usize {
        self.suites.iter().map(|s| s.passed).sum()
    }

    pub fn total_failed(&self) -> usize {
        self.suites.iter().map(|s| s.failed).sum()
    }
}

struct Suite {
    name: &'static str,
    passed: usize,
    failed: usize,
    failures: Vec<String>,
}

impl Suite {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            passed: 0,
            failed: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, invariant: &str, outcome: std::result::Result<(), String>) {
        match outcome {
            Ok(()) => self.passed += 1,
            Err(msg) => {
                self.failed += 1;
                self.failures.push(format!("{}: {invariant}: {msg}", self.name));
            }
        }
    }

    fn expect(&mut self, invariant: &str, cond: bool, repro: &str) {
        self.check(
            invariant,
            if cond {
                Ok(())
            } else {
                Err(format!("violated ({repro})"))
            },
        );
    }

    fn finish(self) -> SuiteResult {
        SuiteResult {
            name: self.name,
            passed: self.passed,
            failed: self.failed,
            failures: self.failures,
        }
    }
}

pub fn run_selftest(seed: u64) -> SelfTestSummary {
    let suites = vec![
        exact_algebra_suite(seed),
        structures_suite(seed),
        pencil_suite(seed),
        models_suite(seed),
        f_structures_suite(seed),
        conjugations_suite(seed),
        negative_control_suite(),
    ];
    SelfTestSummary { seed, suites }
}

fn random_gaussian(rng: &mut ChaCha8Rng) -> GaussianRational {
    GaussianRational::new(small_rational(rng), small_rational(rng))
}

fn random_quaternion(rng: &mut ChaCha8Rng) -> Quaternion {
    Quaternion::new(
        small_rational(rng),
        small_rational(rng),
        small_rational(rng),
        small_rational(rng),
    )
}

fn exact_algebra_suite(seed: u64) -> SuiteResult {
    let mut s = Suite::new("exact-algebra");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    for case in 0..20 {
        let (a, b, c) = (
            random_gaussian(&mut rng),
            random_gaussian(&mut rng),
            random_gaussian(&mut rng),
        );
        let distrib = a.clone() * (b.clone() + c.clone())
            == a.clone() * b.clone() + a.clone() * c.clone();
        s.expect("Q(i) distributivity", distrib, &format!("seed {seed} case {case}"));
        s.expect(
            "Q(i) conjugation involution",
            a.conj().conj() == a,
            &format!("seed {seed} case {case}"),
        );
        if !a.is_zero() {
            s.expect(
                "Q(i) multiplicative inverse",
                (a.clone() * a.inv()).is_one(),
                &format!("seed {seed} case {case}"),
            );
        }
    }

    for case in 0..100 {
        let (p, q, r) = (
            random_quaternion(&mut rng),
            random_quaternion(&mut rng),
            random_quaternion(&mut rng),
        );
        s.expect(
            "quaternion associativity",
            (p.clone() * q.clone()) * r.clone() == p.clone() * (q.clone() * r.clone()),
            &format!("seed {seed} case {case}"),
        );
    }
    {
        let (i, j, k) = (Quaternion::i(), Quaternion::j(), Quaternion::k());
        s.expect(
            "quaternion table",
            i.clone() * j.clone() == k
                && j.clone() * k.clone() == i
                && k.clone() * i.clone() == j,
            "multiplication table",
        );
    }

    for case in 0..10 {
        let m = Matrix::from_fn(4, 6, |_, _| small_rational(&mut rng));
        let once = m.rref();
        let twice = once.basis.rref();
        s.expect(
            "rref idempotence",
            once.basis == twice.basis && once.rank == twice.rank,
            &format!("seed {seed} case {case}"),
        );
        let a = Matrix::from_fn(4, 4, |_, _| small_rational(&mut rng));
        let b = Matrix::from_fn(4, 4, |_, _| small_rational(&mut rng));
        let prod_rank = (&a * &b).rank();
        s.expect(
            "rank(AB) ≤ min(rank A, rank B)",
            prod_rank <= a.rank().min(b.rank()),
            &format!("seed {seed} case {case}"),
        );
    }

    for case in 0..50 {
        let a = random_subspace(8, (case % 5) + 1, &mut rng);
        let b = random_subspace(8, (case % 4) + 2, &mut rng);
        let sum = a.sum(&b).unwrap();
        let meet = a.intersect(&b).unwrap();
        s.expect(
            "dim(a) + dim(b) = dim(a+b) + dim(a∩b)",
            a.dim() + b.dim() == sum.dim() + meet.dim(),
            &format!("seed {seed} case {case}"),
        );
        s.expect(
            "annihilator dimension",
            a.annihilator().dim() == 8 - a.dim(),
            &format!("seed {seed} case {case}"),
        );
    }

    for case in 0..3 {
        let d = Matrix::from_fn(3, 3, |r, c| {
            if r == c {
                CPoly::new(vec![random_gaussian(&mut rng), random_gaussian(&mut rng)])
            } else {
                CPoly::zero()
            }
        });
        let base = smith_normal_form(&d);
        let mut m = d.clone();
        // unimodular row/column operations must not change the factors
        for r in 0..3 {
            for c in 0..3 {
                if r != c {
                    let f = CPoly::new(vec![random_gaussian(&mut rng)]);
                    let add = m.row_vec(c).iter().map(|x| f.clone() * x.clone()).collect::<Vec<_>>();
                    for (idx, v) in add.into_iter().enumerate() {
                        let cur = m[(r, idx)].clone();
                        m[(r, idx)] = cur + v;
                    }
                }
            }
        }
        s.expect(
            "smith factors invariant under unimodular operations",
            smith_normal_form(&m) == base,
            &format!("seed {seed} case {case}"),
        );
    }

    s.finish()
}

fn structures_suite(seed: u64) -> SuiteResult {
    let mut s = Suite::new("quaternion-structures");
    let st = HypercomplexStructure::standard(2).unwrap();

    for (idx, chart) in sample_charts(15, seed).iter().enumerate() {
        let p = chart_to_sphere(chart);
        let op = st.admissible(&p);
        s.expect(
            "admissible operator squares to −Id",
            &op * &op == -&QMatrix::identity(8),
            &format!("seed {seed} chart {idx}"),
        );
        if !matches!(chart, crate::structures::SphereChart::Infinity) {
            s.expect(
                "chart round trip",
                &sphere_to_chart(&p) == chart,
                &format!("seed {seed} chart {idx}"),
            );
        }
        let dual_op = st.dual().admissible(&p);
        s.expect(
            "dual admissible = −transpose of primal",
            dual_op == -&op.transpose(),
            &format!("seed {seed} chart {idx}"),
        );
    }

    for case in 0..5u64 {
        let f = random_automorphism(&st, seed.wrapping_add(case)).unwrap();
        let g = random_automorphism(&st, seed.wrapping_add(100 + case)).unwrap();
        let composed = &f.matrix * &g.matrix;
        let rot = is_quaternionic_map(&composed, &st, &st);
        s.expect(
            "rotation functoriality",
            rot == Some(&f.rotation * &g.rotation),
            &format!("seed {seed} case {case}"),
        );
    }

    for k in 1..=3usize {
        let leftmul = HypercomplexStructure::standard(k).unwrap();
        let m = standardize(&leftmul).unwrap();
        s.expect(
            "standardize is a retraction",
            m.matrix == QMatrix::identity(4 * k),
            &format!("k = {k}"),
        );
    }
    s.finish()
}

fn pencil_suite(seed: u64) -> SuiteResult {
    let mut s = Suite::new("twistor-pencil");

    for k in 1..=3usize {
        let st = HypercomplexStructure::standard(k).unwrap();
        let frame = antiholomorphic_frame(&st);
        let mut ok = true;
        for chart in sample_charts(26, seed) {
            ok &= frame_eigen_identity(&st, &frame, &chart);
            ok &= frame.evaluate(&chart).rank() == 2 * k;
        }
        s.expect(
            "frame eigen identity and rank at samples",
            ok,
            &format!("k = {k} seed {seed}"),
        );
    }

    let v1 = model_v(1).unwrap();
    let report = analyze_pair(&v1).unwrap();
    s.expect(
        "model V₁ report",
        report.is_co_cr
            && !report.is_cr
            && report.plus.splitting().map(|p| p.degrees() == [2]) == Some(true),
        "model_v(1)",
    );

    let base_pair = direct_sum(&v1, &model_vp(0).unwrap());
    let base = analyze_pair(&base_pair).unwrap();
    s.expect(
        "direct sum unions splittings",
        base.plus.splitting().map(|p| p.degrees() == [1, 1, 2]) == Some(true),
        "V₁ ⊕ V′₀",
    );

    for case in 0..3u64 {
        let auto = random_automorphism(base_pair.structure(), seed.wrapping_add(case)).unwrap();
        let moved = base_pair.transform(&auto.matrix).unwrap();
        s.expect(
            "report invariant under automorphisms",
            analyze_pair(&moved).unwrap() == base,
            &format!("seed {seed} case {case}"),
        );
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for case in 0..3 {
        let q = random_unit_quaternion(&mut rng);
        let rot = rotation_matrix(&q);
        let moved = base_pair.rotate_representative(&rot).unwrap();
        s.expect(
            "report invariant under representative rotation",
            analyze_pair(&moved).unwrap() == base,
            &format!("seed {seed} case {case}"),
        );
    }

    // duality on models: flags swapped, degrees negated
    for pair in [model_v(2).unwrap(), model_vp(1).unwrap()] {
        let r = analyze_pair(&pair).unwrap();
        let rd = analyze_pair(&pair.dual()).unwrap();
        let plus_degrees = r.plus.splitting().unwrap().clone();
        s.expect(
            "duality swaps flags and negates degrees",
            rd.is_cr == r.is_co_cr
                && rd.is_co_cr == r.is_cr
                && rd.minus == plus_degrees.negated(),
            "model duals",
        );
    }

    // degree laws and checksum over a few generated co-CR pairs
    for (case, pair) in [
        model_v(1).unwrap(),
        model_v(2).unwrap(),
        model_vp(0).unwrap(),
        direct_sum(&model_v(1).unwrap(), &model_vp(0).unwrap()),
    ]
    .iter()
    .enumerate()
    {
        let split = cokernel_splitting(&sheaf_pencil(pair)).unwrap();
        let k = pair.structure().quat_dim() as i64;
        let odd_ok = {
            let mut counts = std::collections::HashMap::new();
            for &d in split.degrees() {
                if d % 2 != 0 {
                    *counts.entry(d).or_insert(0usize) += 1;
                }
            }
            counts.values().all(|c| c % 2 == 0)
        };
        s.expect(
            "co-CR degree laws and checksum",
            split.degree_sum() == 2 * k && split.degrees().iter().all(|&d| d >= 1) && odd_ok,
            &format!("case {case}"),
        );
    }

    // cross-oracle: pencil conclusions agree with direct rank evaluation
    let pencil = sheaf_pencil(&v1);
    let mut agree = true;
    for chart in sample_charts(50, seed) {
        agree &= pencil.evaluate(&chart).rank() == 2;
    }
    s.expect(
        "smith-based rank matches evaluation at 50 charts",
        agree,
        &format!("seed {seed}"),
    );

    s.finish()
}

fn models_suite(seed: u64) -> SuiteResult {
    let mut s = Suite::new("models-classification");

    for k in 1..=4usize {
        s.expect(
            "dim model_v(k) = 2k − 1",
            model_v(k).unwrap().subspace().dim() == 2 * k - 1,
            &format!("k = {k}"),
        );
    }
    for k in 0..=3usize {
        s.expect(
            "dim model_vp(k) = 4k",
            model_vp(k).unwrap().subspace().dim() == 4 * k,
            &format!("k = {k}"),
        );
    }

    let cases: Vec<Vec<FactorSpec>> = vec![
        vec![FactorSpec::CoV(1)],
        vec![FactorSpec::CoV(1), FactorSpec::CoVp(0)],
        vec![FactorSpec::CoV(2), FactorSpec::CoV(1)],
    ];
    for (case, specs) in cases.iter().enumerate() {
        let mut pair = specs[0].build().unwrap();
        for f in &specs[1..] {
            pair = direct_sum(&pair, &f.build().unwrap());
        }
        let auto =
            random_automorphism(pair.structure(), seed.wrapping_add(case as u64)).unwrap();
        let moved = pair.transform(&auto.matrix).unwrap();
        let dec = classify(&moved);
        let expected = crate::models::Decomposition::new(specs.clone()).unwrap();
        s.expect(
            "classify recovers the factor multiset",
            dec.map(|d| d == expected).unwrap_or(false),
            &format!("seed {seed} case {case}"),
        );
        let dual_dec = classify(&moved.dual());
        let expected_dual = crate::models::Decomposition::new(
            specs.iter().map(FactorSpec::dual).collect(),
        )
        .unwrap();
        s.expect(
            "classify of the dual gives dual tags",
            dual_dec.map(|d| d == expected_dual).unwrap_or(false),
            &format!("seed {seed} case {case}"),
        );
    }
    s.finish()
}

fn f_structures_suite(seed: u64) -> SuiteResult {
    let mut s = Suite::new("f-structures");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let t = model_f_triple(1, 1).unwrap();
    for case in 0..10 {
        let g = random_group_element(1, 1, &mut rng);
        let mat = group_matrix(&g);
        let rot = is_quaternionic_map(&mat, t.structure(), t.structure());
        s.expect(
            "group element acts quaternionically with rotation ρ(q)",
            rot == Some(rho(&g)),
            &format!("seed {seed} case {case}"),
        );
        s.expect(
            "group action preserves U and V",
            t.u().image(&mat).is_subspace_of(t.u()) && t.v().image(&mat).is_subspace_of(t.v()),
            &format!("seed {seed} case {case}"),
        );
    }
    for case in 0..10 {
        let g = random_group_element(2, 1, &mut rng);
        let h = random_group_element(2, 1, &mut rng);
        let gh = group_compose(&g, &h).unwrap();
        s.expect(
            "composition homomorphism",
            group_matrix(&gh) == &group_matrix(&g) * &group_matrix(&h)
                && rho(&gh) == &rho(&g) * &rho(&h),
            &format!("seed {seed} case {case}"),
        );
        // action on points matches the matrix
        let x: Vec<Quaternion> = (0..3)
            .map(|i| {
                let mut q = random_quaternion(&mut rng);
                if i < 2 {
                    q.w = Rational::zero();
                }
                q
            })
            .collect();
        let acted = group_act(&gh, &x).unwrap();
        let via_matrix = {
            let coords: Vec<Rational> = x.iter().flat_map(|q| q.coords()).collect();
            let y = group_matrix(&gh).apply(&coords);
            y.chunks(4).map(Quaternion::from_coords).collect::<Vec<_>>()
        };
        s.expect(
            "point action matches induced matrix",
            acted == via_matrix,
            &format!("seed {seed} case {case}"),
        );
    }

    let co = cocr_side(&model_f_triple(1, 0).unwrap());
    let split = cokernel_splitting(&sheaf_pencil(&co)).unwrap();
    s.expect("cocr side of (1,0) splits as {2}", split.degrees() == [2], "model");

    let conf = crate::ftriple::conformal_3d(&QMatrix::identity(3), &QMatrix::identity(3));
    s.expect(
        "conformal 3d standard frame gives the model triple",
        conf.map(|c| &c == &model_f_triple(1, 0).unwrap()).unwrap_or(false),
        "standard frame",
    );
    s.finish()
}

fn random_group_element(l: usize, m: usize, rng: &mut ChaCha8Rng) -> GroupElement {
    let a = random_invertible(l, rng);
    let q = random_unit_quaternion(rng);
    let b = loop {
        let cand = Matrix::<Quaternion>::from_fn(m, m, |_, _| random_quaternion(rng));
        if m == 0 || cand.inverse().is_some() {
            break cand;
        }
    };
    GroupElement::new(a, q, b).unwrap()
}

fn conjugations_suite(seed: u64) -> SuiteResult {
    let mut s = Suite::new("conjugations");

    for (idx, q) in sample_imaginary_units(10, seed).iter().enumerate() {
        let t = tau(q, 2).unwrap();
        s.expect(
            "tau squared is the identity",
            &t.matrix * &t.matrix == QMatrix::identity(8),
            &format!("seed {seed} sample {idx}"),
        );
    }

    let st = HypercomplexStructure::standard(1).unwrap();
    s.expect(
        "bonan decomposition verifies",
        bonan_decomposition(&st, seed, 10).is_ok(),
        &format!("seed {seed}"),
    );

    for n in 1..=2usize {
        let quat = quaternionify(n).unwrap();
        let ti = tau(&Quaternion::i(), n).unwrap();
        let tj = tau(&Quaternion::j(), n).unwrap();
        let rec = recover_real_form(quat.structure(), &ti.matrix, &tj.matrix);
        s.expect(
            "real form recovery on the base case",
            rec.map(|r| r.subspace.dim() == n && r.iso == QMatrix::identity(4 * n))
                .unwrap_or(false),
            &format!("n = {n}"),
        );
    }

    let b = graph_subspace(&st);
    s.expect(
        "co-CR pipeline certifies",
        cocr_from_subspace(&b, seed).is_ok(),
        &format!("seed {seed}"),
    );
    let c = crate::conjugation::cosum_subspace(&b).unwrap();
    s.expect(
        "CR pipeline certifies",
        cr_from_subspace(&c, seed).is_ok(),
        &format!("seed {seed}"),
    );
    s.finish()
}

/// Deliberately corrupt inputs; the validators must reject them. A silent
/// pass here means an invariant checker has gone dead.
fn negative_control_suite() -> SuiteResult {
    let mut s = Suite::new("negative-control");

    let st = HypercomplexStructure::standard(1).unwrap();
    let corrupted = HypercomplexStructure::new(
        st.i_op().clone(),
        st.j_op().clone(),
        -&st.k_op().clone(),
    );
    s.expect(
        "structure validator catches corrupted table (IJ = K)",
        corrupted.is_err(),
        "flipped sign of K",
    );

    let bad_pair = Pair::new(
        HypercomplexStructure::standard(1).unwrap(),
        Subspace::zero(8),
    );
    s.expect(
        "pair validator catches ambient mismatch",
        bad_pair.is_err(),
        "zero subspace of wrong ambient",
    );

    let not_unit = crate::structures::AdmissiblePoint::from_ints(1, 1, 0);
    s.expect(
        "admissible point validator catches non-unit",
        not_unit.is_err(),
        "(1, 1, 0)",
    );

    // degree-law checker must reject a lone odd degree
    let fake = crate::pencil::SheafReport {
        is_cr: false,
        is_co_cr: true,
        minus: crate::pencil::SplittingType::empty(),
        plus: CokernelPart::Bundle(crate::pencil::SplittingType::new(vec![3])),
    };
    s.expect(
        "classification rejects unpaired odd degrees",
        crate::models::classify_report(&fake).is_err(),
        "splitting {3}",
    );
    s.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selftest_passes_with_default_seed() {
        let summary = run_selftest(0);
        for suite in &summary.suites {
            assert_eq!(
                suite.failed, 0,
                "suite {} failures: {:?}",
                suite.name, suite.failures
            );
        }
        assert!(summary.total_passed() > 100);
    }

    #[test]
    fn selftest_is_deterministic() {
        let a = run_selftest(7);
        let b = run_selftest(7);
        assert_eq!(a.total_passed(), b.total_passed());
        assert_eq!(a.total_failed(), b.total_failed());
    }
}
