use std::time::Instant;

use qcr_core::models::{classify, direct_sum, FactorSpec};
use qcr_core::pencil::analyze_pair;
use qcr_core::structures::random_automorphism;

fn main() {
    for specs in [
        vec![FactorSpec::CoV(6)],
        vec![
            FactorSpec::CoV(2),
            FactorSpec::CoV(2),
            FactorSpec::CoVp(0),
            FactorSpec::CoV(1),
        ],
        vec![FactorSpec::CoVp(2), FactorSpec::CoVp(0)],
    ] {
        let t0 = Instant::now();
        let mut pair = specs[0].build().unwrap();
        for f in &specs[1..] {
            pair = direct_sum(&pair, &f.build().unwrap());
        }
        let build = t0.elapsed();
        let t1 = Instant::now();
        let auto = random_automorphism(pair.structure(), 1).unwrap();
        let moved = pair.transform(&auto.matrix).unwrap();
        let conj = t1.elapsed();
        let t2 = Instant::now();
        let report = analyze_pair(&moved).unwrap();
        let analyze = t2.elapsed();
        let t3 = Instant::now();
        let dec = classify(&moved).unwrap();
        let classify_t = t3.elapsed();
        println!(
            "{specs:?}: build {build:?} conj {conj:?} analyze {analyze:?} classify {classify_t:?} -> {dec} (plus {:?})",
            report.plus
        );
    }
}
