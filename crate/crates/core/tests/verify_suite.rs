mod common;

use std::sync::Arc;

use proptest::prelude::*;
use relcyc::complexes::Engine;
use relcyc::harmonic::HarmonicSplit;
use relcyc::homology::{compare, sbi, Kind, Pipelines};
use relcyc::verify::{harmonic, verify, VerifyReport};
use relcyc::{QMatrix, Q};

fn pipelines(name: &str) -> Pipelines<Q> {
    Pipelines::new(name, Arc::new(Engine::new(common::load(name)).unwrap()))
}

fn assert_passes(r: &VerifyReport) {
    let failed: Vec<_> = r.failed().map(|c| (&c.name, &c.failures)).collect();
    assert!(r.passed(), "{}: {failed:?}", r.instance);
    assert!(r.checks.iter().all(|c| c.checked > 0), "{}: empty check", r.instance);
}

#[test]
fn identity_suite_passes_on_every_instance() {
    for (name, bound) in [("DN", 5), ("T", 5), ("TP3", 4), ("TP3-graded", 4), ("AX", 3), ("NC", 2)] {
        let r = verify(&pipelines(name), bound, 0, 0);
        assert_passes(&r);
        assert_eq!(r.bound, bound);
    }
}

#[test]
fn suite_names_the_perturbation_checks() {
    let r = verify(&pipelines("T"), 4, 0, 0);
    let names: Vec<&str> = r.checks.iter().map(|c| c.name.as_str()).collect();
    assert!(names.iter().any(|n| n.contains("retract")), "{names:?}");
    assert!(names.len() >= 10, "{names:?}");
}

#[test]
fn verify_is_deterministic() {
    let p = pipelines("TP3");
    assert_eq!(verify(&p, 4, 3, 11), verify(&p, 4, 3, 11));
    assert_eq!(verify(&p, 4, 3, 11), verify(&pipelines("TP3"), 4, 3, 11));
}

#[test]
fn harmonic_report_sizes() {
    let p = pipelines("T");
    let h = harmonic(&p, 4, 0, 0);
    assert_passes(&h.checks);
    let split = HarmonicSplit::new(p.engine.clone());
    for row in &h.rows {
        assert_eq!(row.harmonic + row.perp, row.dim);
        assert_eq!(row.dim, split.dim(row.v, row.w));
        if row.w == 0 {
            assert_eq!(row.harmonic, row.dim);
        }
    }
    assert_eq!(h.rows.len(), 15);
}

#[test]
fn pipelines_agree_and_sbi_is_exact() {
    for (name, bound) in [("DN", 6), ("TP3", 5), ("K2", 5)] {
        let p = pipelines(name);
        let c = compare(&p, bound, &[Kind::Hh, Kind::Hc]).unwrap();
        assert!(c.agree(), "{name}: {:?}", c.disagreements);
        let s = sbi(&p, bound).unwrap();
        assert!(s.exact(), "{name}: {:?}", s.slots.iter().filter(|x| !x.exact).collect::<Vec<_>>());
        let hh = c.reports.iter().find(|r| r.kind == Kind::Hh).unwrap();
        let hc = c.reports.iter().find(|r| r.kind == Kind::Hc).unwrap();
        assert_eq!(s.hh, hh.dims);
        assert_eq!(s.hc, hc.dims);
    }
}

/// The graph of `−σ′d` is not harmonic in general: it fails already on `X_{0,1}` of `T`,
/// while landing in `P(Ẍ)` only at scattered bidegrees.
#[test]
fn graph_of_rotated_derivative_is_not_harmonic() {
    let harmonic_at = |name: &str| {
        let e = Arc::new(Engine::new(common::load(name)).unwrap());
        let split = HarmonicSplit::new(e.clone());
        let mut out = Vec::new();
        for n in 1..=4 {
            for w in 1..=n {
                let v = n - w;
                let graph = QMatrix::identity(e.dim_x(v, w)).vstack(&e.sigma_prime(v, w - 1).mul(&e.d(v, w)).neg());
                out.push(((v, w), split.p(v, w).mul(&graph) == graph));
            }
        }
        out
    };
    let t = harmonic_at("T");
    assert!(t.contains(&((0, 1), false)));
    assert_eq!(t.iter().filter(|x| x.1).count(), 2);
    assert!(harmonic_at("AX").iter().all(|x| !x.1));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn sampled_checks_pass_for_any_seed(seed in any::<u64>(), samples in 1usize..4) {
        let r = verify(&pipelines("DN"), 4, samples, seed);
        prop_assert!(r.passed(), "{:?}", r.failed().collect::<Vec<_>>());
        prop_assert_eq!(r.seed, seed);
    }
}
