use proptest::prelude::*;
use qk::edgelist::{digest, emit, parse};
use qk::report::JsonReport;
use qk_core::kernels::{
    construct_kplus2_kernel, hunt_conjecture, verify_kernel, HuntConfig, HuntLedger, KernelCertificate,
};
use qk_core::kings::{census, KingReport};
use qk_core::oracle::suite::{run_suite, SuiteConfig, SuiteReport};
use qk_core::qt::{random_qt, GenConfig, OrientationRule};
use qk_core::{Digraph, Limits};

fn generated() -> impl Strategy<Value = (Digraph, usize)> {
    (0usize..12, 2usize..6, 0.0..1.0f64, any::<u64>()).prop_map(|(n, k, arc_prob, seed)| {
        let cfg = GenConfig { n, k, arc_prob, seed, rule: OrientationRule::Random };
        (random_qt(&cfg, &Limits::default()).unwrap(), k)
    })
}

/// Renders, parses back, renders again, and decodes the typed result.
fn round_trip<T>(result: &T) -> T
where
    T: serde::Serialize + serde::de::DeserializeOwned,
{
    let report = JsonReport::new("test".into(), "0".repeat(64), result).unwrap();
    let text = report.render().unwrap();
    let back = JsonReport::parse(&text).unwrap();
    assert_eq!(back.render().unwrap(), text);
    serde_json::from_value(back.result).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn edge_lists_round_trip((d, _) in generated()) {
        let text = emit(&d);
        prop_assert_eq!(parse(&text).unwrap(), d.clone());
        prop_assert_eq!(digest(&parse(&text).unwrap()), digest(&d));
    }

    #[test]
    fn comments_do_not_change_the_digest((d, _) in generated()) {
        let noisy: String = emit(&d).lines().flat_map(|l| ["# note", l]).map(|l| format!("{l}\n")).collect();
        prop_assert_eq!(digest(&parse(&noisy).unwrap()), digest(&d));
    }

    #[test]
    fn king_reports_round_trip((d, k) in generated()) {
        let r = census(&d, k).unwrap();
        prop_assert_eq!(round_trip::<KingReport>(&r), r);
    }

    #[test]
    fn certificates_round_trip((d, k) in generated()) {
        let set = construct_kplus2_kernel(&d, k).unwrap();
        let cert = verify_kernel(&d, &set, k as u32 + 2, k as u32 + 1).unwrap();
        prop_assert_eq!(round_trip::<KernelCertificate>(&cert), cert.clone());
        let refuted = verify_kernel(&d, &[], 1, 0).unwrap();
        prop_assert_eq!(round_trip::<KernelCertificate>(&refuted), refuted);
    }
}

#[test]
fn ledgers_and_suites_round_trip() {
    let lim = Limits::default();
    let ledger = hunt_conjecture(&HuntConfig::new(2, 25, 8, 3), &lim).unwrap();
    assert_eq!(round_trip::<HuntLedger>(&ledger), ledger);
    let suite = run_suite(&SuiteConfig::new(vec![2, 3], 15, 4), &lim).unwrap();
    let mut back = round_trip::<SuiteReport>(&suite);
    // wall time is not serialized
    for (b, s) in back.summaries.iter_mut().zip(&suite.summaries) {
        for (bc, sc) in b.checks.iter_mut().zip(&s.checks) {
            bc.elapsed = sc.elapsed;
        }
    }
    assert_eq!(back, suite);
}

#[test]
fn infinite_distances_survive_json() {
    let d = Digraph::build(2, &[]).unwrap();
    let r = census(&d, 2).unwrap();
    assert_eq!(r.ecc_out, vec![u32::MAX, u32::MAX]);
    assert_eq!(round_trip::<KingReport>(&r), r);
}
