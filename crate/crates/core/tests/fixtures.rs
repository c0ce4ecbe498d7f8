//! Hand-built digraphs with known answers.

use qk_core::corpus::{CorpusConfig, SeedShape};
use qk_core::kernels::{construct_kplus2_kernel, exhaustive_kernel_search, verify_kernel, KernelWitness};
use qk_core::kings::{all_r_kings, census, find_kplus1_king_fast, Clause, Outcome};
use qk_core::oracle::{revalidate, CheckId, Witness};
use qk_core::qt::{compose, first_qt_violation, is_k_quasi_transitive};
use qk_core::{distance_matrix, Digraph, Limits, Vertex};

fn lim() -> Limits {
    Limits::default()
}

fn d4() -> Digraph {
    Digraph::build(4, &[(0, 1), (1, 2), (1, 3), (2, 3), (3, 2)]).unwrap()
}

/// `v0 -> v1 -> ... -> v_{k+1}` plus `v_k -> v0` and `v_{k+1} -> v1`.
fn chorded_path(k: usize) -> Digraph {
    let mut arcs: Vec<(Vertex, Vertex)> = (0..=k).map(|i| (i, i + 1)).collect();
    arcs.extend([(k, 0), (k + 1, 1)]);
    Digraph::build(k + 2, &arcs).unwrap()
}

#[test]
fn d4_kings_and_degrees() {
    let d = d4();
    assert!(first_qt_violation(&d, 4, &lim()).unwrap().is_none());
    let paths: Vec<_> = is_k_quasi_transitive(&d, 2, &lim()).unwrap().into_iter().map(|v| v.path).collect();
    assert_eq!(paths, vec![vec![0, 1, 2], vec![0, 1, 3]]);
    assert_eq!(all_r_kings(&d, 5), vec![0]);
    let top: Vec<Vertex> = d.vertices().filter(|&v| d.out_degree(v) == d.max_out_degree()).collect();
    assert_eq!(top, vec![1]);
    assert_eq!(find_kplus1_king_fast(&d, 4).unwrap(), Some(0));
}

#[test]
fn cycles_are_sharp() {
    for k in 2..=6 {
        let c = Digraph::cycle(k + 1);
        assert!(is_k_quasi_transitive(&c, k, &lim()).unwrap().is_empty());
        assert_eq!(exhaustive_kernel_search(&c, k as u32, k as u32 - 1, &lim()).unwrap(), None);
        assert!(exhaustive_kernel_search(&c, k as u32 + 1, k as u32, &lim()).unwrap().is_some());
        let r = census(&c, k).unwrap();
        assert_eq!(r.kings(k as u32).len(), k + 1);
        let row = r.counting_audit.iter().find(|r| r.clause == Clause::CycleSizedComponentKings).unwrap();
        assert_eq!(row.outcome, Outcome::Pass);
    }
}

#[test]
fn chorded_paths() {
    for k in 2..=6 {
        let d = chorded_path(k);
        assert!(is_k_quasi_transitive(&d, k, &lim()).unwrap().is_empty(), "k = {k}");
        let cert = verify_kernel(&d, &[0, k + 1], k as u32 + 1, k as u32).unwrap();
        assert!(cert.is_verified(), "k = {k}: {:?}", cert.witness);
        // v1 reaches v0 through v_k and v_{k+1} along the path, both in k
        // arcs, so v1..v_k are k-kings; nothing is a (k-1)-king
        assert_eq!(all_r_kings(&d, k as u32), (1..=k).collect::<Vec<_>>());
        assert!(all_r_kings(&d, k as u32 - 1).is_empty());
        // strong, so the finder picks the top degree inside the whole digraph
        assert_eq!(find_kplus1_king_fast(&d, k).unwrap(), Some(k));
        assert!(construct_kplus2_kernel(&d, k).is_ok());
    }
}

#[test]
fn kernel_refutation_witnesses() {
    let c = Digraph::cycle(4);
    let cert = verify_kernel(&c, &[0, 1], 2, 1).unwrap();
    assert_eq!(cert.witness, Some(KernelWitness::TooClose { from: 0, to: 1, distance: 1 }));
    let cert = verify_kernel(&c, &[0], 2, 2).unwrap();
    assert_eq!(cert.witness, Some(KernelWitness::Unabsorbed { vertex: 1, distance: 3 }));
}

/// Three independent pairs arranged in a directed triangle.
#[test]
fn triangle_of_pairs_has_six_three_kings() {
    let e2 = Digraph::empty(2);
    let (d, _) = compose(&Digraph::cycle(3), &[e2.clone(), e2.clone(), e2]).unwrap();
    assert_eq!((d.n(), d.arc_count()), (6, 12));
    assert!(is_k_quasi_transitive(&d, 2, &lim()).unwrap().is_empty());
    let r = census(&d, 2).unwrap();
    assert!(r.unique_initial);
    assert!(r.kings(2).is_empty());
    assert_eq!(r.kings(3).len(), 6);
    let failed: Vec<Clause> = r.failures().map(|row| row.clause).collect();
    assert_eq!(failed, vec![Clause::QtSevenThreeKings]);
}

#[test]
fn checker_witnesses_on_a_bare_path() {
    // not 2-quasi-transitive: d(0, 2) = 2 but 2 never returns
    let d = Digraph::path(5);
    let r = CheckId::DistanceDichotomy.run_unchecked(&d, 2);
    assert!(!r.violations.is_empty());
    for v in &r.violations {
        assert!(revalidate(&d, v));
    }
    let mut forged = r.violations[0].clone();
    forged.witness = Witness::Pair { u: 4, v: 0 };
    assert!(!revalidate(&d, &forged));
}

#[test]
fn descending_path_seeds_reach_k_plus_two() {
    for k in 2..=6 {
        let mut cfg = CorpusConfig::standard(k, 400, 5);
        cfg.long_path_share = 1.0;
        cfg.descending_share = 1.0;
        let far = cfg
            .specs()
            .filter(|s| matches!(s.shape, SeedShape::LongPath { .. }))
            .map(|s| s.generate(&lim()).unwrap())
            .filter(|d| {
                let m = distance_matrix(d);
                d.vertices().any(|u| d.vertices().any(|v| m.get(u, v) == k as u32 + 2))
            })
            .count();
        assert!(far * 10 >= 400, "k = {k}: only {far} of 400 instances reach distance k+2");
    }
}
