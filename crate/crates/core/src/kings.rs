//! Out-eccentricities, r-kings and the degree-based `(k+1)`-king finder.
//!
//! A vertex is an `r`-king when every vertex is reachable from it along a
//! path of at most `r` arcs; a king is a 2-king.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::components::strong_components;
use crate::digraph::{Digraph, Vertex};
use crate::distance::{bfs, distance_matrix};
use crate::error::{Error, Result};
use crate::qt::first_qt_violation;
use crate::Limits;

/// Largest distance from `v` to any vertex, or [`INFINITY`](crate::INFINITY).
pub fn out_eccentricity(d: &Digraph, v: Vertex) -> Result<u32> {
    d.check_vertex(v)?;
    Ok(bfs(d, v).into_iter().max().unwrap_or(0))
}

/// All `r`-kings in increasing order.
pub fn all_r_kings(d: &Digraph, r: u32) -> Vec<Vertex> {
    let ecc = distance_matrix(d).eccentricities();
    kings_from_ecc(&ecc, r)
}

pub(crate) fn kings_from_ecc(ecc: &[u32], r: u32) -> Vec<Vertex> {
    ecc.iter().enumerate().filter(|&(_, &e)| e <= r).map(|(v, _)| v).collect()
}

/// Vertex set of the unique initial strong component, or `None` when the
/// condensation has several sources.
pub fn has_unique_initial_component(d: &Digraph) -> Option<Vec<Vertex>> {
    strong_components(d).unique_initial().map(<[Vertex]>::to_vec)
}

/// Vertex of maximum out-degree inside `part`, counting only arcs that stay in
/// `part`. Ties go to the smallest id. `member` marks the vertices of `part`.
pub(crate) fn max_degree_within(d: &Digraph, part: &[Vertex], member: &[bool]) -> Vertex {
    let mut best = part[0];
    let mut best_deg = 0;
    for (i, &v) in part.iter().enumerate() {
        let deg = d.out_neighbors(v).iter().filter(|&&w| member[w]).count();
        if i == 0 || deg > best_deg {
            best = v;
            best_deg = deg;
        }
    }
    best
}

/// Finds a `(k+1)`-king of a k-quasi-transitive digraph from out-degrees.
///
/// Returns `Ok(None)` when the digraph has several initial strong components,
/// in which case no vertex reaches every other one. Otherwise the answer is
/// the vertex of the unique initial component `C` with the largest out-degree
/// in `D[C]`. The answer is checked with one BFS; a failed check means the
/// input was not k-quasi-transitive.
pub fn find_kplus1_king_fast(d: &Digraph, k: usize) -> Result<Option<Vertex>> {
    if k < 2 {
        return Err(Error::InvalidParameter("k must be at least 2"));
    }
    if d.n() == 0 {
        return Ok(None);
    }
    let cond = strong_components(d);
    let Some(initial) = cond.unique_initial() else {
        return Ok(None);
    };
    let mut member = alloc::vec![false; d.n()];
    for &v in initial {
        member[v] = true;
    }
    let king = max_degree_within(d, initial, &member);
    if bfs(d, king).into_iter().max().unwrap_or(0) > (k + 1) as u32 {
        return Err(Error::NotQuasiTransitiveInput { k, reason: "degree-selected vertex is not a (k+1)-king" });
    }
    Ok(Some(king))
}

/// [`find_kplus1_king_fast`] after confirming k-quasi-transitivity.
pub fn find_kplus1_king_checked(d: &Digraph, k: usize, limits: &Limits) -> Result<Option<Vertex>> {
    if first_qt_violation(d, k, limits)?.is_some() {
        return Err(Error::NotQuasiTransitiveInput { k, reason: "a violating path exists" });
    }
    find_kplus1_king_fast(d, k)
}

/// The `(k+1)`-king criterion on out-degrees inside the initial component:
/// `d+_C(v) > max d+_C - k` for even `k`, `> max d+_C - (k-1)/2` for odd `k`.
pub fn meets_degree_threshold(k: usize, degree: usize, max_degree: usize) -> bool {
    let slack = if k.is_multiple_of(2) { k } else { (k - 1) / 2 };
    degree + slack > max_degree
}

/// A 2-king of a semicomplete digraph: its vertex of maximum out-degree.
pub fn semicomplete_two_king(d: &Digraph) -> Result<Vertex> {
    if let Some((u, v)) = d.first_non_adjacent_pair() {
        return Err(Error::NotSemicomplete(u, v));
    }
    if d.n() == 0 {
        return Err(Error::InvalidParameter("empty digraph has no king"));
    }
    let all: Vec<Vertex> = d.vertices().collect();
    let king = max_degree_within(d, &all, &alloc::vec![true; d.n()]);
    let ecc = bfs(d, king).into_iter().max().unwrap_or(0);
    assert!(ecc <= 2, "vertex {king} of maximum out-degree has out-eccentricity {ecc}");
    Ok(king)
}

/// Which counting statement an audit row checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Clause {
    /// A `(k+1)`-king exists iff the initial component is unique.
    KingIffUniqueInitial,
    /// `|C| <= k`: exactly `|C|` `(k-1)`-kings.
    SmallComponentKings,
    /// `|C| = k+1`: exactly `k+1` `k`-kings.
    CycleSizedComponentKings,
    /// `|C| >= k+2`: at least `k+2` `(k+1)`-kings (`k >= 4`).
    LargeComponentKings,
    /// `|C| >= k+3`: count of `(k+1)`-kings against `k+3`; informational.
    LargeComponentKingsPlusOne,
    /// `k = 2`, `|C| >= 4`: at least four 3-kings.
    QtFourThreeKings,
    /// `k = 2`, no 2-king: at least seven 3-kings.
    QtSevenThreeKings,
    /// Every vertex of `C` is a `(k+1)`-king; satisfies the even/odd
    /// dichotomies on its own.
    AllOfComponentKings,
    /// Even `k >= 4`, not all of `C` are `(k+1)`-kings: at least one 2-king.
    EvenHasTwoKing,
    /// Even `k >= 4`, not all of `C` are `(k+1)`-kings: at least two 3-kings.
    EvenTwoThreeKings,
    /// Odd `k >= 3`, not all of `C` are `(k+1)`-kings and no 3-king in `C`:
    /// at least four 4-kings.
    OddFourFourKings,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Bound {
    Exactly(usize),
    AtLeast(usize),
}

impl Bound {
    pub fn admits(self, count: usize) -> bool {
        match self {
            Bound::Exactly(x) => count == x,
            Bound::AtLeast(x) => count >= x,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    /// Logged without a verdict.
    Info,
}

/// One counting statement evaluated on one digraph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditRow {
    pub clause: Clause,
    /// Radius of the kings being counted.
    pub radius: u32,
    pub expected: Bound,
    pub observed: usize,
    pub outcome: Outcome,
}

impl AuditRow {
    fn judged(clause: Clause, radius: u32, expected: Bound, observed: usize) -> Self {
        let outcome = if expected.admits(observed) { Outcome::Pass } else { Outcome::Fail };
        AuditRow { clause, radius, expected, observed, outcome }
    }
}

/// Everything the census learns about kings of one digraph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KingReport {
    pub k: usize,
    /// Per-vertex out-eccentricity; [`INFINITY`](crate::INFINITY) when something is unreachable.
    pub ecc_out: Vec<u32>,
    pub kings_by_radius: BTreeMap<u32, Vec<Vertex>>,
    pub unique_initial: bool,
    pub initial_component: Option<Vec<Vertex>>,
    pub fast_king: Option<Vertex>,
    pub counting_audit: Vec<AuditRow>,
}

impl KingReport {
    pub fn kings(&self, r: u32) -> &[Vertex] {
        self.kings_by_radius.get(&r).map_or(&[], Vec::as_slice)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AuditRow> {
        self.counting_audit.iter().filter(|r| r.outcome == Outcome::Fail)
    }

    pub fn audit_passed(&self) -> bool {
        self.failures().next().is_none()
    }
}

/// Eccentricities, r-kings for `r = 1..=k+2`, the fast king and the audit of
/// every counting statement whose hypothesis holds.
///
/// The audit never aborts: a failing row is reported, not raised. A
/// `NotQuasiTransitiveInput` error from the fast finder is folded into
/// `fast_king = None` and shows up as a failing
/// [`Clause::KingIffUniqueInitial`] row only if no king exists at all.
pub fn census(d: &Digraph, k: usize) -> Result<KingReport> {
    if k < 2 {
        return Err(Error::InvalidParameter("k must be at least 2"));
    }
    let ecc = distance_matrix(d).eccentricities();
    let mut kings_by_radius = BTreeMap::new();
    for r in 1..=(k as u32 + 2) {
        kings_by_radius.insert(r, kings_from_ecc(&ecc, r));
    }
    let count = |r: u32| ecc.iter().filter(|&&e| e <= r).count();
    let cond = strong_components(d);
    let initial = cond.unique_initial().map(<[Vertex]>::to_vec);
    let fast_king = find_kplus1_king_fast(d, k).ok().flatten();

    let k32 = k as u32;
    let mut audit = Vec::new();
    let kplus1 = count(k32 + 1);
    match &initial {
        None => audit.push(AuditRow::judged(Clause::KingIffUniqueInitial, k32 + 1, Bound::Exactly(0), kplus1)),
        Some(c) => {
            audit.push(AuditRow::judged(Clause::KingIffUniqueInitial, k32 + 1, Bound::AtLeast(1), kplus1));
            let nc = c.len();
            if nc <= k {
                audit.push(AuditRow::judged(Clause::SmallComponentKings, k32 - 1, Bound::Exactly(nc), count(k32 - 1)));
            }
            if nc == k + 1 {
                audit.push(AuditRow::judged(Clause::CycleSizedComponentKings, k32, Bound::Exactly(k + 1), count(k32)));
            }
            if nc >= k + 2 && k >= 4 {
                audit.push(AuditRow::judged(Clause::LargeComponentKings, k32 + 1, Bound::AtLeast(k + 2), kplus1));
            }
            if nc >= k + 3 && k >= 4 {
                audit.push(AuditRow {
                    clause: Clause::LargeComponentKingsPlusOne,
                    radius: k32 + 1,
                    expected: Bound::AtLeast(k + 3),
                    observed: kplus1,
                    outcome: Outcome::Info,
                });
            }
            if k == 2 {
                if nc >= 4 {
                    audit.push(AuditRow::judged(Clause::QtFourThreeKings, 3, Bound::AtLeast(4), count(3)));
                }
                if count(2) == 0 {
                    audit.push(AuditRow::judged(Clause::QtSevenThreeKings, 3, Bound::AtLeast(7), count(3)));
                }
            }
            if k >= 3 {
                let c_kings = c.iter().filter(|&&v| ecc[v] <= k32 + 1).count();
                if c_kings == nc {
                    audit.push(AuditRow::judged(Clause::AllOfComponentKings, k32 + 1, Bound::Exactly(nc), c_kings));
                } else if k.is_multiple_of(2) {
                    audit.push(AuditRow::judged(Clause::EvenHasTwoKing, 2, Bound::AtLeast(1), count(2)));
                    audit.push(AuditRow::judged(Clause::EvenTwoThreeKings, 3, Bound::AtLeast(2), count(3)));
                } else if count(3) == 0 {
                    audit.push(AuditRow::judged(Clause::OddFourFourKings, 4, Bound::AtLeast(4), count(4)));
                }
            }
        }
    }

    Ok(KingReport {
        k,
        ecc_out: ecc,
        kings_by_radius,
        unique_initial: initial.is_some(),
        initial_component: initial,
        fast_king,
        counting_audit: audit,
    })
}

/// [`census`] after confirming k-quasi-transitivity.
pub fn census_checked(d: &Digraph, k: usize, limits: &Limits) -> Result<KingReport> {
    if first_qt_violation(d, k, limits)?.is_some() {
        return Err(Error::NotQuasiTransitiveInput { k, reason: "a violating path exists" });
    }
    census(d, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distance::INFINITY;
    use alloc::vec;

    fn d4() -> Digraph {
        Digraph::build(4, &[(0, 1), (1, 2), (1, 3), (2, 3), (3, 2)]).unwrap()
    }

    fn two_digons() -> Digraph {
        Digraph::build(4, &[(0, 1), (1, 0), (2, 3), (3, 2)]).unwrap()
    }

    #[test]
    fn eccentricity_examples() {
        assert_eq!(out_eccentricity(&d4(), 0).unwrap(), 2);
        assert_eq!(out_eccentricity(&Digraph::empty(1), 0).unwrap(), 0);
        assert_eq!(out_eccentricity(&Digraph::path(3), 1).unwrap(), INFINITY);
        assert!(out_eccentricity(&d4(), 9).is_err());
    }

    #[test]
    fn r_kings_examples() {
        assert_eq!(all_r_kings(&d4(), 5), vec![0]);
        assert_eq!(all_r_kings(&d4(), 2), vec![0]);
        assert_eq!(all_r_kings(&d4(), 1), Vec::<Vertex>::new());
        assert_eq!(all_r_kings(&Digraph::complete(4), 1), vec![0, 1, 2, 3]);
    }

    #[test]
    fn unique_initial_examples() {
        assert_eq!(has_unique_initial_component(&d4()), Some(vec![0]));
        assert_eq!(has_unique_initial_component(&two_digons()), None);
        assert_eq!(has_unique_initial_component(&Digraph::cycle(5)), Some(vec![0, 1, 2, 3, 4]));
    }

    #[test]
    fn fast_king_examples() {
        assert_eq!(find_kplus1_king_fast(&d4(), 4).unwrap(), Some(0));
        for k in 2..6 {
            assert_eq!(find_kplus1_king_fast(&two_digons(), k).unwrap(), None);
        }
        // A directed path is not 2-quasi-transitive and its source is far
        // from the sink.
        assert!(matches!(find_kplus1_king_fast(&Digraph::path(5), 2), Err(Error::NotQuasiTransitiveInput { .. })));
        assert!(matches!(
            find_kplus1_king_checked(&Digraph::path(3), 2, &Limits::default()),
            Err(Error::NotQuasiTransitiveInput { .. })
        ));
    }

    #[test]
    fn thresholds() {
        assert!(meets_degree_threshold(4, 1, 4));
        assert!(!meets_degree_threshold(4, 0, 4));
        assert!(meets_degree_threshold(5, 3, 4));
        assert!(!meets_degree_threshold(5, 2, 4));
        assert!(!meets_degree_threshold(3, 2, 3));
    }

    #[test]
    fn semicomplete_examples() {
        let tt = Digraph::build(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(semicomplete_two_king(&tt).unwrap(), 0);
        assert_eq!(semicomplete_two_king(&Digraph::cycle(3)).unwrap(), 0);
        let dig = Digraph::build(3, &[(0, 1), (1, 0), (0, 2), (1, 2)]).unwrap();
        assert!([0, 1].contains(&semicomplete_two_king(&dig).unwrap()));
        assert_eq!(semicomplete_two_king(&d4()), Err(Error::NotSemicomplete(0, 2)));
    }

    #[test]
    fn census_d4() {
        let rep = census(&d4(), 4).unwrap();
        assert_eq!(rep.kings(5), &[0]);
        assert_eq!(rep.fast_king, Some(0));
        assert!(rep.audit_passed());
        let small = rep.counting_audit.iter().find(|r| r.clause == Clause::SmallComponentKings).unwrap();
        assert_eq!((small.radius, small.expected, small.observed), (3, Bound::Exactly(1), 1));
    }

    #[test]
    fn census_cycle() {
        for k in 2..7 {
            let rep = census(&Digraph::cycle(k + 1), k).unwrap();
            let row = rep.counting_audit.iter().find(|r| r.clause == Clause::CycleSizedComponentKings).unwrap();
            assert_eq!(row.observed, k + 1);
            assert_eq!(row.outcome, Outcome::Pass);
            assert!(rep.audit_passed());
        }
    }

    #[test]
    fn census_single_vertex() {
        for k in 2..7 {
            assert!(census(&Digraph::empty(1), k).unwrap().audit_passed());
        }
    }

    #[test]
    fn census_multiple_sources() {
        let rep = census(&two_digons(), 3).unwrap();
        assert!(!rep.unique_initial);
        assert_eq!(rep.counting_audit.len(), 1);
        assert!(rep.audit_passed());
    }
}
