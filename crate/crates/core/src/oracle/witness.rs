//! Standalone re-validation of oracle witnesses.
//!
//! Distances here come from Floyd-Warshall over `has_arc`, never from the BFS
//! or component code the checkers use.

use alloc::vec::Vec;

use super::{Clause, ViolationReport, Witness};
use crate::digraph::{Digraph, Vertex};

const UNREACHABLE: u64 = u64::MAX / 4;

/// All-pairs distances by Floyd-Warshall; `None` marks unreachable pairs.
pub fn floyd_warshall(d: &Digraph) -> Vec<Vec<Option<u32>>> {
    let n = d.n();
    let mut m = alloc::vec![alloc::vec![UNREACHABLE; n]; n];
    for (u, row) in m.iter_mut().enumerate() {
        for (v, cell) in row.iter_mut().enumerate() {
            if u == v {
                *cell = 0;
            } else if d.has_arc(u, v) {
                *cell = 1;
            }
        }
    }
    for w in 0..n {
        for u in 0..n {
            for v in 0..n {
                let via = m[u][w] + m[w][v];
                if via < m[u][v] {
                    m[u][v] = via;
                }
            }
        }
    }
    m.into_iter().map(|row| row.into_iter().map(|x| (x < UNREACHABLE).then_some(x as u32)).collect()).collect()
}

struct Facts<'a> {
    d: &'a Digraph,
    k: u32,
    fw: Vec<Vec<Option<u32>>>,
}

impl Facts<'_> {
    fn dist(&self, u: Vertex, v: Vertex) -> Option<u32> {
        self.fw[u][v]
    }

    fn is_king(&self, v: Vertex, r: u32) -> bool {
        self.fw[v].iter().all(|x| matches!(x, Some(e) if *e <= r))
    }

    fn kings(&self, r: u32) -> usize {
        (0..self.d.n()).filter(|&v| self.is_king(v, r)).count()
    }

    fn valid(&self, v: Vertex) -> bool {
        v < self.d.n()
    }

    /// A path of exactly `k+2` arcs whose endpoints are `k+2` apart.
    fn is_min_path(&self, p: &[Vertex]) -> bool {
        if p.len() != self.k as usize + 3 || !p.iter().all(|&v| self.valid(v)) {
            return false;
        }
        p.windows(2).all(|w| self.d.has_arc(w[0], w[1])) && self.dist(p[0], p[p.len() - 1]) == Some(self.k + 2)
    }

    /// Vertices of the unique initial strong component, if there is one.
    fn unique_initial(&self) -> Option<Vec<Vertex>> {
        let n = self.d.n();
        // v lies in an initial component iff v reaches everything that reaches v.
        let initial: Vec<Vertex> =
            (0..n).filter(|&v| (0..n).all(|u| self.dist(u, v).is_none() || self.dist(v, u).is_some())).collect();
        let first = *initial.first()?;
        initial.iter().all(|&v| self.dist(first, v).is_some() && self.dist(v, first).is_some()).then_some(initial)
    }
}

/// Whether the report's witness really shows its clause failing on `d`.
pub fn revalidate(d: &Digraph, report: &ViolationReport) -> bool {
    let f = Facts { d, k: report.k as u32, fw: floyd_warshall(d) };
    let k = f.k;
    let even = k.is_multiple_of(2);
    let far_radius = if even { 3 } else { 4 };
    match (&report.witness, report.clause) {
        (&Witness::Pair { u, v }, clause) if clause.check() == super::CheckId::DistanceDichotomy => {
            if !f.valid(u) || !f.valid(v) || u == v {
                return false;
            }
            let Some(there) = f.dist(u, v) else { return false };
            let back = f.dist(v, u);
            let within = |r: u32| matches!(back, Some(b) if b <= r);
            match clause {
                Clause::DistK => there == k && !within(1),
                Clause::DistKPlus1 => there == k + 1 && !within(k + 1),
                Clause::DistFarEvenK => even && there >= k + 2 && !within(1),
                Clause::DistFarOddDistance => !even && there >= k + 2 && there % 2 == 1 && !within(1),
                Clause::DistFarEvenDistance => !even && there >= k + 3 && there % 2 == 0 && !within(2),
                _ => false,
            }
        }
        (&Witness::Pair { u, v }, Clause::ComponentWithinKMinus1) => {
            f.valid(u) && f.valid(v) && f.dist(v, u).is_none() && matches!(f.dist(u, v), Some(x) if x + 1 > k)
        }
        (Witness::MissingArc { path, from, to }, clause) => {
            let (from, to) = (*from, *to);
            if !f.is_min_path(path) || !f.valid(to) || d.has_arc(from, to) {
                return false;
            }
            let k = k as usize;
            let pos = path.iter().position(|&x| x == to);
            match clause {
                Clause::LastToOddBack => from == path[k + 2] && matches!(pos, Some(j) if j < k && (k - j) % 2 == 1),
                Clause::PenultimateToEvenBack => {
                    from == path[k + 1] && matches!(pos, Some(j) if j + 2 <= k && (k - j).is_multiple_of(2))
                }
                Clause::LastToAllBack => even && from == path[k + 2] && matches!(pos, Some(j) if j <= k),
                Clause::LastDominatesNearEven => {
                    even && from == path[k + 2] && matches!(f.dist(path[0], to), Some(x) if x <= k as u32)
                }
                Clause::LastDominatesNearOdd => {
                    !even && from == path[k + 2] && matches!(f.dist(path[0], to), Some(x) if x < k as u32 && x % 2 == 0)
                }
                _ => false,
            }
        }
        (Witness::DegreeGap { path }, clause) => {
            if !f.is_min_path(path) {
                return false;
            }
            let k = k as usize;
            let deg = |v: Vertex| d.out_neighbors(v).len();
            match clause {
                Clause::DegreeGrowthEven => even && deg(path[k + 2]) < deg(path[0]) + k,
                Clause::DegreeGrowthOdd => !even && deg(path[k + 1]) < deg(path[0]) + (k - 1) / 2,
                _ => false,
            }
        }
        (&Witness::Pair { u: v, v: u }, Clause::FarVertexIsKing) => {
            f.valid(v) && f.valid(u) && f.is_king(v, k + 2) && f.dist(v, u) == Some(k + 2) && !f.is_king(u, far_radius)
        }
        (&Witness::Triple { v, u, w }, Clause::FarVertexChain) => {
            f.valid(v)
                && f.valid(u)
                && f.valid(w)
                && f.is_king(v, k + 2)
                && f.dist(v, u) == Some(k + 2)
                && f.dist(u, w) == Some(far_radius)
                && (f.dist(v, w) != Some(k + 2) || !f.is_king(w, far_radius))
        }
        (&Witness::FarPair { v, x, y }, Clause::FarSetSemicomplete) => {
            even && k >= 4
                && [v, x, y].iter().all(|&z| f.valid(z))
                && f.is_king(v, k + 2)
                && !f.is_king(v, k + 1)
                && f.dist(v, x) == Some(k + 2)
                && f.dist(v, y) == Some(k + 2)
                && x != y
                && !d.has_arc(x, y)
                && !d.has_arc(y, x)
        }
        (&Witness::Vertex { v }, Clause::FarSetHasTwoKing) => {
            even && k >= 4
                && f.valid(v)
                && f.is_king(v, k + 2)
                && !f.is_king(v, k + 1)
                && (0..d.n()).filter(|&w| f.dist(v, w) == Some(k + 2)).all(|w| !f.is_king(w, 2))
        }
        (&Witness::Pair { u, v }, Clause::KingPropagation) => {
            f.valid(u) && f.valid(v) && f.is_king(u, k + 1) && f.dist(u, v) == Some(k + 1) && !f.is_king(v, k + 1)
        }
        (Witness::Whole, clause) => {
            let n = d.n();
            match clause {
                Clause::KingTripleStructure | Clause::EvenKingDichotomy | Clause::OddKingDichotomy => {
                    let Some(c) = f.unique_initial() else { return false };
                    if k < 3 || c.iter().all(|&v| f.is_king(v, k + 1)) {
                        return false;
                    }
                    match clause {
                        Clause::KingTripleStructure => {
                            let r3 = if even { 2 } else { 4 };
                            !c.iter().any(|&u2| {
                                f.is_king(u2, k + 2)
                                    && c.iter().any(|&u1| d.has_arc(u2, u1) && f.is_king(u1, k + 1))
                                    && c.iter().any(|&u3| f.dist(u2, u3) == Some(k + 2) && f.is_king(u3, r3))
                            })
                        }
                        Clause::EvenKingDichotomy => even && (f.kings(2) == 0 || f.kings(3) < 2),
                        _ => !even && c.iter().all(|&v| !f.is_king(v, 3)) && f.kings(4) < 4,
                    }
                }
                Clause::QtTwoThreeKings => {
                    k == 2 && f.kings(3) >= 1 && (0..n).all(|v| (0..n).any(|u| d.has_arc(u, v))) && f.kings(3) < 2
                }
                _ => false,
            }
        }
        (&Witness::Vertex { v }, Clause::QtMaxDegreeThreeKing) => {
            let top = (0..d.n()).map(|x| d.out_neighbors(x).len()).max().unwrap_or(0);
            k == 2 && f.valid(v) && f.kings(3) >= 1 && d.out_neighbors(v).len() == top && !f.is_king(v, 3)
        }
        _ => false,
    }
}
