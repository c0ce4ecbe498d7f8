//! Unweighted shortest-path distances.

use alloc::collections::VecDeque;
use alloc::vec::Vec;

use crate::digraph::{Digraph, Vertex};
use crate::error::Result;

/// Distance to an unreachable vertex.
pub const INFINITY: u32 = u32::MAX;

/// Breadth-first distances from `source`; unreachable vertices get [`INFINITY`].
pub fn distances_from(d: &Digraph, source: Vertex) -> Result<Vec<u32>> {
    d.check_vertex(source)?;
    Ok(bfs(d, source))
}

pub(crate) fn bfs(d: &Digraph, source: Vertex) -> Vec<u32> {
    let mut dist = alloc::vec![INFINITY; d.n()];
    let mut queue = VecDeque::new();
    dist[source] = 0;
    queue.push_back(source);
    while let Some(v) = queue.pop_front() {
        let next = dist[v] + 1;
        for &w in d.out_neighbors(v) {
            if dist[w] == INFINITY {
                dist[w] = next;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// All-pairs hop distances, one BFS per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    dist: Vec<u32>,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: Vertex, v: Vertex) -> u32 {
        self.dist[u * self.n + v]
    }

    #[inline]
    pub fn row(&self, u: Vertex) -> &[u32] {
        &self.dist[u * self.n..(u + 1) * self.n]
    }

    #[inline]
    pub fn reaches(&self, u: Vertex, v: Vertex) -> bool {
        self.get(u, v) != INFINITY
    }

    /// Largest distance from `u`, [`INFINITY`] if some vertex is unreachable.
    pub fn eccentricity(&self, u: Vertex) -> u32 {
        self.row(u).iter().copied().max().unwrap_or(0)
    }

    pub fn eccentricities(&self) -> Vec<u32> {
        (0..self.n).map(|u| self.eccentricity(u)).collect()
    }
}

pub fn distance_matrix(d: &Digraph) -> DistanceMatrix {
    let n = d.n();
    let mut dist = Vec::with_capacity(n * n);
    for s in 0..n {
        dist.extend(bfs(d, s));
    }
    DistanceMatrix { n, dist }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    const INF: u32 = INFINITY;

    fn d4() -> Digraph {
        Digraph::build(4, &[(0, 1), (1, 2), (1, 3), (2, 3), (3, 2)]).unwrap()
    }

    #[test]
    fn rows_from_d4() {
        assert_eq!(distances_from(&d4(), 0).unwrap(), vec![0, 1, 2, 2]);
        let m = distance_matrix(&d4());
        assert_eq!(m.row(0), &[0, 1, 2, 2]);
        assert_eq!(m.row(3), &[INF, INF, 1, 0]);
        assert_eq!(m.eccentricity(0), 2);
        assert_eq!(m.eccentricity(1), INF);
    }

    #[test]
    fn path_and_errors() {
        assert_eq!(distances_from(&Digraph::path(3), 2).unwrap(), vec![INF, INF, 0]);
        assert!(distances_from(&Digraph::path(3), 3).is_err());
    }

    #[test]
    fn complete_and_empty() {
        let m = distance_matrix(&Digraph::complete(3));
        for u in 0..3 {
            for v in 0..3 {
                assert_eq!(m.get(u, v), u32::from(u != v));
            }
        }
        let e = distance_matrix(&Digraph::empty(3));
        for u in 0..3 {
            for v in 0..3 {
                assert_eq!(e.get(u, v), if u == v { 0 } else { INF });
            }
        }
    }
}
