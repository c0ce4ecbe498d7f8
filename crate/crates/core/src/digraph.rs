//! Loop-free digraphs on dense vertex ids.

use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Vertex id; a digraph on `n` vertices uses ids `0..n`.
pub type Vertex = usize;

/// A finite digraph without loops or repeated arcs in the same direction.
///
/// Opposite arcs (digons) are allowed. Out-neighbor lists are kept sorted, so
/// two digraphs with the same arc set compare equal.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawDigraph", into = "RawDigraph")]
pub struct Digraph {
    out: Vec<Vec<Vertex>>,
    arc_count: usize,
}

#[derive(Serialize, Deserialize)]
struct RawDigraph {
    n: usize,
    arcs: Vec<(Vertex, Vertex)>,
}

impl TryFrom<RawDigraph> for Digraph {
    type Error = Error;

    fn try_from(raw: RawDigraph) -> Result<Self> {
        Digraph::build(raw.n, &raw.arcs)
    }
}

impl From<Digraph> for RawDigraph {
    fn from(d: Digraph) -> Self {
        RawDigraph { n: d.n(), arcs: d.arcs().collect() }
    }
}

impl Digraph {
    /// Digraph on `n` vertices with no arcs.
    pub fn empty(n: usize) -> Self {
        Digraph { out: alloc::vec![Vec::new(); n], arc_count: 0 }
    }

    /// Builds a digraph from an arc list, rejecting loops, repeated arcs and
    /// endpoints outside `0..n`.
    pub fn build(n: usize, arcs: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut d = Digraph::empty(n);
        for &(u, v) in arcs {
            d.check_vertex(u)?;
            d.check_vertex(v)?;
            if u == v {
                return Err(Error::LoopArc(u));
            }
            if !d.insert_arc(u, v) {
                return Err(Error::DuplicateArc(u, v));
            }
        }
        Ok(d)
    }

    /// Complete digraph: every ordered pair of distinct vertices is an arc.
    pub fn complete(n: usize) -> Self {
        let out: Vec<Vec<Vertex>> = (0..n).map(|u| (0..n).filter(|&v| v != u).collect()).collect();
        Digraph { out, arc_count: n * n.saturating_sub(1) }
    }

    /// Directed cycle `0 -> 1 -> ... -> n-1 -> 0`.
    pub fn cycle(n: usize) -> Self {
        let mut d = Digraph::empty(n);
        if n >= 2 {
            for u in 0..n {
                d.insert_arc(u, (u + 1) % n);
            }
        }
        d
    }

    /// Directed path `0 -> 1 -> ... -> n-1`.
    pub fn path(n: usize) -> Self {
        let mut d = Digraph::empty(n);
        for u in 1..n {
            d.insert_arc(u - 1, u);
        }
        d
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.out.len()
    }

    #[inline]
    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    pub fn vertices(&self) -> core::ops::Range<Vertex> {
        0..self.n()
    }

    /// Sorted out-neighbors of `v`.
    #[inline]
    pub fn out_neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.out[v]
    }

    #[inline]
    pub fn out_degree(&self, v: Vertex) -> usize {
        self.out[v].len()
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        let mut deg = alloc::vec![0; self.n()];
        for (_, v) in self.arcs() {
            deg[v] += 1;
        }
        deg
    }

    /// Maximum out-degree, or 0 for the empty digraph.
    pub fn max_out_degree(&self) -> usize {
        self.out.iter().map(Vec::len).max().unwrap_or(0)
    }

    #[inline]
    pub fn has_arc(&self, u: Vertex, v: Vertex) -> bool {
        self.out[u].binary_search(&v).is_ok()
    }

    /// True when `u` and `v` are joined by an arc in at least one direction.
    #[inline]
    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.has_arc(u, v) || self.has_arc(v, u)
    }

    /// Arcs in lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.out.iter().enumerate().flat_map(|(u, nbrs)| nbrs.iter().map(move |&v| (u, v)))
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n() })
        }
    }

    /// Inserts `u -> v`, returning false when it was already present.
    /// Callers guarantee `u != v` and both ids are in range.
    pub(crate) fn insert_arc(&mut self, u: Vertex, v: Vertex) -> bool {
        debug_assert!(u != v);
        match self.out[u].binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.out[u].insert(pos, v);
                self.arc_count += 1;
                true
            }
        }
    }

    /// The reverse digraph: same vertices, every arc flipped.
    pub fn reverse(&self) -> Digraph {
        let mut out = alloc::vec![Vec::new(); self.n()];
        // Visiting tails in increasing order keeps every list sorted.
        for (u, v) in self.arcs() {
            out[v].push(u);
        }
        Digraph { out, arc_count: self.arc_count }
    }

    /// True when every pair of distinct vertices is adjacent.
    pub fn is_semicomplete(&self) -> bool {
        self.first_non_adjacent_pair().is_none()
    }

    pub(crate) fn first_non_adjacent_pair(&self) -> Option<(Vertex, Vertex)> {
        for u in self.vertices() {
            for v in u + 1..self.n() {
                if !self.adjacent(u, v) {
                    return Some((u, v));
                }
            }
        }
        None
    }

    /// Renames vertex `v` to `perm[v]`; `perm` must be a permutation of `0..n`.
    pub fn relabel(&self, perm: &[Vertex]) -> Result<Digraph> {
        if perm.len() != self.n() {
            return Err(Error::InvalidParameter("relabeling must cover every vertex"));
        }
        let mut seen = alloc::vec![false; self.n()];
        for &p in perm {
            self.check_vertex(p)?;
            if core::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidParameter("relabeling is not a permutation"));
            }
        }
        let mut out = alloc::vec![Vec::new(); self.n()];
        for (u, v) in self.arcs() {
            out[perm[u]].push(perm[v]);
        }
        for list in &mut out {
            list.sort_unstable();
        }
        Ok(Digraph { out, arc_count: self.arc_count })
    }

    /// Subdigraph induced by `subset`.
    ///
    /// The subset is sorted and deduplicated; new vertex `i` corresponds to
    /// `remap[i]` in `self`.
    pub fn induced(&self, subset: &[Vertex]) -> Result<(Digraph, Vec<Vertex>)> {
        let mut remap: Vec<Vertex> = subset.to_vec();
        remap.sort_unstable();
        remap.dedup();
        for &v in &remap {
            self.check_vertex(v)?;
        }
        let mut new_id = alloc::vec![usize::MAX; self.n()];
        for (i, &v) in remap.iter().enumerate() {
            new_id[v] = i;
        }
        let mut sub = Digraph::empty(remap.len());
        for (i, &v) in remap.iter().enumerate() {
            let nbrs: Vec<Vertex> = self.out[v].iter().map(|&w| new_id[w]).filter(|&w| w != usize::MAX).collect();
            sub.arc_count += nbrs.len();
            sub.out[i] = nbrs;
        }
        Ok((sub, remap))
    }
}
