//! Recognition, generation and composition of k-quasi-transitive digraphs.
//!
//! "Path" always means a directed path with pairwise distinct vertices. A
//! digraph is k-quasi-transitive when the endpoints of every path with exactly
//! `k` arcs are adjacent in at least one direction.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::digraph::{Digraph, Vertex};
use crate::error::{Error, Result};
use crate::Limits;

/// A path with `k` arcs whose endpoints are non-adjacent.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QtViolation {
    pub path: Vec<Vertex>,
}

impl QtViolation {
    pub fn start(&self) -> Vertex {
        self.path[0]
    }

    pub fn end(&self) -> Vertex {
        self.path[self.path.len() - 1]
    }

    /// Re-checks the witness against `d`: a vertex-distinct path whose
    /// endpoints are joined by no arc.
    pub fn holds_in(&self, d: &Digraph) -> bool {
        if self.path.len() < 2 || self.path.iter().any(|&v| v >= d.n()) {
            return false;
        }
        let mut seen = alloc::vec![false; d.n()];
        for &v in &self.path {
            if core::mem::replace(&mut seen[v], true) {
                return false;
            }
        }
        self.path.windows(2).all(|w| d.has_arc(w[0], w[1])) && !d.adjacent(self.start(), self.end())
    }
}

/// Direction of the arcs added by [`qt_closure`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrientationRule {
    /// Seeded coin flip per added arc.
    #[default]
    Random,
    /// Always from the first vertex of the violating path to the last.
    Forward,
    /// From the larger vertex id to the smaller one.
    Descending,
}

impl core::str::FromStr for OrientationRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random" => Ok(OrientationRule::Random),
            "forward" => Ok(OrientationRule::Forward),
            "descending" => Ok(OrientationRule::Descending),
            _ => Err(Error::InvalidParameter("orientation rule must be `random`, `forward` or `descending`")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenConfig {
    pub n: usize,
    pub k: usize,
    pub arc_prob: f64,
    pub seed: u64,
    pub rule: OrientationRule,
}

impl GenConfig {
    pub fn validate(&self) -> Result<()> {
        check_k(self.k)?;
        if !(0.0..=1.0).contains(&self.arc_prob) {
            return Err(Error::InvalidParameter("arc probability must lie in [0, 1]"));
        }
        Ok(())
    }
}

fn check_k(k: usize) -> Result<()> {
    if k < 2 {
        Err(Error::InvalidParameter("k must be at least 2"))
    } else {
        Ok(())
    }
}

fn check_cap(d: &Digraph, limits: &Limits) -> Result<()> {
    if d.n() > limits.path_enum_cap {
        Err(Error::InstanceTooLarge { n: d.n(), cap: limits.path_enum_cap })
    } else {
        Ok(())
    }
}

/// Calls `visit` on every path with exactly `len` arcs starting at `start`,
/// in lexicographic order. `visit` returns false to stop the search; the
/// function then returns false as well.
pub(crate) fn for_each_path_from<F>(d: &Digraph, start: Vertex, len: usize, visit: &mut F) -> bool
where
    F: FnMut(&[Vertex]) -> bool,
{
    let mut on_path = alloc::vec![false; d.n()];
    let mut path: Vec<Vertex> = Vec::with_capacity(len + 1);
    // next neighbor position for each vertex on the path
    let mut cursor: Vec<usize> = Vec::with_capacity(len + 1);
    path.push(start);
    cursor.push(0);
    on_path[start] = true;
    if len == 0 {
        return visit(&path);
    }
    while let Some(&top) = path.last() {
        let depth = path.len() - 1;
        let pos = cursor[depth];
        let nbrs = d.out_neighbors(top);
        if depth == len || pos >= nbrs.len() {
            if depth == len && !visit(&path) {
                return false;
            }
            on_path[top] = false;
            path.pop();
            cursor.pop();
            continue;
        }
        cursor[depth] += 1;
        let w = nbrs[pos];
        if !on_path[w] {
            on_path[w] = true;
            path.push(w);
            cursor.push(0);
        }
    }
    true
}

/// Whether a path with exactly `k` arcs runs from `u` to `v`.
pub fn has_k_path(d: &Digraph, u: Vertex, v: Vertex, k: usize, limits: &Limits) -> Result<bool> {
    d.check_vertex(u)?;
    d.check_vertex(v)?;
    if k == 0 {
        return Err(Error::InvalidParameter("path length must be at least 1"));
    }
    check_cap(d, limits)?;
    if u == v {
        return Ok(false);
    }
    let mut found = false;
    for_each_path_from(d, u, k, &mut |p: &[Vertex]| {
        found = p[k] == v;
        !found
    });
    Ok(found)
}

/// All k-quasi-transitivity violations, one per offending path, in
/// lexicographic path order. An empty list means `d` is k-quasi-transitive.
pub fn is_k_quasi_transitive(d: &Digraph, k: usize, limits: &Limits) -> Result<Vec<QtViolation>> {
    check_k(k)?;
    check_cap(d, limits)?;
    let mut out = Vec::new();
    for u in d.vertices() {
        for_each_path_from(d, u, k, &mut |p: &[Vertex]| {
            if !d.adjacent(p[0], p[k]) {
                out.push(QtViolation { path: p.to_vec() });
            }
            true
        });
    }
    Ok(out)
}

/// Like [`is_k_quasi_transitive`] but stops at the first violation.
pub fn first_qt_violation(d: &Digraph, k: usize, limits: &Limits) -> Result<Option<QtViolation>> {
    check_k(k)?;
    check_cap(d, limits)?;
    Ok(first_violation_unchecked(d, k))
}

pub(crate) fn first_violation_unchecked(d: &Digraph, k: usize) -> Option<QtViolation> {
    let mut found = None;
    for u in d.vertices() {
        for_each_path_from(d, u, k, &mut |p: &[Vertex]| {
            if d.adjacent(p[0], p[k]) {
                true
            } else {
                found = Some(QtViolation { path: p.to_vec() });
                false
            }
        });
        if found.is_some() {
            break;
        }
    }
    found
}

/// Endpoint pairs of violating paths, each pair once, in order of the first
/// violating path that produced it.
fn violating_pairs(d: &Digraph, k: usize) -> Vec<(Vertex, Vertex)> {
    let n = d.n();
    let mut seen = alloc::vec![false; n * n];
    let mut pairs = Vec::new();
    for u in d.vertices() {
        for_each_path_from(d, u, k, &mut |p: &[Vertex]| {
            let v = p[k];
            if !d.adjacent(u, v) && !seen[u * n + v] {
                seen[u * n + v] = true;
                pairs.push((u, v));
            }
            true
        });
    }
    pairs
}

/// Adds arcs until `d` becomes k-quasi-transitive.
///
/// Each round enumerates the current violations in lexicographic order and
/// joins the endpoints of every one that is still non-adjacent. Arcs are only
/// added, so the loop ends after at most `n(n-1)` insertions.
pub fn qt_closure(d: &Digraph, k: usize, rule: OrientationRule, seed: u64, limits: &Limits) -> Result<Digraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    closure_with(d.clone(), k, rule, &mut rng, limits)
}

fn closure_with<R: Rng>(
    mut d: Digraph,
    k: usize,
    rule: OrientationRule,
    rng: &mut R,
    limits: &Limits,
) -> Result<Digraph> {
    check_k(k)?;
    check_cap(&d, limits)?;
    loop {
        let pairs = violating_pairs(&d, k);
        if pairs.is_empty() {
            return Ok(d);
        }
        for (u, v) in pairs {
            if d.adjacent(u, v) {
                continue;
            }
            let forward = match rule {
                OrientationRule::Forward => true,
                OrientationRule::Descending => u > v,
                OrientationRule::Random => rng.gen_bool(0.5),
            };
            if forward {
                d.insert_arc(u, v);
            } else {
                d.insert_arc(v, u);
            }
        }
    }
}

/// Random loop-free digraph with independent arcs of probability
/// `cfg.arc_prob`, closed under [`qt_closure`]. Deterministic in `cfg.seed`.
pub fn random_qt(cfg: &GenConfig, limits: &Limits) -> Result<Digraph> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut d = Digraph::empty(cfg.n);
    for u in 0..cfg.n {
        for v in 0..cfg.n {
            if u != v && rng.gen_bool(cfg.arc_prob) {
                d.insert_arc(u, v);
            }
        }
    }
    closure_with(d, cfg.k, cfg.rule, &mut rng, limits)
}

/// Composition `Q[H_0, ..., H_{q-1}]`.
///
/// Block `i` holds a copy of `parts[i]`; blocks are laid out consecutively.
/// Every vertex of block `i` dominates every vertex of block `j` whenever
/// `i -> j` in `q`. Returns the digraph and the block index of each vertex.
pub fn compose(q: &Digraph, parts: &[Digraph]) -> Result<(Digraph, Vec<usize>)> {
    if parts.len() != q.n() {
        return Err(Error::ArityMismatch { expected: q.n(), got: parts.len() });
    }
    let mut offset = Vec::with_capacity(parts.len() + 1);
    offset.push(0usize);
    for p in parts {
        offset.push(offset[offset.len() - 1] + p.n());
    }
    let total = offset[parts.len()];
    let mut block_of = Vec::with_capacity(total);
    for (i, p) in parts.iter().enumerate() {
        block_of.extend(core::iter::repeat_n(i, p.n()));
    }
    let mut d = Digraph::empty(total);
    for (i, p) in parts.iter().enumerate() {
        for (u, v) in p.arcs() {
            d.insert_arc(offset[i] + u, offset[i] + v);
        }
    }
    for (i, j) in q.arcs() {
        for u in offset[i]..offset[i + 1] {
            for v in offset[j]..offset[j + 1] {
                d.insert_arc(u, v);
            }
        }
    }
    Ok((d, block_of))
}
