//! `(k,l)`-kernels: verification, the `(k+2)`-kernel construction for
//! k-quasi-transitive digraphs, exhaustive search, and the `(k+1)`-kernel hunt.
//!
//! A set `S` is `k`-independent when `d(u,v) >= k` for all distinct
//! `u, v` in `S` (unreachable counts as infinitely far), and `l`-absorbent when
//! every vertex outside `S` reaches `S` within `l` arcs.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::components::strong_components;
use crate::digraph::{Digraph, Vertex};
use crate::distance::{distance_matrix, DistanceMatrix, INFINITY};
use crate::error::{Error, Result};
use crate::kings::max_degree_within;
use crate::qt::{first_qt_violation, random_qt, GenConfig, OrientationRule};
use crate::Limits;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KernelStatus {
    Verified,
    Refuted,
}

/// Why a set is not a `(k,l)`-kernel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KernelWitness {
    /// Two members closer than the independence radius.
    TooClose { from: Vertex, to: Vertex, distance: u32 },
    /// A non-member farther than the absorbency radius from every member;
    /// `distance` is its distance to the nearest member.
    Unabsorbed { vertex: Vertex, distance: u32 },
}

impl KernelWitness {
    /// Re-checks the witness against a distance matrix.
    pub fn holds(&self, set: &[Vertex], indep: u32, absorb: u32, dist: &DistanceMatrix) -> bool {
        match *self {
            KernelWitness::TooClose { from, to, distance } => {
                from != to
                    && set.contains(&from)
                    && set.contains(&to)
                    && dist.get(from, to) == distance
                    && distance < indep
            }
            KernelWitness::Unabsorbed { vertex, distance } => {
                !set.contains(&vertex)
                    && set.iter().map(|&s| dist.get(vertex, s)).min().unwrap_or(INFINITY) == distance
                    && distance > absorb
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelCertificate {
    pub set: Vec<Vertex>,
    pub indep: u32,
    pub absorb: u32,
    pub status: KernelStatus,
    pub witness: Option<KernelWitness>,
}

impl KernelCertificate {
    pub fn is_verified(&self) -> bool {
        self.status == KernelStatus::Verified
    }
}

fn normalized(d: &Digraph, set: &[Vertex]) -> Result<Vec<Vertex>> {
    let mut s = set.to_vec();
    s.sort_unstable();
    s.dedup();
    for &v in &s {
        d.check_vertex(v)?;
    }
    Ok(s)
}

/// Checks whether `set` is an `(indep, absorb)`-kernel of `d`.
///
/// The first offending pair (in lexicographic order) or, failing that, the
/// first unabsorbed vertex is returned as the witness.
pub fn verify_kernel(d: &Digraph, set: &[Vertex], indep: u32, absorb: u32) -> Result<KernelCertificate> {
    if indep == 0 {
        return Err(Error::InvalidParameter("independence radius must be at least 1"));
    }
    let set = normalized(d, set)?;
    let dist = distance_matrix(d);
    let witness = find_kernel_witness(&set, indep, absorb, &dist);
    let status = if witness.is_some() { KernelStatus::Refuted } else { KernelStatus::Verified };
    Ok(KernelCertificate { set, indep, absorb, status, witness })
}

fn find_kernel_witness(set: &[Vertex], indep: u32, absorb: u32, dist: &DistanceMatrix) -> Option<KernelWitness> {
    for &u in set {
        for &v in set {
            if u != v && dist.get(u, v) < indep {
                return Some(KernelWitness::TooClose { from: u, to: v, distance: dist.get(u, v) });
            }
        }
    }
    let mut member = alloc::vec![false; dist.n()];
    for &s in set {
        member[s] = true;
    }
    for (w, &inside) in member.iter().enumerate() {
        if inside {
            continue;
        }
        let nearest = set.iter().map(|&s| dist.get(w, s)).min().unwrap_or(INFINITY);
        if nearest > absorb {
            return Some(KernelWitness::Unabsorbed { vertex: w, distance: nearest });
        }
    }
    None
}

/// The `(k+2)`-kernel of a k-quasi-transitive digraph built from the initial
/// components of the reverse digraph.
///
/// For each initial component `I` of the reverse digraph the vertex with the
/// largest out-degree inside `I` (reverse arcs, ties to the smallest id) is a
/// `(k+1)`-king of `I`; these vertices lie in distinct terminal components of
/// `d` and together absorb everything within `k+1`. The result is checked
/// before it is returned.
pub fn construct_kplus2_kernel(d: &Digraph, k: usize) -> Result<Vec<Vertex>> {
    if k < 2 {
        return Err(Error::InvalidParameter("k must be at least 2"));
    }
    let rev = d.reverse();
    let cond = strong_components(&rev);
    let mut member = alloc::vec![false; d.n()];
    let mut kernel = Vec::with_capacity(cond.initial.len());
    for &c in &cond.initial {
        let part = &cond.components[c];
        for &v in part {
            member[v] = true;
        }
        kernel.push(max_degree_within(&rev, part, &member));
        for &v in part {
            member[v] = false;
        }
    }
    kernel.sort_unstable();
    let cert = verify_kernel(d, &kernel, k as u32 + 2, k as u32 + 1)?;
    if !cert.is_verified() {
        return Err(Error::NotQuasiTransitiveInput { k, reason: "constructed set is not a (k+2)-kernel" });
    }
    Ok(kernel)
}

/// Bitmask tables for the subset search; vertex `v` is bit `v`.
struct KernelMasks {
    /// Members that may not share a kernel with `v`.
    conflict: Vec<u32>,
    /// Vertices that absorb `v`.
    absorbers: Vec<u32>,
}

impl KernelMasks {
    fn new(dist: &DistanceMatrix, indep: u32, absorb: u32) -> Self {
        let n = dist.n();
        let mut conflict = alloc::vec![0u32; n];
        let mut absorbers = alloc::vec![0u32; n];
        for u in 0..n {
            for v in 0..n {
                if u != v && (dist.get(u, v) < indep || dist.get(v, u) < indep) {
                    conflict[u] |= 1 << v;
                }
                if u != v && dist.get(u, v) <= absorb {
                    absorbers[u] |= 1 << v;
                }
            }
        }
        KernelMasks { conflict, absorbers }
    }

    fn absorbs_all(&self, set: u32) -> bool {
        self.absorbers.iter().enumerate().all(|(w, &a)| set & (1 << w) != 0 || a & set != 0)
    }

    /// Lexicographically first independent absorbent set of exactly `size`
    /// members, extending `chosen` with vertices `>= next`.
    fn search(&self, size: usize, next: usize, chosen: u32, count: usize) -> Option<u32> {
        if count == size {
            return self.absorbs_all(chosen).then_some(chosen);
        }
        let n = self.conflict.len();
        // Leave room for the remaining picks.
        for v in next..=(n - (size - count)) {
            if self.conflict[v] & chosen == 0 {
                if let Some(found) = self.search(size, v + 1, chosen | (1 << v), count + 1) {
                    return Some(found);
                }
            }
        }
        None
    }
}

/// A minimum-cardinality `(indep, absorb)`-kernel, or `None` if there is none.
///
/// Subsets are tried by size and then lexicographically, skipping any partial
/// set that already breaks independence.
pub fn exhaustive_kernel_search(d: &Digraph, indep: u32, absorb: u32, limits: &Limits) -> Result<Option<Vec<Vertex>>> {
    if indep == 0 {
        return Err(Error::InvalidParameter("independence radius must be at least 1"));
    }
    let cap = limits.kernel_search_cap.min(32);
    if d.n() > cap {
        return Err(Error::InstanceTooLarge { n: d.n(), cap });
    }
    let masks = KernelMasks::new(&distance_matrix(d), indep, absorb);
    for size in 0..=d.n() {
        if let Some(found) = masks.search(size, 0, 0, 0) {
            return Ok(Some((0..d.n()).filter(|&v| found & (1 << v) != 0).collect()));
        }
    }
    Ok(None)
}

/// Parameters of a `(k+1)`-kernel counterexample hunt.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HuntConfig {
    pub k: usize,
    pub trials: usize,
    pub n_min: usize,
    pub n_max: usize,
    pub p_min: f64,
    pub p_max: f64,
    pub base_seed: u64,
    pub rule: OrientationRule,
}

impl HuntConfig {
    pub fn new(k: usize, trials: usize, n_max: usize, base_seed: u64) -> Self {
        HuntConfig { k, trials, n_min: 2, n_max, p_min: 0.05, p_max: 0.45, base_seed, rule: OrientationRule::Random }
    }

    pub fn validate(&self, limits: &Limits) -> Result<()> {
        if self.k < 2 {
            return Err(Error::InvalidParameter("k must be at least 2"));
        }
        if self.n_max > limits.kernel_search_cap {
            return Err(Error::InstanceTooLarge { n: self.n_max, cap: limits.kernel_search_cap });
        }
        if !(0.0..=1.0).contains(&self.p_min) || !(0.0..=1.0).contains(&self.p_max) {
            return Err(Error::InvalidParameter("arc probability must lie in [0, 1]"));
        }
        Ok(())
    }

    /// Generator settings for one trial; depends only on the base seed and
    /// the trial index.
    pub fn trial_config(&self, trial: usize) -> GenConfig {
        let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(self.base_seed, trial as u64));
        let n = rng.gen_range(self.n_min..=self.n_max.max(self.n_min));
        let arc_prob = if self.p_max > self.p_min { rng.gen_range(self.p_min..=self.p_max) } else { self.p_min };
        GenConfig { n, k: self.k, arc_prob, seed: rng.gen(), rule: self.rule }
    }
}

/// Mixes a base seed and an index into an independent stream seed.
pub fn trial_seed(base: u64, index: u64) -> u64 {
    // splitmix64 finalizer
    let mut z = base ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub seed: u64,
    pub n: usize,
    pub arc_prob: f64,
    pub arcs: usize,
    /// Size of the smallest `(k+1, k)`-kernel; `None` if none exists or the
    /// trial failed.
    pub kernel_size: Option<usize>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HuntLedger {
    pub config: HuntConfig,
    /// k-quasi-transitive digraphs without a `(k+1)`-kernel.
    pub counterexamples: Vec<Digraph>,
    pub trials: Vec<TrialRecord>,
}

impl HuntLedger {
    /// Re-checks every listed counterexample from scratch.
    pub fn reverify(&self, limits: &Limits) -> Result<bool> {
        let k = self.config.k;
        for d in &self.counterexamples {
            if first_qt_violation(d, k, limits)?.is_some() {
                return Ok(false);
            }
            if exhaustive_kernel_search(d, k as u32 + 1, k as u32, limits)?.is_some() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Runs one hunt trial; trials are independent and may run in any order.
pub fn hunt_trial(cfg: &HuntConfig, trial: usize, limits: &Limits) -> (TrialRecord, Option<Digraph>) {
    let gen = cfg.trial_config(trial);
    let mut record = TrialRecord {
        trial,
        seed: gen.seed,
        n: gen.n,
        arc_prob: gen.arc_prob,
        arcs: 0,
        kernel_size: None,
        error: None,
    };
    let d = match random_qt(&gen, limits) {
        Ok(d) => d,
        Err(e) => {
            record.error = Some(e.to_string());
            return (record, None);
        }
    };
    record.arcs = d.arc_count();
    match exhaustive_kernel_search(&d, cfg.k as u32 + 1, cfg.k as u32, limits) {
        Ok(Some(kernel)) => {
            record.kernel_size = Some(kernel.len());
            (record, None)
        }
        Ok(None) => (record, Some(d)),
        Err(e) => {
            record.error = Some(e.to_string());
            (record, None)
        }
    }
}

/// Assembles a ledger from trial results in any order.
pub fn assemble_ledger(cfg: HuntConfig, mut results: Vec<(TrialRecord, Option<Digraph>)>) -> HuntLedger {
    results.sort_by_key(|(r, _)| r.trial);
    let mut trials = Vec::with_capacity(results.len());
    let mut counterexamples = Vec::new();
    for (record, cx) in results {
        trials.push(record);
        counterexamples.extend(cx);
    }
    HuntLedger { config: cfg, counterexamples, trials }
}

/// Searches random k-quasi-transitive digraphs for one without a
/// `(k+1)`-kernel. Sequential; see [`hunt_trial`] for parallel drivers.
pub fn hunt_conjecture(cfg: &HuntConfig, limits: &Limits) -> Result<HuntLedger> {
    cfg.validate(limits)?;
    let results = (0..cfg.trials).map(|t| hunt_trial(cfg, t, limits)).collect();
    Ok(assemble_ledger(*cfg, results))
}
