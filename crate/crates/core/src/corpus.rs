//! Seeded corpora of k-quasi-transitive digraphs.
//!
//! Small random closures rarely contain pairs at distance `k+2`, which is
//! where most of the structural lemmas have content. Besides plain random
//! seeds the generator therefore also starts from a long directed path with a
//! sprinkling of extra arcs. Closing such a seed with arcs that point from
//! larger to smaller ids keeps the path's endpoints far apart.

use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::digraph::{Digraph, Vertex};
use crate::error::Result;
use crate::kernels::trial_seed;
use crate::qt::{qt_closure, OrientationRule};
use crate::Limits;

/// How the arcs fed to the closure are drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeedShape {
    /// Independent arcs with probability `arc_prob`.
    Random,
    /// The path `0 -> 1 -> ... -> path_len-1` plus independent arcs with
    /// probability `arc_prob`. Vertices are shuffled after the closure.
    LongPath { path_len: usize },
}

/// One corpus member's recipe.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub index: usize,
    pub n: usize,
    pub k: usize,
    pub arc_prob: f64,
    pub shape: SeedShape,
    pub seed: u64,
    pub rule: OrientationRule,
}

impl InstanceSpec {
    pub fn generate(&self, limits: &Limits) -> Result<Digraph> {
        let n = self.n;
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut base = Digraph::empty(n);
        if let SeedShape::LongPath { path_len } = self.shape {
            for v in 1..path_len.min(n) {
                base.insert_arc(v - 1, v);
            }
        }
        for u in 0..n {
            for v in 0..n {
                if u != v && rng.gen_bool(self.arc_prob) {
                    base.insert_arc(u, v);
                }
            }
        }
        let closed = qt_closure(&base, self.k, self.rule, rng.gen(), limits)?;
        let mut perm: Vec<Vertex> = (0..n).collect();
        perm.shuffle(&mut rng);
        closed.relabel(&perm)
    }
}

/// Corpus recipe for one value of `k`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorpusConfig {
    pub k: usize,
    pub instances: usize,
    pub n_min: usize,
    pub n_max: usize,
    /// Arc probability range for [`SeedShape::Random`] instances.
    pub p_min: f64,
    pub p_max: f64,
    /// Extra-arc probability for [`SeedShape::LongPath`] instances.
    pub path_noise: f64,
    /// Share of instances seeded from a long path.
    pub long_path_share: f64,
    /// Share of long-path instances closed with [`OrientationRule::Descending`].
    pub descending_share: f64,
    pub base_seed: u64,
    pub rule: OrientationRule,
}

impl CorpusConfig {
    /// Defaults used by the lemma suite: up to 10 vertices, half of the
    /// instances seeded from long paths.
    pub fn standard(k: usize, instances: usize, base_seed: u64) -> Self {
        CorpusConfig {
            k,
            instances,
            n_min: 2,
            n_max: 10,
            p_min: 0.05,
            p_max: 0.4,
            path_noise: 0.04,
            long_path_share: 0.5,
            descending_share: 0.7,
            base_seed,
            rule: OrientationRule::Random,
        }
    }

    pub fn instance(&self, index: usize) -> InstanceSpec {
        let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(self.base_seed ^ (self.k as u64) << 48, index as u64));
        let n_max = self.n_max.max(self.n_min);
        let long = rng.gen_bool(self.long_path_share.clamp(0.0, 1.0));
        // A path seed needs k+3 vertices to reach distance k+2.
        let n_min = if long { (self.k + 3).clamp(self.n_min, n_max) } else { self.n_min };
        let n = rng.gen_range(n_min..=n_max);
        let (shape, arc_prob) = if long {
            let lo = (self.k + 3).min(n);
            (SeedShape::LongPath { path_len: rng.gen_range(lo..=n) }, self.path_noise)
        } else {
            let p = if self.p_max > self.p_min { rng.gen_range(self.p_min..=self.p_max) } else { self.p_min };
            (SeedShape::Random, p)
        };
        let rule = if long && rng.gen_bool(self.descending_share.clamp(0.0, 1.0)) {
            OrientationRule::Descending
        } else {
            self.rule
        };
        InstanceSpec { index, n, k: self.k, arc_prob, shape, seed: rng.gen(), rule }
    }

    pub fn specs(&self) -> impl Iterator<Item = InstanceSpec> + '_ {
        (0..self.instances).map(move |i| self.instance(i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qt::is_k_quasi_transitive;

    #[test]
    fn corpus_is_deterministic_and_qt() {
        let cfg = CorpusConfig::standard(3, 12, 7);
        let lim = Limits::default();
        for spec in cfg.specs() {
            let a = spec.generate(&lim).unwrap();
            assert_eq!(a, cfg.instance(spec.index).generate(&lim).unwrap());
            assert!(is_k_quasi_transitive(&a, 3, &lim).unwrap().is_empty());
        }
    }
}
