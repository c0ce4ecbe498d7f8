//! Corpus-wide run of every checker plus the king and kernel invariants.
//!
//! [`evaluate_instance`] handles one corpus member and [`SuiteSummary::merge`]
//! folds summaries in any order, so drivers are free to parallelize.

use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::{CheckId, CheckResult, InstanceRef};
use crate::corpus::{CorpusConfig, InstanceSpec};
use crate::digraph::{Digraph, Vertex};
use crate::error::Result;
use crate::kernels::{construct_kplus2_kernel, verify_kernel};
use crate::kings::{census, find_kplus1_king_fast, meets_degree_threshold, AuditRow, Outcome};
use crate::qt::first_qt_violation;
use crate::Limits;

/// Smallest share of instances on which every checker must test something.
pub const DEFAULT_VACUITY_FLOOR: f64 = 0.05;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub k_list: Vec<usize>,
    /// Corpus size per `k`.
    pub instances: usize,
    pub base_seed: u64,
    pub vacuity_floor: f64,
}

impl SuiteConfig {
    pub fn new(k_list: Vec<usize>, instances: usize, base_seed: u64) -> Self {
        SuiteConfig { k_list, instances, base_seed, vacuity_floor: DEFAULT_VACUITY_FLOOR }
    }

    pub fn corpus(&self, k: usize) -> CorpusConfig {
        CorpusConfig::standard(k, self.instances, self.base_seed)
    }
}

/// Invariant outside the five checkers that an instance can break.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    /// The generator produced a digraph that is not k-quasi-transitive.
    QuasiTransitive,
    /// A `(k+1)`-king exists exactly when the initial component is unique.
    KingIffUniqueInitial,
    /// The degree-selected vertex passes its BFS check.
    FastFinder,
    /// Every vertex meeting the degree threshold is a `(k+1)`-king.
    DegreeThreshold,
    CountingAudit,
    /// The constructed set is a `(k+2, k+1)`-kernel.
    KernelConstruction,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exception {
    pub property: Property,
    pub k: usize,
    pub instance: InstanceRef,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex: Option<Vertex>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub audit: Option<AuditRow>,
}

/// Aggregate over the corpus of one `k`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub k: usize,
    pub instances: usize,
    pub unique_initial: usize,
    pub fast_verified: usize,
    pub threshold_vertices: usize,
    pub threshold_confirmed: usize,
    /// Audit rows that carried a verdict.
    pub audit_rows: usize,
    pub kernels_verified: usize,
    pub checks: Vec<CheckResult>,
    pub exceptions: Vec<Exception>,
}

impl SuiteSummary {
    pub fn empty(k: usize) -> Self {
        SuiteSummary {
            k,
            instances: 0,
            unique_initial: 0,
            fast_verified: 0,
            threshold_vertices: 0,
            threshold_confirmed: 0,
            audit_rows: 0,
            kernels_verified: 0,
            checks: CheckId::ALL.iter().map(|&c| CheckResult::empty(c, k)).collect(),
            exceptions: Vec::new(),
        }
    }

    pub fn merge(&mut self, other: SuiteSummary) {
        debug_assert_eq!(self.k, other.k);
        self.instances += other.instances;
        self.unique_initial += other.unique_initial;
        self.fast_verified += other.fast_verified;
        self.threshold_vertices += other.threshold_vertices;
        self.threshold_confirmed += other.threshold_confirmed;
        self.audit_rows += other.audit_rows;
        self.kernels_verified += other.kernels_verified;
        for (mine, theirs) in self.checks.iter_mut().zip(other.checks) {
            mine.merge(theirs);
        }
        self.exceptions.extend(other.exceptions);
    }

    /// Restores corpus order after an unordered merge.
    pub fn sort(&mut self) {
        self.exceptions.sort_by_key(|e| (e.instance.index, e.property, e.vertex));
        for c in &mut self.checks {
            c.violations.sort_by_key(|v| v.instance.as_ref().map(|i| i.index));
        }
    }

    pub fn exceptions_of(&self, property: Property) -> impl Iterator<Item = &Exception> {
        self.exceptions.iter().filter(move |e| e.property == property)
    }

    pub fn violations(&self) -> usize {
        self.checks.iter().map(|c| c.violations.len()).sum()
    }

    /// Checkers that tested something on fewer than `floor` of the instances.
    pub fn vacuous_checks(&self, floor: f64) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(move |c| c.instances_checked > 0 && c.applicable_fraction() < floor)
    }

    pub fn passed(&self, floor: f64) -> bool {
        self.exceptions.is_empty() && self.violations() == 0 && self.vacuous_checks(floor).next().is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub config: SuiteConfig,
    pub summaries: Vec<SuiteSummary>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.summaries.iter().all(|s| s.passed(self.config.vacuity_floor))
    }
}

/// Generates one corpus member and runs everything on it.
pub fn evaluate_instance(spec: &InstanceSpec, limits: &Limits) -> Result<SuiteSummary> {
    let d = spec.generate(limits)?;
    Ok(evaluate_digraph(&d, spec.k, spec.index, spec.seed, limits))
}

/// Runs every checker and invariant on `d`; `index` and `seed` only label
/// the findings.
pub fn evaluate_digraph(d: &Digraph, k: usize, index: usize, seed: u64, limits: &Limits) -> SuiteSummary {
    let here = || InstanceRef { index, seed, digraph: d.clone() };
    let mut s = SuiteSummary::empty(k);
    s.instances = 1;
    let flag = |s: &mut SuiteSummary, property, vertex, audit| {
        s.exceptions.push(Exception { property, k, instance: here(), vertex, audit });
    };

    if !matches!(first_qt_violation(d, k, limits), Ok(None)) {
        flag(&mut s, Property::QuasiTransitive, None, None);
    }

    s.checks = CheckId::ALL
        .iter()
        .map(|c| {
            let mut r = c.run_unchecked(d, k);
            for v in &mut r.violations {
                v.instance = Some(here());
            }
            r
        })
        .collect();

    let report = match census(d, k) {
        Ok(r) => r,
        Err(_) => {
            flag(&mut s, Property::CountingAudit, None, None);
            return s;
        }
    };
    let radius = k as u32 + 1;
    if report.kings(radius).is_empty() == report.unique_initial {
        flag(&mut s, Property::KingIffUniqueInitial, None, None);
    }
    for row in &report.counting_audit {
        match row.outcome {
            Outcome::Info => {}
            Outcome::Pass => s.audit_rows += 1,
            Outcome::Fail => {
                s.audit_rows += 1;
                flag(&mut s, Property::CountingAudit, None, Some(row.clone()));
            }
        }
    }

    if let Some(c) = &report.initial_component {
        s.unique_initial = 1;
        match find_kplus1_king_fast(d, k) {
            Ok(Some(v)) if report.ecc_out[v] <= radius => s.fast_verified = 1,
            Ok(v) => flag(&mut s, Property::FastFinder, v, None),
            Err(_) => flag(&mut s, Property::FastFinder, None, None),
        }
        let mut member = alloc::vec![false; d.n()];
        for &v in c {
            member[v] = true;
        }
        let degree = |v: Vertex| d.out_neighbors(v).iter().filter(|&&w| member[w]).count();
        let max = c.iter().map(|&v| degree(v)).max().unwrap_or(0);
        for &v in c {
            if meets_degree_threshold(k, degree(v), max) {
                s.threshold_vertices += 1;
                if report.ecc_out[v] <= radius {
                    s.threshold_confirmed += 1;
                } else {
                    flag(&mut s, Property::DegreeThreshold, Some(v), None);
                }
            }
        }
    }

    let kernel_ok = construct_kplus2_kernel(d, k)
        .and_then(|set| verify_kernel(d, &set, k as u32 + 2, k as u32 + 1))
        .is_ok_and(|cert| cert.is_verified());
    if kernel_ok {
        s.kernels_verified = 1;
    } else {
        flag(&mut s, Property::KernelConstruction, None, None);
    }
    s
}

/// Sequential suite run; results do not depend on evaluation order.
pub fn run_suite(cfg: &SuiteConfig, limits: &Limits) -> Result<SuiteReport> {
    let mut summaries = Vec::with_capacity(cfg.k_list.len());
    for &k in &cfg.k_list {
        let mut total = SuiteSummary::empty(k);
        for spec in cfg.corpus(k).specs() {
            total.merge(evaluate_instance(&spec, limits)?);
        }
        total.sort();
        summaries.push(total);
    }
    Ok(SuiteReport { config: cfg.clone(), summaries })
}
