//! Parallel, timed drivers for the corpus suite and the conjecture hunt.
//!
//! Work is split per instance (suite) or per trial (hunt) with rayon; the
//! merged results are identical to the sequential versions in `qk-core`.

use std::time::{Duration, Instant};

use qk_core::kernels::{assemble_ledger, hunt_trial, HuntConfig, HuntLedger};
use qk_core::oracle::suite::{evaluate_instance, SuiteConfig, SuiteReport, SuiteSummary};
use qk_core::Limits;
use rayon::prelude::*;

/// A suite report with the wall time spent on each `k`.
#[derive(Clone, Debug)]
pub struct TimedSuite {
    pub report: SuiteReport,
    pub elapsed: Vec<Duration>,
}

pub fn run_suite(cfg: &SuiteConfig, limits: &Limits) -> qk_core::error::Result<TimedSuite> {
    let mut summaries = Vec::with_capacity(cfg.k_list.len());
    let mut elapsed = Vec::with_capacity(cfg.k_list.len());
    for &k in &cfg.k_list {
        let start = Instant::now();
        let specs: Vec<_> = cfg.corpus(k).specs().collect();
        let mut total = specs.par_iter().map(|spec| evaluate_instance(spec, limits)).try_reduce(
            || SuiteSummary::empty(k),
            |mut a, b| {
                a.merge(b);
                Ok(a)
            },
        )?;
        total.sort();
        for c in &mut total.checks {
            c.elapsed = Duration::ZERO;
        }
        summaries.push(total);
        elapsed.push(start.elapsed());
    }
    Ok(TimedSuite { report: SuiteReport { config: cfg.clone(), summaries }, elapsed })
}

pub fn hunt(cfg: &HuntConfig, limits: &Limits) -> qk_core::error::Result<HuntLedger> {
    cfg.validate(limits)?;
    let results = (0..cfg.trials).into_par_iter().map(|t| hunt_trial(cfg, t, limits)).collect();
    Ok(assemble_ledger(*cfg, results))
}
