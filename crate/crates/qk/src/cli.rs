//! Argument parsing and subcommand dispatch.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Parser, Subcommand};
use qk_core::kernels::{exhaustive_kernel_search, verify_kernel, HuntConfig, KernelCertificate, KernelWitness};
use qk_core::kings::{all_r_kings, census_checked, find_kplus1_king_checked, Bound, Outcome as Verdict};
use qk_core::oracle::suite::{Property, SuiteConfig};
use qk_core::qt::{first_qt_violation, is_k_quasi_transitive, random_qt, GenConfig, OrientationRule};
use qk_core::{kernels, Digraph, Limits, Vertex, INFINITY};
use serde::Serialize;

use crate::drive;
use crate::edgelist;
use crate::error::{CliError, ExitCode};
use crate::report::{config_digest, JsonReport};

/// Environment variable overriding [`Limits::path_enum_cap`].
pub const ENUM_CAP_VAR: &str = "QK_ENUM_CAP";

#[derive(Debug, Parser)]
#[command(name = "qk", version, about = "Kings, kernels and lemma checks for k-quasi-transitive digraphs")]
pub struct Cli {
    /// Print the JSON report instead of the text summary.
    #[arg(long, global = true)]
    pub json: bool,
    /// Also write the JSON report to FILE.
    #[arg(long, global = true, value_name = "FILE")]
    pub report: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Test k-quasi-transitivity; exits 1 and lists violating paths if it fails.
    Check {
        file: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// List (k+1)-kings, or run the degree-based finder or the full census.
    Kings {
        file: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, conflicts_with = "census")]
        fast: bool,
        #[arg(long)]
        census: bool,
    },
    /// Construct, verify or search for (indep, absorb)-kernels.
    #[command(group(ArgGroup::new("mode").required(true).args(["construct", "verify", "exhaustive"])))]
    Kernel {
        file: PathBuf,
        #[arg(long)]
        k: Option<usize>,
        /// Build the (k+2)-kernel and certify it.
        #[arg(long)]
        construct: bool,
        /// Comma-separated vertex set to certify.
        #[arg(long, value_name = "S")]
        verify: Option<String>,
        /// Smallest kernel by exhaustive search.
        #[arg(long)]
        exhaustive: bool,
        /// Independence radius; defaults to k+2 (verify) or k+1 (exhaustive).
        #[arg(long)]
        indep: Option<u32>,
        /// Absorbency radius; defaults to k+1 (verify) or k (exhaustive).
        #[arg(long)]
        absorb: Option<u32>,
    },
    /// Write a random k-quasi-transitive digraph as an edge list.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0.2)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// random, forward or descending
        #[arg(long, default_value = "random")]
        rule: OrientationRule,
        #[arg(short = 'o', long = "output", value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// Search random k-quasi-transitive digraphs for one without a (k+1)-kernel.
    Hunt {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 500)]
        trials: usize,
        #[arg(long, default_value_t = 9)]
        n_max: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run every checker and invariant over a seeded corpus.
    Lemmas {
        /// Comma-separated values of k; empty for none.
        #[arg(long, default_value = "2,3,4,5,6")]
        k_list: String,
        /// Corpus size per k.
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
    },
}

/// What a command produced.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub exit: ExitCode,
    pub text: String,
    pub report: JsonReport,
    /// Extra bytes for `gen` without `-o`: the edge list itself.
    pub stdout_payload: Option<String>,
}

/// [`Limits`] with the enumeration cap taken from the environment if set.
pub fn limits_from_env(value: Option<OsString>) -> Result<Limits, CliError> {
    let mut limits = Limits::default();
    if let Some(raw) = value {
        let cap = raw
            .to_str()
            .and_then(|s| s.trim().parse::<usize>().ok())
            .ok_or_else(|| CliError::Usage(format!("{ENUM_CAP_VAR} must be a non-negative integer, got {raw:?}")))?;
        limits.path_enum_cap = cap;
    }
    Ok(limits)
}

fn read_digraph(path: &Path) -> Result<Digraph, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    edgelist::parse(&text).map_err(|source| CliError::Parse { path: path.into(), source })
}

fn check_k(k: usize) -> Result<(), CliError> {
    if k < 2 {
        return Err(CliError::Usage(format!("--k must be at least 2, got {k}")));
    }
    Ok(())
}

fn require_qt(d: &Digraph, k: usize, limits: &Limits) -> Result<(), CliError> {
    if first_qt_violation(d, k, limits)?.is_some() {
        return Err(qk_core::Error::NotQuasiTransitiveInput { k, reason: "a violating path exists" }.into());
    }
    Ok(())
}

fn set_text(s: &[Vertex]) -> String {
    let items: Vec<String> = s.iter().map(ToString::to_string).collect();
    format!("{{{}}}", items.join(", "))
}

fn distance_text(x: u32) -> String {
    if x == INFINITY {
        "inf".into()
    } else {
        x.to_string()
    }
}

fn parse_set(s: &str) -> Result<Vec<Vertex>, CliError> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| CliError::Usage(format!("bad vertex {t:?} in set {s:?}"))))
        .collect()
}

fn parse_k_list(s: &str) -> Result<Vec<usize>, CliError> {
    let ks: Vec<usize> = parse_set(s)?;
    for &k in &ks {
        check_k(k)?;
    }
    Ok(ks)
}

#[derive(Serialize)]
struct CheckOutput {
    k: usize,
    quasi_transitive: bool,
    violations: Vec<Vec<Vertex>>,
}

#[derive(Serialize)]
struct KingsOutput {
    k: usize,
    radius: u32,
    kings: Vec<Vertex>,
    max_out_degree: usize,
    max_out_degree_vertices: Vec<Vertex>,
}

#[derive(Serialize)]
struct FastOutput {
    k: usize,
    king: Option<Vertex>,
}

#[derive(Serialize)]
struct SearchOutput {
    indep: u32,
    absorb: u32,
    kernel: Option<Vec<Vertex>>,
}

#[derive(Serialize)]
struct GenOutput {
    config: GenConfig,
    n: usize,
    arcs: usize,
    digest: String,
}

fn certificate_text(c: &KernelCertificate) -> String {
    let mut t = format!("set {} as ({}, {})-kernel: ", set_text(&c.set), c.indep, c.absorb);
    match c.witness {
        None => t.push_str("VERIFIED"),
        Some(KernelWitness::TooClose { from, to, distance }) => {
            let _ = write!(t, "REFUTED, d({from}, {to}) = {distance} < {}", c.indep);
        }
        Some(KernelWitness::Unabsorbed { vertex, distance }) => {
            let _ = write!(t, "REFUTED, vertex {vertex} is {} from the set > {}", distance_text(distance), c.absorb);
        }
    }
    t
}

fn bound_text(b: Bound) -> String {
    match b {
        Bound::Exactly(x) => format!("= {x}"),
        Bound::AtLeast(x) => format!(">= {x}"),
    }
}

/// Runs one parsed command.
pub fn run(cli: &Cli, limits: &Limits) -> Result<Outcome, CliError> {
    let mut payload = None;
    let (command, digest, exit, text, result) = match &cli.command {
        Command::Check { file, k } => {
            check_k(*k)?;
            let d = read_digraph(file)?;
            let violations: Vec<Vec<Vertex>> =
                is_k_quasi_transitive(&d, *k, limits)?.into_iter().map(|v| v.path).collect();
            let mut text = String::new();
            if violations.is_empty() {
                let _ = writeln!(text, "{k}-quasi-transitive: yes");
            } else {
                let _ = writeln!(text, "{k}-quasi-transitive: no ({} violating paths)", violations.len());
                for p in violations.iter().take(20) {
                    let items: Vec<String> = p.iter().map(ToString::to_string).collect();
                    let _ =
                        writeln!(text, "  path {}: {} and {} non-adjacent", items.join(" -> "), p[0], p[p.len() - 1]);
                }
            }
            let exit = if violations.is_empty() { ExitCode::Ok } else { ExitCode::PropertyFails };
            let out = CheckOutput { k: *k, quasi_transitive: violations.is_empty(), violations };
            (format!("check --k {k}"), edgelist::digest(&d), exit, text, serde_json::to_value(out)?)
        }
        Command::Kings { file, k, fast, census } => {
            check_k(*k)?;
            let d = read_digraph(file)?;
            let digest = edgelist::digest(&d);
            let radius = *k as u32 + 1;
            if *fast {
                let king = find_kplus1_king_checked(&d, *k, limits)?;
                let text = match king {
                    Some(v) => format!("{radius}-king: {v}\n"),
                    None if d.n() == 0 => "no (k+1)-king: empty digraph\n".to_string(),
                    None => "no (k+1)-king: multiple initial components\n".to_string(),
                };
                let exit = if king.is_some() { ExitCode::Ok } else { ExitCode::PropertyFails };
                (format!("kings --k {k} --fast"), digest, exit, text, serde_json::to_value(FastOutput { k: *k, king })?)
            } else if *census {
                let report = census_checked(&d, *k, limits)?;
                let mut text = String::new();
                for (r, kings) in &report.kings_by_radius {
                    let _ = writeln!(text, "{r}-kings ({}): {}", kings.len(), set_text(kings));
                }
                match &report.initial_component {
                    Some(c) => {
                        let _ = writeln!(text, "unique initial component: {}", set_text(c));
                    }
                    None => text.push_str("initial component: not unique\n"),
                }
                if let Some(v) = report.fast_king {
                    let _ = writeln!(text, "degree-selected {radius}-king: {v}");
                }
                for row in &report.counting_audit {
                    let verdict = match row.outcome {
                        Verdict::Pass => "PASS",
                        Verdict::Fail => "FAIL",
                        Verdict::Info => "INFO",
                    };
                    let name = serde_json::to_value(row.clause)?;
                    let _ = writeln!(
                        text,
                        "audit {}: {}-kings {}, observed {}: {verdict}",
                        name.as_str().unwrap_or_default(),
                        row.radius,
                        bound_text(row.expected),
                        row.observed
                    );
                }
                let exit = if report.audit_passed() { ExitCode::Ok } else { ExitCode::PropertyFails };
                (format!("kings --k {k} --census"), digest, exit, text, serde_json::to_value(&report)?)
            } else {
                let kings = all_r_kings(&d, radius);
                let max_out_degree = d.max_out_degree();
                let max_out_degree_vertices: Vec<Vertex> =
                    d.vertices().filter(|&v| d.n() > 0 && d.out_degree(v) == max_out_degree).collect();
                let mut text = format!("{radius}-kings ({}): {}\n", kings.len(), set_text(&kings));
                let _ = writeln!(text, "max out-degree {max_out_degree}: {}", set_text(&max_out_degree_vertices));
                let exit = if kings.is_empty() { ExitCode::PropertyFails } else { ExitCode::Ok };
                let out = KingsOutput { k: *k, radius, kings, max_out_degree, max_out_degree_vertices };
                (format!("kings --k {k}"), digest, exit, text, serde_json::to_value(out)?)
            }
        }
        Command::Kernel { file, k, construct, verify, exhaustive, indep, absorb } => {
            if let Some(k) = k {
                check_k(*k)?;
            }
            let d = read_digraph(file)?;
            let digest = edgelist::digest(&d);
            let need_k = |what: &str| k.ok_or_else(|| CliError::Usage(format!("{what} needs --k")));
            if *construct {
                let k = need_k("--construct")?;
                require_qt(&d, k, limits)?;
                let set = kernels::construct_kplus2_kernel(&d, k)?;
                let cert = verify_kernel(&d, &set, k as u32 + 2, k as u32 + 1)?;
                let exit = if cert.is_verified() { ExitCode::Ok } else { ExitCode::PropertyFails };
                let text = certificate_text(&cert) + "\n";
                (format!("kernel --k {k} --construct"), digest, exit, text, serde_json::to_value(cert)?)
            } else if let Some(spec) = verify {
                let set = parse_set(spec)?;
                let indep = match indep {
                    Some(a) => *a,
                    None => need_k("--verify without --indep")? as u32 + 2,
                };
                let absorb = match absorb {
                    Some(b) => *b,
                    None => need_k("--verify without --absorb")? as u32 + 1,
                };
                let cert = verify_kernel(&d, &set, indep, absorb)?;
                let exit = if cert.is_verified() { ExitCode::Ok } else { ExitCode::PropertyFails };
                let text = certificate_text(&cert) + "\n";
                let command = format!("kernel --verify {} --indep {indep} --absorb {absorb}", spec.replace(' ', ""));
                (command, digest, exit, text, serde_json::to_value(cert)?)
            } else {
                debug_assert!(*exhaustive);
                let indep = match indep {
                    Some(a) => *a,
                    None => need_k("--exhaustive without --indep")? as u32 + 1,
                };
                let absorb = match absorb {
                    Some(b) => *b,
                    None => need_k("--exhaustive without --absorb")? as u32,
                };
                let kernel = exhaustive_kernel_search(&d, indep, absorb, limits)?;
                let text = match &kernel {
                    Some(s) => format!("smallest ({indep}, {absorb})-kernel: {}\n", set_text(s)),
                    None => format!("({indep}, {absorb})-kernel: NoKernel\n"),
                };
                let exit = if kernel.is_some() { ExitCode::Ok } else { ExitCode::PropertyFails };
                let out = SearchOutput { indep, absorb, kernel };
                (
                    format!("kernel --exhaustive --indep {indep} --absorb {absorb}"),
                    digest,
                    exit,
                    text,
                    serde_json::to_value(out)?,
                )
            }
        }
        Command::Gen { n, k, p, seed, rule, output } => {
            check_k(*k)?;
            let config = GenConfig { n: *n, k: *k, arc_prob: *p, seed: *seed, rule: *rule };
            config.validate()?;
            let d = random_qt(&config, limits)?;
            let listing = edgelist::emit(&d);
            let digest = edgelist::digest(&d);
            match output {
                Some(path) => {
                    std::fs::write(path, &listing).map_err(|source| CliError::Io { path: path.clone(), source })?
                }
                None => payload = Some(listing),
            }
            let rule_name = serde_json::to_value(rule)?;
            let command =
                format!("gen --n {n} --k {k} --p {p} --seed {seed} --rule {}", rule_name.as_str().unwrap_or_default());
            let text = format!("{digest}\n");
            let out = GenOutput { config, n: d.n(), arcs: d.arc_count(), digest: digest.clone() };
            (command, digest, ExitCode::Ok, text, serde_json::to_value(out)?)
        }
        Command::Hunt { k, trials, n_max, seed } => {
            check_k(*k)?;
            let cfg = HuntConfig::new(*k, *trials, *n_max, *seed);
            let ledger = drive::hunt(&cfg, limits)?;
            let failed = ledger.trials.iter().filter(|t| t.error.is_some()).count();
            let mut text = format!(
                "k = {k}: {} trials, {} counterexamples, {failed} failed trials\n",
                ledger.trials.len(),
                ledger.counterexamples.len()
            );
            for cx in &ledger.counterexamples {
                let _ = writeln!(text, "counterexample (digest {}):", edgelist::digest(cx));
                text.push_str(&edgelist::emit(cx));
            }
            let exit = if !ledger.counterexamples.is_empty() {
                ExitCode::Counterexample
            } else if failed > 0 {
                ExitCode::Internal
            } else {
                ExitCode::Ok
            };
            let command = format!("hunt --k {k} --trials {trials} --n-max {n_max} --seed {seed}");
            (command, config_digest(&cfg)?, exit, text, serde_json::to_value(&ledger)?)
        }
        Command::Lemmas { k_list, trials, seed } => {
            let ks = parse_k_list(k_list)?;
            let cfg = SuiteConfig::new(ks.clone(), *trials, *seed);
            let timed = drive::run_suite(&cfg, limits)?;
            let mut text = String::new();
            let floor = cfg.vacuity_floor;
            for (s, t) in timed.report.summaries.iter().zip(&timed.elapsed) {
                let verdict = if s.passed(floor) { "PASS" } else { "FAIL" };
                let _ = writeln!(text, "k = {}: {} instances in {:.2?}: {verdict}", s.k, s.instances, t);
                for c in &s.checks {
                    let name = serde_json::to_value(c.check)?;
                    let _ = writeln!(
                        text,
                        "  {:<22} applicable {:>5.1}%  violations {}",
                        name.as_str().unwrap_or_default(),
                        100.0 * c.applicable_fraction(),
                        c.violations.len()
                    );
                }
                let _ = writeln!(
                    text,
                    "  unique initial {}, fast king verified {}, threshold vertices {}/{} confirmed, kernels {}/{}",
                    s.unique_initial,
                    s.fast_verified,
                    s.threshold_confirmed,
                    s.threshold_vertices,
                    s.kernels_verified,
                    s.instances
                );
                for property in [
                    Property::QuasiTransitive,
                    Property::KingIffUniqueInitial,
                    Property::FastFinder,
                    Property::DegreeThreshold,
                    Property::CountingAudit,
                    Property::KernelConstruction,
                ] {
                    let n = s.exceptions_of(property).count();
                    if n > 0 {
                        let name = serde_json::to_value(property)?;
                        let _ = writeln!(text, "  {} exceptions: {n}", name.as_str().unwrap_or_default());
                    }
                }
            }
            let exit = if timed.report.passed() { ExitCode::Ok } else { ExitCode::PropertyFails };
            let list: Vec<String> = ks.iter().map(ToString::to_string).collect();
            let command = format!("lemmas --k-list {} --trials {trials} --seed {seed}", list.join(","));
            (command, config_digest(&cfg)?, exit, text, serde_json::to_value(&timed.report)?)
        }
    };
    let report = JsonReport { tool_version: crate::report::TOOL_VERSION.into(), command, input_digest: digest, result };
    Ok(Outcome { exit, text, report, stdout_payload: payload })
}

/// Entry point shared by the binary and the tests.
pub fn main_with<I, T>(args: I, enum_cap: Option<OsString>, out: &mut impl Write, err: &mut impl Write) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(if e.use_stderr() { &mut *err as &mut dyn Write } else { &mut *out }, "{e}");
            return if e.use_stderr() { ExitCode::Usage } else { ExitCode::Ok };
        }
    };
    let result = limits_from_env(enum_cap).and_then(|limits| {
        let outcome = run(&cli, &limits)?;
        let rendered = outcome.report.render()?;
        if let Some(path) = &cli.report {
            std::fs::write(path, &rendered).map_err(|source| CliError::Io { path: path.clone(), source })?;
        }
        Ok((outcome, rendered))
    });
    match result {
        Ok((outcome, rendered)) => {
            if let Some(listing) = &outcome.stdout_payload {
                let _ = out.write_all(listing.as_bytes());
                if !cli.json {
                    let _ = err.write_all(outcome.text.as_bytes());
                }
            } else if !cli.json {
                let _ = out.write_all(outcome.text.as_bytes());
            }
            if cli.json {
                let _ = out.write_all(rendered.as_bytes());
            }
            outcome.exit
        }
        Err(e) => {
            let _ = writeln!(err, "qk: {e}");
            e.exit_code()
        }
    }
}
