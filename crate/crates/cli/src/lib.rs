//! Command dispatch and report emission for the `relcyc` binary.

use std::fmt::Write as _;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use relcyc::algebra::Violation;
use relcyc::complexes::Engine;
use relcyc::homology::{compare, sbi, Comparison, HomologyReport, Kind, Pipeline, Pipelines, SbiReport};
use relcyc::instance::load;
use relcyc::verify::{harmonic, verify, HarmonicReport, VerifyReport};
use relcyc::Q;

/// Dimension of the largest word space above which a warning is printed.
pub const LARGE_SPACE: usize = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "relcyc", version, about = "Relative Hochschild and cyclic homology of cleft extensions over Q")]
pub struct Cli {
    /// Bundled fixture name (DN, T, K2, TP3, TP3-graded, TP3-broken, TP5) or path to an instance JSON file.
    #[arg(long, global = true, default_value = "DN")]
    pub instance: String,
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<std::path::PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// Check the cleft-datum axioms.
    Validate,
    /// Homology dimensions from the chosen pipelines.
    Homology {
        #[arg(long)]
        kind: Kind,
        #[arg(long)]
        max_degree: u32,
        /// Comma-separated pipelines; defaults to all pipelines for the kind.
        #[arg(long, value_delimiter = ',')]
        pipeline: Vec<Pipeline>,
    },
    /// The full identity suite.
    Verify {
        #[arg(long)]
        max_degree: u32,
        #[arg(long, default_value_t = 0)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Harmonic split sizes with the harmonic part of the identity suite.
    Harmonic {
        #[arg(long)]
        max_degree: u32,
    },
    /// Exactness of the SBI sequence.
    Sbi {
        #[arg(long)]
        max_degree: u32,
    },
    /// Every pipeline of both kinds, with disagreements.
    Compare {
        #[arg(long)]
        max_degree: u32,
    },
}

/// Everything one invocation needs.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub instance: String,
    pub command: Command,
    pub format: Format,
}

impl From<&Cli> for RunConfig {
    fn from(c: &Cli) -> Self {
        RunConfig { instance: c.instance.clone(), command: c.command.clone(), format: c.format }
    }
}

/// The report text, the exit status and messages for stderr.
#[derive(Debug)]
pub struct Outcome {
    pub status: i32,
    pub report: String,
    pub messages: Vec<String>,
}

impl Outcome {
    fn fail(status: i32, msg: String) -> Self {
        Outcome { status, report: String::new(), messages: vec![msg] }
    }
}

#[derive(Serialize)]
struct ValidateReport<'a> {
    instance: &'a str,
    valid: bool,
    dim_a: usize,
    dim_m: usize,
    violations: &'a [Violation],
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn csv_text(header: &[&str], rows: Vec<Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf8")
}

fn homology_rows(reports: &[HomologyReport]) -> Vec<Vec<String>> {
    let mut rows = Vec::new();
    for r in reports {
        for (n, d) in r.dims.iter().enumerate() {
            rows.push(vec![r.instance.clone(), r.kind.to_string(), n.to_string(), r.pipeline.to_string(), d.to_string(), String::new()]);
        }
    }
    for r in reports {
        for (wt, dims) in r.per_weight.iter().flatten() {
            for (n, d) in dims.iter().enumerate() {
                rows.push(vec![r.instance.clone(), r.kind.to_string(), n.to_string(), r.pipeline.to_string(), d.to_string(), wt.to_string()]);
            }
        }
    }
    rows
}

const HOMOLOGY_HEADER: [&str; 6] = ["instance", "kind", "degree", "pipeline", "dim", "weight"];

fn verify_csv(r: &VerifyReport) -> String {
    let rows = r
        .checks
        .iter()
        .map(|c| vec![r.instance.clone(), c.name.clone(), c.checked.to_string(), c.failures.len().to_string(), c.failures.join(" ")])
        .collect();
    csv_text(&["instance", "check", "checked", "failed", "failures"], rows)
}

fn verify_messages(r: &VerifyReport) -> Vec<String> {
    r.failed()
        .flat_map(|c| c.failures.iter().map(move |loc| format!("identity `{}` fails on {} at {}", c.name, r.instance, loc)))
        .collect()
}

fn disagreement_messages(c: &Comparison) -> Vec<String> {
    c.disagreements
        .iter()
        .map(|(k, n)| {
            let mut m = format!("pipelines disagree on {} {k}_{n}:", c.instance);
            for r in c.reports.iter().filter(|r| r.kind == *k) {
                let _ = write!(m, " {}={}", r.pipeline, r.dims[*n]);
            }
            m
        })
        .collect()
}

fn largest_space(e: &Engine<Q>, bound: i64) -> usize {
    let d = &e.datum;
    (0..=bound + 1).map(|w| relcyc::tensor::dim_x(d.dim_m(), d.dim_abar(), bound + 1 - w, w)).max().unwrap_or(0)
}

fn bound_of(c: &Command) -> Option<i64> {
    match c {
        Command::Validate => None,
        Command::Homology { max_degree, .. }
        | Command::Verify { max_degree, .. }
        | Command::Harmonic { max_degree }
        | Command::Sbi { max_degree }
        | Command::Compare { max_degree } => Some(*max_degree as i64),
    }
}

/// Run one command; never panics on bad input.
pub fn run(cfg: &RunConfig) -> Outcome {
    let datum = match load::<Q>(&cfg.instance) {
        Ok(d) => d,
        Err(e) => return Outcome::fail(2, format!("instance {}: {e}", cfg.instance)),
    };
    let name = datum.name.clone();
    let violations = datum.validate();
    if let Command::Validate = cfg.command {
        let rep = ValidateReport { instance: &name, valid: violations.is_empty(), dim_a: datum.dim_a(), dim_m: datum.dim_m(), violations: &violations };
        let report = match cfg.format {
            Format::Json => json(&rep),
            Format::Csv => csv_text(
                &["instance", "axiom", "indices"],
                violations.iter().map(|v| vec![name.clone(), v.axiom.clone(), format!("{:?}", v.indices)]).collect(),
            ),
        };
        let messages = violations.iter().map(|v| format!("instance {name}: axiom {v} violated")).collect();
        return Outcome { status: if violations.is_empty() { 0 } else { 2 }, report, messages };
    }
    if let Some(v) = violations.first() {
        return Outcome::fail(2, format!("instance {name}: axiom {v} violated ({} violations)", violations.len()));
    }
    let engine = match Engine::new(datum) {
        Ok(e) => Arc::new(e),
        Err(v) => return Outcome::fail(2, format!("instance {name}: cleft extension invalid: {}", v[0])),
    };
    let mut messages = Vec::new();
    if let Some(b) = bound_of(&cfg.command) {
        let big = largest_space(&engine, b);
        if big > LARGE_SPACE {
            messages.push(format!("warning: instance {name} at max degree {b} needs word spaces of dimension {big}; expect long runtimes"));
        }
    }
    let p = Pipelines::new(name.clone(), engine);
    let (status, report) = match &cfg.command {
        Command::Validate => unreachable!(),
        Command::Homology { kind, max_degree, pipeline } => {
            let chosen: Vec<Pipeline> = if pipeline.is_empty() { Pipeline::for_kind(*kind).to_vec() } else { pipeline.clone() };
            if let Some(bad) = chosen.iter().find(|q| !q.supports(*kind)) {
                return Outcome::fail(2, format!("pipeline {bad} does not compute {kind}"));
            }
            let reports: Result<Vec<HomologyReport>, _> = chosen.iter().map(|q| p.report(*kind, *q, *max_degree as i64)).collect();
            let reports = match reports {
                Ok(r) => r,
                Err(e) => return Outcome::fail(1, format!("instance {name}: {e}")),
            };
            let c = Comparison {
                instance: name.clone(),
                bound: *max_degree as i64,
                disagreements: relcyc::homology::disagreements(&reports),
                reports,
            };
            messages.extend(disagreement_messages(&c));
            let report = match cfg.format {
                Format::Json => json(&c.reports),
                Format::Csv => csv_text(&HOMOLOGY_HEADER, homology_rows(&c.reports)),
            };
            (if c.agree() { 0 } else { 1 }, report)
        }
        Command::Compare { max_degree } => match compare(&p, *max_degree as i64, &[Kind::Hh, Kind::Hc]) {
            Ok(c) => {
                messages.extend(disagreement_messages(&c));
                let report = match cfg.format {
                    Format::Json => json(&c),
                    Format::Csv => csv_text(&HOMOLOGY_HEADER, homology_rows(&c.reports)),
                };
                (if c.agree() { 0 } else { 1 }, report)
            }
            Err(e) => return Outcome::fail(1, format!("instance {name}: {e}")),
        },
        Command::Verify { max_degree, samples, seed } => {
            let r = verify(&p, *max_degree as i64, *samples, *seed);
            messages.extend(verify_messages(&r));
            let report = match cfg.format {
                Format::Json => json(&r),
                Format::Csv => verify_csv(&r),
            };
            (if r.passed() { 0 } else { 1 }, report)
        }
        Command::Harmonic { max_degree } => {
            let r: HarmonicReport = harmonic(&p, *max_degree as i64, 0, 0);
            messages.extend(verify_messages(&r.checks));
            let report = match cfg.format {
                Format::Json => json(&r),
                Format::Csv => {
                    let rows = r
                        .rows
                        .iter()
                        .map(|h| [h.v, h.w, h.dim as i64, h.harmonic as i64, h.perp as i64, h.ker_connes as i64].map(|x| x.to_string()).to_vec())
                        .collect();
                    csv_text(&["v", "w", "dim", "harmonic", "perp", "ker_connes"], rows)
                }
            };
            (if r.checks.passed() { 0 } else { 1 }, report)
        }
        Command::Sbi { max_degree } => match sbi(&p, *max_degree as i64) {
            Ok(r) => {
                let r: SbiReport = r;
                for s in r.slots.iter().filter(|s| !s.exact) {
                    messages.push(format!("SBI sequence not exact on {name} at {} (level {})", s.group, s.level));
                }
                if !r.chain_maps {
                    messages.push(format!("SBI maps are not chain maps on {name}"));
                }
                let report = match cfg.format {
                    Format::Json => json(&r),
                    Format::Csv => {
                        let rows = r
                            .slots
                            .iter()
                            .map(|s| {
                                vec![
                                    name.clone(),
                                    s.level.to_string(),
                                    s.group.clone(),
                                    s.dim.to_string(),
                                    s.rank_in.to_string(),
                                    s.rank_out.to_string(),
                                    s.exact.to_string(),
                                ]
                            })
                            .collect();
                        csv_text(&["instance", "level", "group", "dim", "rank_in", "rank_out", "exact"], rows)
                    }
                };
                (if r.exact() { 0 } else { 1 }, report)
            }
            Err(e) => return Outcome::fail(1, format!("instance {name}: {e}")),
        },
    };
    Outcome { status, report, messages }
}

/// Cap rayon at `RELCYC_THREADS` when set.
pub fn init_threads() {
    if let Some(n) = std::env::var("RELCYC_THREADS").ok().and_then(|s| s.parse::<usize>().ok()).filter(|n| *n > 0) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}
