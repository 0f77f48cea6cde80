//! Argument parsing and command dispatch. [`run`] never exits the process, so
//! tests can drive it directly.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use vcx_core::{
    build_assignment, certificate_order_max, check_fiber_structure, classify_fiber,
    complement_shadow, complete_family, erdos_rado_threshold, exact_max, find_sunflower,
    lower_bound_witness, random_maximal_vc_family, run_pipeline, shadow, shattered_witness,
    star_family, vc_dimension, Budget, FuzzSeed, PipelineOptions, SearchMode,
};

use crate::error::{exit, CliError, CliResult};
use crate::fuzz::fuzz_grid;
use crate::io::{file_digest, load_family, write_family};
use crate::manifest::RunManifest;
use crate::report::{emit_report, Format, Report};

#[derive(Debug, Parser)]
#[command(
    name = "vcx",
    version,
    about = "Certificates, sunflowers, the partition pipeline and exact search for (d+1)-uniform families of VC-dimension at most d",
    after_help = "Exit codes: 0 success, 1 usage or input error, 2 invariant violation, 3 budget exhausted without reaching the goal."
)]
pub struct Cli {
    /// Print machine-readable JSON instead of a table
    #[arg(long, global = true)]
    pub json: bool,

    /// Worker threads for search and fuzz (0 = one per core)
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,

    /// Seed for `gen --kind random`; first seed for `fuzz`
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Also write a run manifest (command, input digest, seeds, version,
    /// wall time, result digest) to this file
    #[arg(long, global = true, value_name = "PATH")]
    pub manifest: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    /// all (d+1)-sets containing 1
    Star,
    /// all (d+1)-sets
    Complete,
    /// a random maximal family of VC-dimension <= d (uses --seed)
    Random,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    /// largest family of VC-dimension <= d
    Exact,
    /// stop at the first family of size >= target
    Witness,
    /// every member keeps a certificate of size exactly --s
    OrderS,
}

#[derive(Debug, Args)]
pub struct InputArg {
    /// Family file: a line "n k", then one member per line
    #[arg(long, value_name = "FILE")]
    pub input: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a benchmark family
    Gen {
        #[arg(long, value_enum)]
        kind: GenKind,
        #[arg(long)]
        n: u8,
        /// the family is (d+1)-uniform
        #[arg(long)]
        d: u8,
        /// Output file (stdout if omitted)
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// VC-dimension and a largest shattered set
    Vc {
        #[command(flatten)]
        input: InputArg,
    },
    /// Shadow and complement shadow
    Shadow {
        #[command(flatten)]
        input: InputArg,
    },
    /// Maximum certificates, strata, fiber sizes and shapes
    Certify {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        d: usize,
    },
    /// Extract a p-sunflower
    Sunflower {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        p: i64,
    },
    /// Run the F1/F2/F3 partition, the vector map f, the injection g and the audit
    Pipeline {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        d: usize,
        /// Skip the up-front VC check
        #[arg(long)]
        assume_vc: bool,
    },
    /// Branch-and-bound for extremal sizes
    Search {
        #[arg(long)]
        n: u8,
        #[arg(long)]
        d: u8,
        #[arg(long, value_enum, default_value = "exact")]
        mode: ModeArg,
        /// certificate order for --mode order-s
        #[arg(long)]
        s: Option<u8>,
        /// witness target (default C(n-1,d) + C(n-4,d-2))
        #[arg(long)]
        target: Option<u64>,
        #[arg(long)]
        max_nodes: Option<u64>,
        /// seconds
        #[arg(long)]
        timeout: Option<f64>,
    },
    /// Validate random maximal families seed by seed
    Fuzz {
        /// ground-set sizes: "9", "8,10" or "8-14"
        #[arg(long)]
        n: String,
        /// dimensions, same syntax
        #[arg(long)]
        d: String,
        /// seeds per (n, d)
        #[arg(long)]
        count: u64,
        /// where failing families and their manifests go
        #[arg(long, value_name = "DIR", default_value = "vcx-fuzz-failures")]
        artifacts: PathBuf,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// `"9"`, `"8,10"`, `"8-14"`, or a mix.
pub fn parse_list(text: &str) -> CliResult<Vec<u8>> {
    let bad = || CliError::Usage(format!("cannot read {text:?} as a list like 8,10 or 8-14"));
    let mut out = Vec::new();
    for part in text.split(',') {
        match part.split_once('-') {
            Some((a, b)) => {
                let (a, b): (u8, u8) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
                if a > b {
                    return Err(bad());
                }
                out.extend(a..=b);
            }
            None => out.push(part.trim().parse().map_err(|_| bad())?),
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

struct Produced {
    report: Report,
    input: Option<PathBuf>,
    seeds: Vec<u64>,
    code: i32,
    warning: Option<String>,
}

impl Produced {
    fn new(report: Report) -> Self {
        Produced { report, input: None, seeds: Vec::new(), code: exit::OK, warning: None }
    }

    fn from_input(report: Report, input: &Path) -> Self {
        Produced { input: Some(input.to_path_buf()), ..Produced::new(report) }
    }
}

fn execute(cli: &Cli) -> CliResult<Produced> {
    match &cli.command {
        Command::Gen { kind, n, d, out } => {
            let (family, name, seeds) = match kind {
                GenKind::Star => (star_family(*n, *d)?, "star", vec![]),
                GenKind::Complete => {
                    let k = d.checked_add(1).ok_or_else(|| CliError::Usage("d too large".into()))?;
                    (complete_family(*n, k)?, "complete", vec![])
                }
                GenKind::Random => (
                    random_maximal_vc_family(FuzzSeed { seed: cli.seed, n: *n, d: *d })?,
                    "random",
                    vec![cli.seed],
                ),
            };
            if let Some(path) = out {
                write_family(path, &family)?;
            }
            let seed = (*kind == GenKind::Random).then_some(cli.seed);
            let report = Report::Generated { kind: name.into(), family, d: *d, seed, inline: out.is_none() };
            Ok(Produced { seeds, ..Produced::new(report) })
        }
        Command::Vc { input } => {
            let family = load_family(&input.input)?;
            let vc = vc_dimension(&family);
            let witness = if vc >= 0 { shattered_witness(&family, vc as usize) } else { None };
            Ok(Produced::from_input(Report::Vc { family, vc, witness }, &input.input))
        }
        Command::Shadow { input } => {
            let family = load_family(&input.input)?;
            let (shadow, complement) = (shadow(&family)?, complement_shadow(&family)?);
            Ok(Produced::from_input(Report::Shadow { family, shadow, complement }, &input.input))
        }
        Command::Certify { input, d } => {
            let family = load_family(&input.input)?;
            let assign = build_assignment(&family, *d)?;
            let histogram = check_fiber_structure(&assign)?;
            let shapes = assign
                .fibers()
                .keys()
                .filter(|t| t.len() + 1 == *d)
                .map(|&t| classify_fiber(t, &assign))
                .collect::<vcx_core::Result<Vec<_>>>()?;
            Ok(Produced::from_input(Report::Certify { assign, histogram, shapes }, &input.input))
        }
        Command::Sunflower { input, p } => {
            let family = load_family(&input.input)?;
            let found = find_sunflower(&family, *p)?;
            let threshold = erdos_rado_threshold(family.k() as u32, (*p).clamp(0, u32::MAX as i64) as u32);
            Ok(Produced::from_input(Report::Sunflower { family, p: *p, threshold, found }, &input.input))
        }
        Command::Pipeline { input, d, assume_vc } => {
            let family = load_family(&input.input)?;
            let report = run_pipeline(&family, *d, PipelineOptions { assume_vc: *assume_vc })?;
            Ok(Produced::from_input(Report::Pipeline(Box::new(report)), &input.input))
        }
        Command::Search { n, d, mode, s, target, max_nodes, timeout } => {
            let timeout = match timeout {
                Some(t) if !(t.is_finite() && *t > 0.0) => {
                    return Err(CliError::Usage(format!("--timeout must be positive, got {t}")))
                }
                Some(t) => Some(Duration::from_secs_f64(*t)),
                None => None,
            };
            let budget = Budget { max_nodes: *max_nodes, timeout, threads: cli.threads };
            if s.is_some() != (*mode == ModeArg::OrderS) {
                return Err(CliError::Usage("--s goes with --mode order-s, and only with it".into()));
            }
            if target.is_some() && *mode != ModeArg::Witness {
                return Err(CliError::Usage("--target goes with --mode witness".into()));
            }
            let r = match mode {
                ModeArg::Exact => exact_max(*n, *d, budget)?,
                ModeArg::Witness => lower_bound_witness(*n, *d, *target, budget)?,
                ModeArg::OrderS => certificate_order_max(*n, *d, s.expect("checked"), budget)?,
            };
            let mut produced = Produced::new(Report::Search(Box::new(r.clone())));
            if r.budget_exhausted() {
                produced.code = exit::BUDGET;
                produced.warning = Some(match r.mode {
                    SearchMode::Witness { target } => format!("budget exhausted before reaching {target}"),
                    _ => "budget exhausted; best is a lower bound only".into(),
                });
            }
            if r.conjecture_counterexample {
                produced.code = exit::VIOLATION;
                produced.warning = Some(format!(
                    "COUNTEREXAMPLE: {} members over [{}], each with a certificate of order {}, exceeds C(n-1,d) = {}",
                    r.best,
                    r.n,
                    s.unwrap_or(0),
                    r.conjecture_bound.unwrap_or(0)
                ));
            }
            Ok(produced)
        }
        Command::Fuzz { n, d, count, artifacts } => {
            let (ns, ds) = (parse_list(n)?, parse_list(d)?);
            let summary = if cli.threads > 0 {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(cli.threads)
                    .build()
                    .map_err(|e| CliError::Usage(e.to_string()))?
                    .install(|| fuzz_grid(&ns, &ds, *count, cli.seed, artifacts))?
            } else {
                fuzz_grid(&ns, &ds, *count, cli.seed, artifacts)?
            };
            let mut produced = Produced::new(Report::Fuzz(summary.clone()));
            produced.seeds = vec![cli.seed];
            if summary.failed() > 0 {
                let err = CliError::Campaign {
                    failed: summary.failed() as usize,
                    total: summary.total() as usize,
                    dir: artifacts.clone(),
                };
                produced.code = err.exit_code();
                produced.warning = Some(err.to_string());
            }
            Ok(produced)
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { stderr: text, code: exit::USAGE, ..Outcome::default() }
            } else {
                Outcome { stdout: text, code: exit::OK, ..Outcome::default() }
            };
        }
    };
    let start = Instant::now();
    let produced = match execute(&cli) {
        Ok(p) => p,
        Err(e) => {
            return Outcome { stderr: format!("error: {e}\n"), code: e.exit_code(), ..Outcome::default() };
        }
    };
    let wall_ms = start.elapsed().as_millis() as u64;
    let format = if cli.json { Format::Json } else { Format::Table };
    let mut out = Outcome { code: produced.code, ..Outcome::default() };
    out.stdout = emit_report(&produced.report, format);
    if let Some(w) = &produced.warning {
        out.stderr.push_str(&format!("{w}\n"));
    }
    if let Some(path) = &cli.manifest {
        let digest = match produced.input.as_deref().map(file_digest).transpose() {
            Ok(d) => d,
            Err(e) => return Outcome { stderr: format!("error: {e}\n"), code: e.exit_code(), ..out },
        };
        let command = args.iter().map(|a| a.to_string_lossy().into_owned()).collect();
        let manifest = RunManifest::new(command, digest, produced.seeds.clone(), &produced.report.to_json(), wall_ms);
        let text = serde_json::to_string_pretty(&manifest.to_json()).expect("json") + "\n";
        if let Err(e) = std::fs::write(path, text) {
            let e = CliError::io(path, e);
            return Outcome { stderr: format!("error: {e}\n"), code: e.exit_code(), ..out };
        }
    }
    out
}
