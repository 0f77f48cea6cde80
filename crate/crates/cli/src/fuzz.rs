//! Seeded validation campaigns over random maximal VC-bounded families.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde_json::json;
use vcx_core::{random_maximal_vc_family, validate_instance, FuzzSeed, InstanceStats, UniformFamily};

use crate::error::{CliError, CliResult};
use crate::io::{digest64, write_family};
use crate::manifest::RunManifest;

pub const MAX_FUZZ_N: u8 = 14;
pub const MAX_FUZZ_D: u8 = 3;
pub const MAX_FUZZ_COUNT: u64 = 1_000_000;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CellSummary {
    pub n: u8,
    pub d: u8,
    pub seed0: u64,
    pub count: u64,
    pub passed: u64,
    pub failed: u64,
    pub max_size: usize,
    pub max_fiber: usize,
    /// half-units
    pub max_column: u32,
    pub min_slack: Option<i128>,
    pub shapes: BTreeMap<&'static str, usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub n: u8,
    pub d: u8,
    pub seed: u64,
    pub error: String,
    pub family_file: PathBuf,
    pub manifest_file: PathBuf,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FuzzSummary {
    pub cells: Vec<CellSummary>,
    pub failures: Vec<Failure>,
    pub wall_time: Duration,
}

impl FuzzSummary {
    pub fn passed(&self) -> u64 {
        self.cells.iter().map(|c| c.passed).sum()
    }

    pub fn failed(&self) -> u64 {
        self.cells.iter().map(|c| c.failed).sum()
    }

    pub fn total(&self) -> u64 {
        self.cells.iter().map(|c| c.count).sum()
    }

    pub fn max_fiber(&self) -> usize {
        self.cells.iter().map(|c| c.max_fiber).max().unwrap_or(0)
    }

    pub fn max_column(&self) -> u32 {
        self.cells.iter().map(|c| c.max_column).max().unwrap_or(0)
    }

    pub fn min_slack(&self) -> Option<i128> {
        self.cells.iter().filter_map(|c| c.min_slack).min()
    }
}

fn check_params(n: u8, d: u8, count: u64) -> CliResult<()> {
    if !(1..=MAX_FUZZ_D).contains(&d) || n < d + 1 || n > MAX_FUZZ_N {
        return Err(CliError::Usage(format!(
            "fuzz needs 1 <= d <= {MAX_FUZZ_D} and d+1 <= n <= {MAX_FUZZ_N}, got n={n}, d={d}"
        )));
    }
    if count > MAX_FUZZ_COUNT {
        return Err(CliError::Usage(format!("fuzz count is capped at {MAX_FUZZ_COUNT}")));
    }
    Ok(())
}

/// Seeds `seed0 .. seed0 + count` at one `(n, d)`; failures are dumped under
/// `artifacts`.
pub fn fuzz_campaign(n: u8, d: u8, count: u64, seed0: u64, artifacts: &Path) -> CliResult<FuzzSummary> {
    fuzz_grid(&[n], &[d], count, seed0, artifacts)
}

/// Every `(n, d)` cell of the grid, each with the same seed range.
pub fn fuzz_grid(ns: &[u8], ds: &[u8], count: u64, seed0: u64, artifacts: &Path) -> CliResult<FuzzSummary> {
    fuzz_grid_with(ns, ds, count, seed0, artifacts, validate_instance)
}

/// [`fuzz_grid`] with a replaceable per-instance check.
pub fn fuzz_grid_with<C>(
    ns: &[u8],
    ds: &[u8],
    count: u64,
    seed0: u64,
    artifacts: &Path,
    check: C,
) -> CliResult<FuzzSummary>
where
    C: Fn(&UniformFamily, usize) -> vcx_core::Result<InstanceStats> + Sync,
{
    let start = Instant::now();
    let cells: Vec<(u8, u8)> = ds.iter().flat_map(|&d| ns.iter().map(move |&n| (n, d))).collect();
    for &(n, d) in &cells {
        check_params(n, d, count)?;
    }
    if seed0.checked_add(count).is_none() {
        return Err(CliError::Usage("seed range overflows u64".into()));
    }
    let jobs: Vec<FuzzSeed> = cells
        .iter()
        .flat_map(|&(n, d)| (seed0..seed0 + count).map(move |seed| FuzzSeed { seed, n, d }))
        .collect();
    let outcomes: Vec<(UniformFamily, vcx_core::Result<InstanceStats>)> = jobs
        .par_iter()
        .map(|&job| {
            let fam = random_maximal_vc_family(job)?;
            let result = check(&fam, job.d as usize);
            Ok((fam, result))
        })
        .collect::<vcx_core::Result<_>>()?;

    let mut summary = FuzzSummary::default();
    let mut by_cell: BTreeMap<(u8, u8), usize> = BTreeMap::new();
    for &(n, d) in &cells {
        by_cell.insert((n, d), summary.cells.len());
        summary.cells.push(CellSummary { n, d, seed0, count, ..CellSummary::default() });
    }
    for (job, (fam, result)) in jobs.iter().zip(outcomes) {
        let cell = &mut summary.cells[by_cell[&(job.n, job.d)]];
        match result {
            Ok(stats) => {
                cell.passed += 1;
                cell.max_size = cell.max_size.max(stats.size);
                cell.max_fiber = cell.max_fiber.max(stats.max_fiber);
                cell.max_column = cell.max_column.max(stats.max_column);
                cell.min_slack = Some(cell.min_slack.map_or(stats.slack, |s| s.min(stats.slack)));
                for (shape, k) in stats.shapes {
                    *cell.shapes.entry(shape).or_insert(0) += k;
                }
            }
            Err(e) => {
                cell.failed += 1;
                summary.failures.push(dump_failure(artifacts, *job, &fam, &e)?);
            }
        }
    }
    summary.wall_time = start.elapsed();
    Ok(summary)
}

/// Writes `<stem>.fam` and `<stem>.manifest.json`; together they replay the
/// failure with `vcx pipeline` or regenerate it with `vcx gen`.
pub fn dump_failure(dir: &Path, job: FuzzSeed, fam: &UniformFamily, err: &vcx_core::Error) -> CliResult<Failure> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let stem = format!("fail-n{}-d{}-seed{}", job.n, job.d, job.seed);
    let family_file = dir.join(format!("{stem}.fam"));
    let manifest_file = dir.join(format!("{stem}.manifest.json"));
    write_family(&family_file, fam)?;
    let error = err.to_string();
    let result = json!({ "n": job.n, "d": job.d, "seed": job.seed, "error": error });
    let replay = vec![
        "vcx".to_string(),
        "pipeline".into(),
        "--input".into(),
        format!("{stem}.fam"),
        "--d".into(),
        job.d.to_string(),
        "--json".into(),
    ];
    let digest = digest64(fam.to_fam_string().as_bytes());
    let mut manifest = RunManifest::new(replay, Some(digest), vec![job.seed], &result, 0).to_json();
    let obj = manifest.as_object_mut().expect("manifest is an object");
    obj.insert("error".into(), json!(error));
    obj.insert(
        "regenerate".into(),
        json!([
            "vcx", "gen", "--kind", "random", "--n", job.n.to_string(), "--d", job.d.to_string(),
            "--seed", job.seed.to_string()
        ]),
    );
    let text = serde_json::to_string_pretty(&manifest).expect("json") + "\n";
    std::fs::write(&manifest_file, text).map_err(|e| CliError::io(&manifest_file, e))?;
    Ok(Failure { n: job.n, d: job.d, seed: job.seed, error, family_file, manifest_file })
}
