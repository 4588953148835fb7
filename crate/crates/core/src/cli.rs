//! Command-line front end: resolve a [`RunConfig`] from flags and an
//! optional JSON file, run the pipeline, write the report and CSV dumps.
//!
//! Exit codes: 0 when every check passes, 1 when any check fails, 2 on
//! usage, configuration or I/O errors.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::Parser;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curvature::curvature_samples;
use crate::error::Error;
use crate::paramgen::Overrides;
use crate::profile::Warping;
use crate::verify::{default_grid, run_pipeline, Pipeline};

pub const DEFAULT_GRID_POINTS: usize = 10_000;
pub const MIN_GRID_POINTS: usize = 100;

pub const PROFILE_HEADER: [&str; 4] = ["t", "R", "R1", "R2"];
pub const CURVATURE_HEADER: [&str; 8] = [
    "t",
    "ric_TT",
    "ric_XX",
    "ric_SS",
    "pc_circle",
    "pc_sphere",
    "ki_YS",
    "ki_SS",
];
pub const BOUNDARY_HEADER: [&str; 6] = ["s", "B", "B1", "B2", "K_rad", "K_tan"];

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("cannot read config file {path}: {source}")]
    ReadConfig { path: PathBuf, source: io::Error },
    #[error("invalid config file {path}: {source}")]
    ParseConfig {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: io::Error },
    #[error("CSV encoding failed: {0}")]
    Csv(#[from] csv::Error),
}

#[derive(Parser, Debug, Clone, Default)]
#[command(
    name = "ricci-forge",
    version,
    about = "Build and certify a Ricci-positive metric on S^n with p geodesic balls removed"
)]
pub struct Args {
    /// Dimension n of the sphere (n >= 3)
    #[arg(long)]
    pub dim: Option<u32>,

    /// Number of removed balls p (p >= 1)
    #[arg(long)]
    pub punctures: Option<u32>,

    /// Number of base grid points (>= 100) [default: 10000]
    #[arg(long)]
    pub grid: Option<usize>,

    /// Pin a parameter: R0, kappa, zeta, Lambda, r0 or mu (repeatable)
    #[arg(long = "set", value_name = "NAME=VALUE", value_parser = parse_assignment)]
    pub set: Vec<(String, f64)>,

    /// Write the JSON report here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Dump t,R,R1,R2 on the verification grid
    #[arg(long)]
    pub profile_csv: Option<PathBuf>,

    /// Dump Ricci and boundary curvatures on the verification grid
    #[arg(long)]
    pub curvature_csv: Option<PathBuf>,

    /// Dump the rescaled boundary warping function and its curvatures
    #[arg(long)]
    pub boundary_csv: Option<PathBuf>,

    /// JSON file mirroring RunConfig; flags take precedence
    #[arg(long)]
    pub config: Option<PathBuf>,

    /// Print nothing but errors
    #[arg(long, short, conflicts_with = "verbose")]
    pub quiet: bool,

    /// Print every check
    #[arg(long, short)]
    pub verbose: bool,
}

fn parse_assignment(s: &str) -> std::result::Result<(String, f64), String> {
    let (name, value) = s
        .split_once('=')
        .ok_or_else(|| format!("expected NAME=VALUE, got '{s}'"))?;
    let value: f64 = value
        .trim()
        .parse()
        .map_err(|e| format!("bad value for {name}: {e}"))?;
    Ok((name.trim().to_string(), value))
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verbosity {
    Quiet,
    #[default]
    Normal,
    Verbose,
}

/// A fully resolved run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub n: u32,
    pub p: u32,
    pub overrides: BTreeMap<String, f64>,
    pub grid_points: usize,
    pub out_report: Option<PathBuf>,
    pub out_profile_csv: Option<PathBuf>,
    pub out_curvature_csv: Option<PathBuf>,
    pub out_boundary_csv: Option<PathBuf>,
    pub verbosity: Verbosity,
}

/// The config file: any subset of [`RunConfig`].
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    n: Option<u32>,
    p: Option<u32>,
    #[serde(default)]
    overrides: BTreeMap<String, f64>,
    grid_points: Option<usize>,
    out_report: Option<PathBuf>,
    out_profile_csv: Option<PathBuf>,
    out_curvature_csv: Option<PathBuf>,
    out_boundary_csv: Option<PathBuf>,
    verbosity: Option<Verbosity>,
}

impl RunConfig {
    /// Merges the config file (if any) with the flags and validates.
    pub fn resolve(args: &Args) -> Result<Self, CliError> {
        let file = match &args.config {
            Some(path) => {
                let text = fs::read_to_string(path).map_err(|source| CliError::ReadConfig {
                    path: path.clone(),
                    source,
                })?;
                serde_json::from_str(&text).map_err(|source| CliError::ParseConfig {
                    path: path.clone(),
                    source,
                })?
            }
            None => ConfigFile::default(),
        };

        let mut overrides = file.overrides;
        overrides.extend(args.set.iter().cloned());
        let verbosity = if args.quiet {
            Verbosity::Quiet
        } else if args.verbose {
            Verbosity::Verbose
        } else {
            file.verbosity.unwrap_or_default()
        };
        let cfg = RunConfig {
            n: args.dim.or(file.n).ok_or_else(|| {
                Error::config("the dimension is required (--dim or \"n\" in the config file)")
            })?,
            p: args.punctures.or(file.p).ok_or_else(|| {
                Error::config(
                    "the puncture count is required (--punctures or \"p\" in the config file)",
                )
            })?,
            overrides,
            grid_points: args
                .grid
                .or(file.grid_points)
                .unwrap_or(DEFAULT_GRID_POINTS),
            out_report: args.out.clone().or(file.out_report),
            out_profile_csv: args.profile_csv.clone().or(file.out_profile_csv),
            out_curvature_csv: args.curvature_csv.clone().or(file.out_curvature_csv),
            out_boundary_csv: args.boundary_csv.clone().or(file.out_boundary_csv),
            verbosity,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), Error> {
        if self.n < 3 {
            return Err(Error::config(format!(
                "dimension n must be at least 3, got {}",
                self.n
            )));
        }
        if self.p < 1 {
            return Err(Error::config("at least one puncture is required"));
        }
        if self.grid_points < MIN_GRID_POINTS {
            return Err(Error::config(format!(
                "grid needs at least {MIN_GRID_POINTS} points, got {}",
                self.grid_points
            )));
        }
        self.parsed_overrides().map(|_| ())
    }

    pub fn parsed_overrides(&self) -> Result<Overrides, Error> {
        let mut ov = Overrides::default();
        for (name, &value) in &self.overrides {
            ov.set(name, value)?;
        }
        Ok(ov)
    }
}

/// Parses `args` (including the program name) and runs; returns the exit
/// code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&args) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

/// Runs the configured pipeline and writes every artefact; `Ok(passed)`.
pub fn execute(args: &Args) -> Result<bool, CliError> {
    let cfg = RunConfig::resolve(args)?;
    let grid = default_grid(cfg.grid_points)?;
    let pipeline = run_pipeline(cfg.n, cfg.p, &cfg.parsed_overrides()?, &grid)?;
    let report = &pipeline.report;

    let json = report.to_json() + "\n";
    match &cfg.out_report {
        Some(path) => write_atomic(path, json.as_bytes())?,
        None => io::stdout()
            .write_all(json.as_bytes())
            .map_err(|source| CliError::Write {
                path: "<stdout>".into(),
                source,
            })?,
    }
    if let Some(path) = &cfg.out_profile_csv {
        write_atomic(path, &profile_csv(&pipeline)?)?;
    }
    if let Some(path) = &cfg.out_curvature_csv {
        write_atomic(path, &curvature_csv(&pipeline)?)?;
    }
    if let Some(path) = &cfg.out_boundary_csv {
        write_atomic(path, &boundary_csv(&pipeline)?)?;
    }

    if cfg.verbosity != Verbosity::Quiet {
        print_summary(&pipeline, cfg.verbosity == Verbosity::Verbose);
    }
    Ok(report.passed())
}

fn print_summary(pipeline: &Pipeline, verbose: bool) {
    let report = &pipeline.report;
    let passed = report.checks.iter().filter(|c| c.passed).count();
    if verbose {
        for c in &report.checks {
            let margin = c.margin.map_or("-".to_string(), |m| format!("{m:.3e}"));
            eprintln!(
                "{:4} {:36} {:>11}  {}",
                if c.passed { "ok" } else { "FAIL" },
                c.name,
                margin,
                c.anchor
            );
        }
    } else {
        for c in report.failures().filter(|c| !c.is_skipped()) {
            eprintln!(
                "FAIL {} [{}]: {}",
                c.name,
                c.anchor,
                c.cause.as_deref().unwrap_or("margin below threshold")
            );
        }
    }
    if let Some(ps) = &pipeline.params {
        eprintln!(
            "n = {}, p = {}: r0 = {:.6e}, psi = {:.3e}, mu = {:.3e}",
            ps.n, ps.p, ps.r0, ps.psi, ps.mu
        );
    }
    eprintln!(
        "{}: {passed}/{} checks passed",
        if report.passed() { "PASS" } else { "FAIL" },
        report.checks.len()
    );
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

fn encode<const N: usize>(
    header: [&str; N],
    rows: impl Iterator<Item = Vec<String>>,
) -> Result<Vec<u8>, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    w.into_inner().map_err(|e| CliError::Write {
        path: "<csv buffer>".into(),
        source: e.into_error(),
    })
}

/// `t,R,R1,R2` of the smooth profile on the verification grid; header only
/// when the profile could not be built.
pub fn profile_csv(pipeline: &Pipeline) -> Result<Vec<u8>, CliError> {
    let rows = pipeline.profile.iter().flat_map(|sp| {
        pipeline.t_grid.iter().map(move |&t| {
            let j = sp.jet(t);
            vec![num(t), num(j.v), num(j.d1), num(j.d2)]
        })
    });
    encode(PROFILE_HEADER, rows)
}

pub fn curvature_csv(pipeline: &Pipeline) -> Result<Vec<u8>, CliError> {
    let samples = match (&pipeline.profile, &pipeline.params) {
        (Some(sp), Some(ps)) => curvature_samples(sp, ps.n, ps.r0, &pipeline.t_grid)?,
        _ => Vec::new(),
    };
    let rows = samples.into_iter().map(|s| {
        vec![
            num(s.t),
            num(s.ric_tt),
            num(s.ric_xx),
            num(s.ric_ss),
            opt(s.pc_circle),
            opt(s.pc_sphere),
            opt(s.ki_ys),
            opt(s.ki_ss),
        ]
    });
    encode(CURVATURE_HEADER, rows)
}

pub fn boundary_csv(pipeline: &Pipeline) -> Result<Vec<u8>, CliError> {
    let rows = pipeline.boundary.iter().flat_map(|bm| {
        bm.samples.iter().map(|s| {
            vec![
                num(s.s),
                num(s.b),
                num(s.b1),
                num(s.b2),
                num(s.k_rad),
                num(s.k_tan),
            ]
        })
    });
    encode(BOUNDARY_HEADER, rows)
}

/// Writes to a sibling temporary file, then renames it over `path`.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let err = |source| CliError::Write {
        path: path.to_path_buf(),
        source,
    };
    let name = path.file_name().ok_or_else(|| {
        err(io::Error::new(
            io::ErrorKind::InvalidInput,
            "not a file path",
        ))
    })?;
    let mut tmp_name = OsString::from(".");
    tmp_name.push(name);
    tmp_name.push(format!(".tmp-{}", std::process::id()));
    let tmp = path.with_file_name(tmp_name);
    let result = fs::File::create(&tmp)
        .and_then(|mut f| f.write_all(bytes).and_then(|_| f.sync_all()))
        .and_then(|_| fs::rename(&tmp, path));
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result.map_err(err)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(list: &[&str]) -> Args {
        Args::try_parse_from(std::iter::once("ricci-forge").chain(list.iter().copied())).unwrap()
    }

    #[test]
    fn assignments_parse() {
        assert_eq!(
            parse_assignment("zeta=4.5").unwrap(),
            ("zeta".to_string(), 4.5)
        );
        assert!(parse_assignment("zeta").is_err());
        assert!(parse_assignment("zeta=abc").is_err());
    }

    #[test]
    fn flags_resolve_with_defaults() {
        let cfg = RunConfig::resolve(&args(&[
            "--dim",
            "5",
            "--punctures",
            "2",
            "--set",
            "mu=1e-9",
        ]))
        .unwrap();
        assert_eq!((cfg.n, cfg.p, cfg.grid_points), (5, 2, DEFAULT_GRID_POINTS));
        assert_eq!(cfg.parsed_overrides().unwrap().mu, Some(1e-9));
        assert_eq!(cfg.verbosity, Verbosity::Normal);
    }

    #[test]
    fn invalid_configs_are_rejected() {
        for bad in [
            vec!["--dim", "2", "--punctures", "1"],
            vec!["--dim", "3", "--punctures", "0"],
            vec!["--dim", "3", "--punctures", "1", "--grid", "99"],
            vec!["--dim", "3", "--punctures", "1", "--set", "psi=1"],
            vec!["--punctures", "1"],
        ] {
            assert!(RunConfig::resolve(&args(&bad)).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn unknown_override_lists_valid_names() {
        let err = RunConfig::resolve(&args(&["--dim", "3", "--punctures", "1", "--set", "psi=1"]))
            .unwrap_err();
        let msg = err.to_string();
        for name in Overrides::NAMES {
            assert!(msg.contains(name), "{msg}");
        }
    }

    #[test]
    fn quiet_and_verbose_conflict() {
        assert!(Args::try_parse_from(["ricci-forge", "--quiet", "--verbose"]).is_err());
    }
}
