//! Command-line driver.
//!
//! Every subcommand resolves a [`RunConfig`] from an optional JSON file and
//! the command-line flags (flags win), evaluates its grid in parallel and
//! writes one table, as CSV or JSON, in grid order.

mod output;
mod verify;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Deserialize;
use serde_json::json;

pub use output::{format_float, write_output, Cell, Format, Table};
pub use verify::{beta_checks, beta_free_checks};

use crate::kacg::{b_matrix, g_matrix_quadrature};
use crate::model::{exact_trace_ruelle_power, free_energy_estimate, partition_function_exact};
use crate::ruelle::{ruelle_matrix, truncated_trace_power};
use crate::spectral::{
    eigenvalues, find_line_zeros, find_real_zeros, grid_points, spectrum_converged_with_cap,
    zeta_from_det, PreparedDet, ZeroSearchResult, DEFAULT_CANCEL_EPS, DEFAULT_N_CAP,
};
use crate::{Beta, Complex, Error, ModelParams, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "kacbaker",
    version,
    about = "Kac-Baker transfer operators and Ruelle zeta zeros"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(subcommand)]
    pub command: Command,
}

/// Flags shared by every subcommand. All of them may also come from `--config`.
#[derive(Debug, Default, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CommonArgs {
    /// Interaction range parameter, 0 < λ < 1.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub lambda: Option<f64>,
    /// A single inverse temperature.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub beta: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub beta_min: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub beta_max: Option<f64>,
    #[arg(long, global = true)]
    pub beta_step: Option<f64>,
    /// Truncation dimension.
    #[arg(long = "N", global = true)]
    #[serde(rename = "N")]
    pub n: Option<usize>,
    /// Tolerance; in `verify` it replaces every per-check tolerance.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads for grid evaluation.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// JSON file with any of the above keys.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

impl CommonArgs {
    fn overlay(self, flags: CommonArgs) -> CommonArgs {
        CommonArgs {
            lambda: flags.lambda.or(self.lambda),
            beta: flags.beta.or(self.beta),
            beta_min: flags.beta_min.or(self.beta_min),
            beta_max: flags.beta_max.or(self.beta_max),
            beta_step: flags.beta_step.or(self.beta_step),
            n: flags.n.or(self.n),
            tol: flags.tol.or(self.tol),
            format: flags.format.or(self.format),
            out: flags.out.or(self.out),
            jobs: flags.jobs.or(self.jobs),
            config: flags.config,
        }
    }
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Exact periodic partition functions Z_n and free-energy estimates.
    Partition {
        #[arg(long, default_value_t = 8)]
        max_period: usize,
    },
    /// Traces of operator powers against the lattice sums.
    Traces {
        #[arg(long, default_value_t = 3)]
        max_power: usize,
    },
    /// Eigenvalues of the Ruelle matrix.
    Spectrum {
        /// Grow N until the leading eigenvalues settle to --tol.
        #[arg(long)]
        converged: bool,
    },
    /// Entries of Gutzwiller's closed-form matrix B.
    Bmatrix,
    /// The zeta function at one point z over the β grid.
    Zeta {
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        z_re: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        z_im: f64,
    },
    /// Real zeros and poles, plus complex zeros on the line Re β = ln 2 when λ = 1/2.
    Zeros {
        #[arg(long, allow_hyphen_values = true)]
        line_min: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        line_max: Option<i64>,
    },
    /// Zeta grid scan, optionally writing the zeros in the range to a second file.
    Scan {
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        z_re: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        z_im: f64,
        #[arg(long)]
        zeros_out: Option<PathBuf>,
    },
    /// Run the invariant suite; exit 1 if any check fails.
    Verify,
}

/// Fully resolved settings for one run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub params: ModelParams,
    pub betas: Vec<f64>,
    /// `(min, max, step)` when the grid came from a range.
    pub range: Option<(f64, f64, f64)>,
    pub n: Option<usize>,
    pub tol: Option<f64>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub jobs: Option<usize>,
}

impl RunConfig {
    /// Validates merged arguments; `default_betas` applies when neither a
    /// single β nor a range was given.
    pub fn resolve(args: CommonArgs, default_betas: &[f64]) -> Result<Self> {
        let lambda = args.lambda.unwrap_or(0.5);
        let params = ModelParams::new(lambda)
            .map_err(|_| Error::Usage(format!("lambda must lie in (0, 1), got {lambda}")))?;
        let ranged = args.beta_min.is_some() || args.beta_max.is_some() || args.beta_step.is_some();
        if ranged && args.beta.is_some() {
            return Err(Error::Usage(
                "--beta conflicts with --beta-min/--beta-max/--beta-step".into(),
            ));
        }
        let (betas, range) = if ranged {
            let (Some(lo), Some(hi), Some(step)) = (args.beta_min, args.beta_max, args.beta_step)
            else {
                return Err(Error::Usage(
                    "a beta range needs --beta-min, --beta-max and --beta-step".into(),
                ));
            };
            if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
                return Err(Error::Usage(format!("empty beta range [{lo}, {hi}]")));
            }
            if !(step.is_finite() && step > 0.0) {
                return Err(Error::Usage(format!(
                    "beta step must be positive, got {step}"
                )));
            }
            (grid_points(lo, hi, step), Some((lo, hi, step)))
        } else if let Some(b) = args.beta {
            if !b.is_finite() {
                return Err(Error::Usage(format!("beta must be finite, got {b}")));
            }
            (vec![b], None)
        } else {
            (default_betas.to_vec(), None)
        };
        if args.n == Some(0) {
            return Err(Error::Usage("N must be at least 1".into()));
        }
        if let Some(t) = args.tol {
            if !(t.is_finite() && t > 0.0) {
                return Err(Error::Usage(format!("tol must be positive, got {t}")));
            }
        }
        if args.jobs == Some(0) {
            return Err(Error::Usage("jobs must be at least 1".into()));
        }
        Ok(Self {
            params,
            betas,
            range,
            n: args.n,
            tol: args.tol,
            format: args.format,
            out: args.out,
            jobs: args.jobs,
        })
    }

    fn dim(&self, default: usize) -> usize {
        self.n.unwrap_or(default)
    }

    fn format_or(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }
}

fn load_config(path: &Path) -> Result<CommonArgs> {
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Usage(format!("config {}: {e}", path.display())))
}

/// Parses `args` (program name first), runs the command and returns the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("kacbaker: {e}");
            exit_code(&e)
        }
    }
}

/// Exit status for an error that aborted a run.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io(_) => EXIT_IO,
        Error::Solver { .. } | Error::Convergence { .. } => EXIT_VERIFY,
        _ => EXIT_USAGE,
    }
}

fn execute(cli: Cli) -> Result<i32> {
    let file = match &cli.common.config {
        Some(p) => load_config(p)?,
        None => CommonArgs::default(),
    };
    let merged = file.overlay(cli.common);
    let default_betas: &[f64] = match cli.command {
        Command::Verify => &[0.0, 1.0],
        _ => &[0.0],
    };
    let cfg = RunConfig::resolve(merged, default_betas)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs.unwrap_or(0))
        .build()
        .map_err(|e| Error::Usage(format!("thread pool: {e}")))?;
    pool.install(|| dispatch(&cli.command, &cfg))
}

fn dispatch(command: &Command, cfg: &RunConfig) -> Result<i32> {
    let (text, code) = match command {
        Command::Partition { max_period } => (
            partition_table(cfg, *max_period)?.render(cfg.format_or(Format::Csv)),
            EXIT_OK,
        ),
        Command::Traces { max_power } => (
            traces_table(cfg, *max_power)?.render(cfg.format_or(Format::Csv)),
            EXIT_OK,
        ),
        Command::Spectrum { converged } => (
            spectrum_table(cfg, *converged)?.render(cfg.format_or(Format::Csv)),
            EXIT_OK,
        ),
        Command::Bmatrix => (
            bmatrix_table(cfg)?.render(cfg.format_or(Format::Csv)),
            EXIT_OK,
        ),
        Command::Zeta { z_re, z_im } => (
            zeta_table("zeta", cfg, Complex::new(*z_re, *z_im))?.render(cfg.format_or(Format::Csv)),
            EXIT_OK,
        ),
        Command::Zeros { line_min, line_max } => (
            zeros_table(cfg, *line_min, *line_max)?.render(cfg.format_or(Format::Csv)),
            EXIT_OK,
        ),
        Command::Scan {
            z_re,
            z_im,
            zeros_out,
        } => {
            let table = zeta_table("scan", cfg, Complex::new(*z_re, *z_im))?;
            if let Some(path) = zeros_out {
                let zeros = zeros_table(cfg, None, None)?;
                write_output(Some(path), &zeros.render(cfg.format_or(Format::Csv)))?;
            }
            (table.render(cfg.format_or(Format::Csv)), EXIT_OK)
        }
        Command::Verify => run_verify(cfg)?,
    };
    write_output(cfg.out.as_deref(), &text)?;
    Ok(code)
}

fn partition_table(cfg: &RunConfig, max_period: usize) -> Result<Table> {
    if max_period == 0 {
        return Err(Error::Usage("max-period must be at least 1".into()));
    }
    let mut t = Table::new("partition", &["beta", "n", "z_re", "z_im", "free_energy"]);
    let jobs: Vec<(f64, usize)> = cfg
        .betas
        .iter()
        .flat_map(|&b| (1..=max_period).map(move |n| (b, n)))
        .collect();
    let rows = jobs
        .par_iter()
        .map(|&(b, n)| {
            let z = partition_function_exact(n, Beta::real(b), &cfg.params)?;
            let f = free_energy_estimate(Beta::real(b), n, &cfg.params)?;
            Ok(vec![b.into(), n.into(), z.re.into(), z.im.into(), f.into()])
        })
        .collect::<Result<Vec<_>>>()?;
    rows.into_iter().for_each(|r| t.push(r));
    Ok(t)
}

fn traces_table(cfg: &RunConfig, max_power: usize) -> Result<Table> {
    if max_power == 0 {
        return Err(Error::Usage("max-power must be at least 1".into()));
    }
    let n = cfg.dim(80);
    let mut t = Table::new(
        "traces",
        &[
            "beta",
            "n",
            "z_n",
            "exact_trace",
            "ruelle_trace",
            "gquad_trace",
            "bmatrix_trace",
        ],
    );
    let rows = cfg
        .betas
        .par_iter()
        .map(|&b| {
            let beta = Beta::real(b);
            let l = ruelle_matrix(beta, n, &cfg.params)?;
            let g = if b >= 0.0 {
                Some(g_matrix_quadrature(beta, n, 4 * n, &cfg.params)?)
            } else {
                None
            };
            let bm = b_matrix(beta, n, &cfg.params)?;
            let bm = crate::OperatorMatrix {
                basis: crate::Basis::Hermite,
                beta,
                params: cfg.params,
                entries: bm.entries,
            };
            (1..=max_power)
                .map(|k| {
                    let z = partition_function_exact(k, beta, &cfg.params)?;
                    let exact = exact_trace_ruelle_power(k, beta, &cfg.params)?;
                    let tl = truncated_trace_power(&l, k)?;
                    let tg = match &g {
                        Some(g) => truncated_trace_power(g, k)?.re,
                        None => f64::NAN,
                    };
                    let tb = truncated_trace_power(&bm, k)?;
                    Ok(vec![
                        b.into(),
                        k.into(),
                        z.re.into(),
                        exact.re.into(),
                        tl.re.into(),
                        tg.into(),
                        tb.re.into(),
                    ])
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    rows.into_iter().flatten().for_each(|r| t.push(r));
    Ok(t)
}

fn spectrum_table(cfg: &RunConfig, converged: bool) -> Result<Table> {
    let mut t = Table::new("spectrum", &["beta", "N", "index", "re", "im"]);
    let rows = cfg
        .betas
        .par_iter()
        .map(|&b| {
            let beta = Beta::real(b);
            let spec = if converged {
                let cap = cfg.n.unwrap_or(DEFAULT_N_CAP);
                spectrum_converged_with_cap(
                    beta,
                    &cfg.params,
                    20,
                    20,
                    cfg.tol.unwrap_or(1e-12),
                    cap,
                )?
            } else {
                eigenvalues(&ruelle_matrix(beta, cfg.dim(60), &cfg.params)?)?
            };
            Ok(spec
                .eigenvalues
                .iter()
                .enumerate()
                .map(|(i, r)| vec![b.into(), spec.n.into(), i.into(), r.re.into(), r.im.into()])
                .collect::<Vec<Vec<Cell>>>())
        })
        .collect::<Result<Vec<_>>>()?;
    rows.into_iter().flatten().for_each(|r| t.push(r));
    Ok(t)
}

fn bmatrix_table(cfg: &RunConfig) -> Result<Table> {
    let n = cfg.dim(20);
    let mut t = Table::new("bmatrix", &["beta", "row", "col", "re", "im"]);
    for &b in &cfg.betas {
        let m = b_matrix(Beta::real(b), n, &cfg.params)?;
        for i in 0..n {
            for j in 0..n {
                let v = m.entries[(i, j)];
                t.push(vec![b.into(), i.into(), j.into(), v.re.into(), v.im.into()]);
            }
        }
    }
    Ok(t)
}

fn zeta_table(command: &'static str, cfg: &RunConfig, z: Complex) -> Result<Table> {
    let n = cfg.dim(120);
    let mut t = Table::new(
        command,
        &[
            "beta_re",
            "beta_im",
            "det_num_re",
            "det_num_im",
            "det_den_re",
            "det_den_im",
            "zeta_re",
            "zeta_im",
            "flag",
        ],
    );
    let rows = cfg
        .betas
        .par_iter()
        .map(|&b| {
            let beta = Beta::real(b);
            let det = PreparedDet::new(&ruelle_matrix(beta, n, &cfg.params)?);
            let e = zeta_from_det(&det, z, beta, cfg.params.lambda(), DEFAULT_CANCEL_EPS);
            let v = e.value.unwrap_or(Complex::new(f64::NAN, f64::NAN));
            Ok(vec![
                b.into(),
                0.0.into(),
                e.numerator.re.into(),
                e.numerator.im.into(),
                e.denominator.re.into(),
                e.denominator.im.into(),
                v.re.into(),
                v.im.into(),
                e.flag.as_str().into(),
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    rows.into_iter().for_each(|r| t.push(r));
    Ok(t)
}

fn push_zeros(t: &mut Table, r: &ZeroSearchResult) {
    for z in &r.zeros {
        t.push(vec![
            z.kind.as_str().into(),
            z.location.re.into(),
            z.location.im.into(),
            z.residual.into(),
            r.n.into(),
        ]);
    }
}

fn zeros_table(cfg: &RunConfig, line_min: Option<i64>, line_max: Option<i64>) -> Result<Table> {
    let n = cfg.dim(120);
    let mut t = Table::new(
        "zeros",
        &["kind", "location_re", "location_im", "residual", "N"],
    );
    let Some((lo, hi, step)) = cfg.range else {
        return Err(Error::Usage(
            "zero search needs --beta-min, --beta-max and --beta-step".into(),
        ));
    };
    push_zeros(&mut t, &find_real_zeros((lo, hi), &cfg.params, n, step)?);
    match (line_min, line_max) {
        (None, None) => {}
        (Some(a), Some(b)) if a <= b => {
            if cfg.params.lambda() != 0.5 {
                return Err(Error::Usage(
                    "line zeros are only available for lambda = 0.5".into(),
                ));
            }
            push_zeros(&mut t, &find_line_zeros(&cfg.params, a..=b, n)?);
        }
        _ => {
            return Err(Error::Usage(
                "line search needs --line-min <= --line-max".into(),
            ))
        }
    }
    Ok(t)
}

fn run_verify(cfg: &RunConfig) -> Result<(String, i32)> {
    let mut checks = beta_free_checks(&cfg.params)?;
    let per_beta = cfg
        .betas
        .par_iter()
        .map(|&b| beta_checks(b, &cfg.params))
        .collect::<Result<Vec<_>>>()?;
    checks.extend(per_beta.into_iter().flatten());
    if let Some(tol) = cfg.tol {
        checks = checks.into_iter().map(|c| c.with_tol(tol)).collect();
    }
    let failed = checks.iter().filter(|c| !c.pass).count();
    for c in checks.iter().filter(|c| !c.pass) {
        eprintln!(
            "FAIL {}: abs_err={:e} rel_err={:e} tol={:e}",
            c.check_name, c.abs_err, c.rel_err, c.tol
        );
    }
    let text = match cfg.format_or(Format::Json) {
        Format::Json => {
            let doc = json!({
                "schema_version": 1,
                "command": "verify",
                "lambda": cfg.params.lambda(),
                "betas": cfg.betas,
                "passed": checks.len() - failed,
                "failed": failed,
                "checks": checks,
            });
            let mut s =
                serde_json::to_string_pretty(&doc).map_err(|e| Error::Domain(e.to_string()))?;
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut t = Table::new(
                "verify",
                &[
                    "check_name",
                    "lhs_re",
                    "lhs_im",
                    "rhs_re",
                    "rhs_im",
                    "abs_err",
                    "rel_err",
                    "tol",
                    "pass",
                ],
            );
            for c in &checks {
                t.push(vec![
                    c.check_name.as_str().into(),
                    c.lhs.re.into(),
                    c.lhs.im.into(),
                    c.rhs.re.into(),
                    c.rhs.im.into(),
                    c.abs_err.into(),
                    c.rel_err.into(),
                    c.tol.into(),
                    if c.pass { "true" } else { "false" }.into(),
                ]);
            }
            t.to_csv()
        }
    };
    Ok((text, if failed == 0 { EXIT_OK } else { EXIT_VERIFY }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(extra: &[&str]) -> Vec<String> {
        std::iter::once("kacbaker")
            .chain(extra.iter().copied())
            .map(String::from)
            .collect()
    }

    #[test]
    fn config_validation() {
        let ok = RunConfig::resolve(CommonArgs::default(), &[0.0, 1.0]).unwrap();
        assert_eq!(ok.betas, vec![0.0, 1.0]);
        let bad = CommonArgs {
            lambda: Some(1.5),
            ..Default::default()
        };
        assert!(matches!(
            RunConfig::resolve(bad, &[0.0]),
            Err(Error::Usage(_))
        ));
        let half = CommonArgs {
            beta_min: Some(0.0),
            ..Default::default()
        };
        assert!(matches!(
            RunConfig::resolve(half, &[0.0]),
            Err(Error::Usage(_))
        ));
        let empty = CommonArgs {
            beta_min: Some(1.0),
            beta_max: Some(0.0),
            beta_step: Some(0.1),
            ..Default::default()
        };
        assert!(matches!(
            RunConfig::resolve(empty, &[0.0]),
            Err(Error::Usage(_))
        ));
        let grid = CommonArgs {
            beta_min: Some(0.0),
            beta_max: Some(1.0),
            beta_step: Some(0.1),
            ..Default::default()
        };
        assert_eq!(RunConfig::resolve(grid, &[0.0]).unwrap().betas.len(), 11);
    }

    #[test]
    fn flags_override_file() {
        let file: CommonArgs =
            serde_json::from_str(r#"{"lambda": 0.3, "N": 40, "format": "json"}"#).unwrap();
        let flags = CommonArgs {
            lambda: Some(0.7),
            ..Default::default()
        };
        let m = file.overlay(flags);
        assert_eq!(m.lambda, Some(0.7));
        assert_eq!(m.n, Some(40));
        assert_eq!(m.format, Some(Format::Json));
        assert!(serde_json::from_str::<CommonArgs>(r#"{"lamda": 0.3}"#).is_err());
    }

    #[test]
    fn negative_values_parse() {
        let cli = Cli::try_parse_from(args(&["zeta", "--beta", "-2.5", "--z-re", "-0.1"])).unwrap();
        assert_eq!(cli.common.beta, Some(-2.5));
        assert!(matches!(cli.command, Command::Zeta { z_re, .. } if z_re == -0.1));
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run(args(&["frobnicate"])), EXIT_USAGE);
        assert_eq!(run(args(&["partition", "--lambda", "1.5"])), EXIT_USAGE);
        assert_eq!(run(args(&["zeros", "--beta", "1"])), EXIT_USAGE);
    }
}
