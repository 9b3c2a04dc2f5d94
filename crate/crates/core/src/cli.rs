//! Command-line front end.
//!
//! [`dispatch`] parses arguments, runs one subcommand and writes its output to
//! standard output or to `--out`. The return value is the process exit code:
//! 0 on success, 1 on a computation error, 2 on a usage error and 3 when
//! `verify` finds a failing inequality.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::constants::constants_report;
use crate::excess::{bound_general, bound_s2, bound_s3, compare_bounds, crossovers};
use crate::multipole::{cs_tail_vs_bound, moment_series, tail_sum};
use crate::radial::{b_of_s, beta_upper_bound, figure2_grid, BetaSearch};
use crate::reference::reference;
use crate::variational::{minimize_alpha, AlphaOptions};
use crate::verify::{run_suite, Suite, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_COMPUTATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VERIFICATION: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "ionbound", version, about = "Variational constants and ionization bounds")]
pub struct Cli {
    /// Seed for every randomized component.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Output format; figure commands default to csv, everything else to json.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Flat `key = value` file with budgets and defaults.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Minimize the alpha quotient for N points.
    Alpha {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: f64,
        /// Number of random starts.
        #[arg(long)]
        starts: Option<usize>,
        /// Report the best value even if no start converges.
        #[arg(long)]
        allow_unconverged: bool,
    },
    /// Root t0 and the coefficient b(s).
    Bvalue {
        #[arg(long)]
        s: f64,
    },
    /// Numerical upper bound on beta_s from power-law shell measures.
    BetaNum {
        #[arg(long)]
        s: f64,
    },
    /// Multipole moments and the C_s(r) report.
    Moments {
        #[arg(long)]
        s: f64,
        #[arg(long)]
        r: f64,
        #[arg(long, default_value_t = 40)]
        lmax: usize,
    },
    /// Partial sums of the A_k tail.
    Tails {
        #[arg(long, default_value_t = 3.0)]
        s: f64,
        #[arg(long, default_value_t = 2001)]
        k: usize,
    },
    /// Lieb constant and derived kinetic constants.
    Constants {
        #[arg(long, default_value_t = 1.0)]
        p: f64,
        #[arg(long, default_value_t = 2)]
        u: u32,
    },
    /// Upper bound on the number of electrons.
    Bound {
        #[arg(long)]
        z: f64,
        /// Solve the implicit inequality for this s in [2, 3].
        #[arg(long, conflicts_with = "prop")]
        s: Option<f64>,
        /// Use one of the explicit bounds (default s3).
        #[arg(long, value_parser = ["s2", "s3"])]
        prop: Option<String>,
    },
    /// Compare against the earlier bounds.
    Compare {
        #[arg(long)]
        z: f64,
    },
    /// Charges where the bounds cross.
    Crossovers,
    /// Grid-certify the scalar inequalities.
    Verify {
        #[arg(long, default_value = "all")]
        suite: Suite,
    },
    /// Alpha values over the published N x s grid.
    Figure1,
    /// b(s) and b_num(s) over the published s grid.
    Figure2,
}

/// Settings merged from `--config` and the global flags.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub seed: u64,
    pub n_starts: Option<usize>,
    pub max_iter: usize,
    pub tol_grad: f64,
    pub beta_grid: usize,
    pub verify_resolution: usize,
    pub verify_samples: usize,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        let a = AlphaOptions::for_n(2);
        let v = VerifyOptions::default();
        Self {
            seed: a.seed,
            n_starts: None,
            max_iter: a.max_iter,
            tol_grad: a.tol_grad,
            beta_grid: BetaSearch::default().grid,
            verify_resolution: v.resolution,
            verify_samples: v.random_points,
            format: None,
            out: None,
        }
    }
}

impl Serialize for Format {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
        })
    }
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Computation(String),
}

impl From<crate::Error> for Failure {
    fn from(e: crate::Error) -> Self {
        Failure::Computation(e.to_string())
    }
}

fn parse_value<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, Failure> {
    v.parse()
        .map_err(|_| Failure::Usage(format!("config: invalid value `{v}` for `{key}`")))
}

impl RunConfig {
    /// Parses a flat `key = value` text; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, String> {
        Self::parse_inner(text).map_err(|e| match e {
            Failure::Usage(m) | Failure::Computation(m) => m,
        })
    }

    fn parse_inner(text: &str) -> Result<Self, Failure> {
        let mut cfg = Self::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .map(|(k, v)| (k.trim(), v.trim()))
                .ok_or_else(|| Failure::Usage(format!("config line {}: expected key = value", lineno + 1)))?;
            match key {
                "seed" => cfg.seed = parse_value(key, value)?,
                "n_starts" => cfg.n_starts = Some(parse_value(key, value)?),
                "max_iter" => cfg.max_iter = parse_value(key, value)?,
                "tol_grad" => cfg.tol_grad = parse_value(key, value)?,
                "beta_grid" => cfg.beta_grid = parse_value(key, value)?,
                "verify_resolution" => cfg.verify_resolution = parse_value(key, value)?,
                "verify_samples" => cfg.verify_samples = parse_value(key, value)?,
                "format" => {
                    cfg.format = Some(match value {
                        "json" => Format::Json,
                        "csv" => Format::Csv,
                        _ => return Err(Failure::Usage(format!("config: unknown format `{value}`"))),
                    })
                }
                "out" => cfg.out = Some(PathBuf::from(value)),
                _ => return Err(Failure::Usage(format!("config: unknown key `{key}`"))),
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), Failure> {
        let positive = self.n_starts.is_none_or(|n| n > 0)
            && self.max_iter > 0
            && self.tol_grad > 0.0
            && self.beta_grid > 0
            && self.verify_resolution > 1;
        if positive {
            Ok(())
        } else {
            Err(Failure::Usage("config: all budgets must be positive".into()))
        }
    }

    fn alpha_options(&self, n: usize) -> AlphaOptions {
        let mut o = AlphaOptions::for_n(n);
        o.seed = self.seed;
        o.max_iter = self.max_iter;
        o.tol_grad = self.tol_grad;
        if let Some(k) = self.n_starts {
            o.n_starts = k;
        }
        o
    }
}

/// Output of one subcommand before formatting.
enum Output {
    Json(Value),
    Table { header: Vec<&'static str>, rows: Vec<Vec<Value>> },
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
        Value::Number(n) => format!("{:.6}", n.as_f64().unwrap_or(f64::NAN)),
        Value::String(s) if !s.contains([',', '"', '\n']) => s.clone(),
        other => {
            let text = match other {
                Value::String(s) => s.clone(),
                _ => other.to_string(),
            };
            format!("\"{}\"", text.replace('"', "\"\""))
        }
    }
}

fn render_csv(header: &[String], rows: &[Vec<Value>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = row.iter().map(csv_cell).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// Flattens a JSON object, or an array of objects, into CSV.
fn json_to_csv(v: &Value) -> String {
    let objects: Vec<&serde_json::Map<String, Value>> = match v {
        Value::Object(m) => vec![m],
        Value::Array(a) => a.iter().filter_map(Value::as_object).collect(),
        _ => Vec::new(),
    };
    if objects.is_empty() {
        return format!("value\n{}\n", csv_cell(v));
    }
    let header: Vec<String> = objects[0].keys().cloned().collect();
    let rows: Vec<Vec<Value>> = objects
        .iter()
        .map(|m| header.iter().map(|k| m.get(k).cloned().unwrap_or(Value::Null)).collect())
        .collect();
    render_csv(&header, &rows)
}

fn render(output: &Output, format: Format) -> String {
    match (output, format) {
        (Output::Json(v), Format::Json) => {
            let mut s = serde_json::to_string_pretty(v).expect("serializable");
            s.push('\n');
            s
        }
        (Output::Json(v), Format::Csv) => json_to_csv(v),
        (Output::Table { header, rows }, Format::Csv) => {
            render_csv(&header.iter().map(|h| h.to_string()).collect::<Vec<_>>(), rows)
        }
        (Output::Table { header, rows }, Format::Json) => {
            let arr: Vec<Value> = rows
                .iter()
                .map(|r| {
                    Value::Object(
                        header
                            .iter()
                            .map(|h| h.to_lowercase())
                            .zip(r.iter().cloned())
                            .collect(),
                    )
                })
                .collect();
            let mut s = serde_json::to_string_pretty(&Value::Array(arr)).expect("serializable");
            s.push('\n');
            s
        }
    }
}

fn figure1(cfg: &RunConfig) -> Result<Output, Failure> {
    let data = reference();
    let mut rows = Vec::new();
    for s in data.figure1_s_values() {
        for n in data.figure1_n_values() {
            let mut opts = cfg.alpha_options(n);
            opts.require_convergence = s > 1.0;
            let res = minimize_alpha(n, s, &opts)?;
            rows.push(vec![json!(n), json!(s), json!(res.value)]);
        }
    }
    Ok(Output::Table {
        header: vec!["N", "s", "alpha"],
        rows,
    })
}

fn figure2(cfg: &RunConfig) -> Result<Output, Failure> {
    let search = BetaSearch {
        grid: cfg.beta_grid,
        ..BetaSearch::default()
    };
    let mut rows = Vec::new();
    for s in figure2_grid() {
        let b = b_of_s(s)?;
        let up = beta_upper_bound(s, &search)?;
        rows.push(vec![json!(s), json!(b.b), json!(up.b_num)]);
    }
    Ok(Output::Table {
        header: vec!["s", "b", "b_num"],
        rows,
    })
}

/// Runs the command. The flag reports a verification failure.
fn execute(command: &Command, cfg: &RunConfig) -> Result<(Output, bool), Failure> {
    let json = |v: Value| Ok((Output::Json(v), false));
    match command {
        Command::Alpha {
            n,
            s,
            starts,
            allow_unconverged,
        } => {
            let mut opts = cfg.alpha_options(*n);
            if let Some(k) = starts {
                if *k == 0 {
                    return Err(Failure::Usage("--starts must be positive".into()));
                }
                opts.n_starts = *k;
            }
            opts.require_convergence = !allow_unconverged;
            let r = minimize_alpha(*n, *s, &opts)?;
            json(json!({
                "n": r.n_particles,
                "s": r.s,
                "value": r.value,
                "grad_norm": r.best_gradient_norm,
                "starts_converged": r.n_converged,
                "n_starts": r.n_starts,
                "seed": r.seed,
                "best_start": r.best_start,
                "agreeing_starts": r.agreeing_starts,
                "restarts_disagree": r.restarts_disagree,
                "minimizer": r.minimizer.points,
            }))
        }
        Command::Bvalue { s } => json(to_value(&b_of_s(*s)?)),
        Command::BetaNum { s } => {
            let search = BetaSearch {
                grid: cfg.beta_grid,
                ..BetaSearch::default()
            };
            json(to_value(&beta_upper_bound(*s, &search)?))
        }
        Command::Moments { s, r, lmax } => {
            let series = moment_series(*s, *r, *lmax)?;
            let cs = if (2.0..=3.0).contains(s) && *lmax >= 10 {
                to_value(&cs_tail_vs_bound(*s, *r, *lmax)?)
            } else {
                Value::Null
            };
            json(json!({
                "s": s,
                "r": r,
                "lambda": series.moments,
                "tail_bound": series.tail_bound,
                "cs": cs,
            }))
        }
        Command::Tails { s, k } => json(to_value(&tail_sum(*s, *k)?)),
        Command::Constants { p, u } => json(to_value(&constants_report(*p, *u)?)),
        Command::Bound { z, s, prop } => {
            let b = match (s, prop.as_deref()) {
                (Some(s), _) => bound_general(*z, *s)?,
                (None, Some("s2")) => bound_s2(*z)?,
                _ => bound_s3(*z)?,
            };
            json(to_value(&b))
        }
        Command::Compare { z } => json(to_value(&compare_bounds(*z)?)),
        Command::Crossovers => json(to_value(&crossovers()?)),
        Command::Verify { suite } => {
            let opts = VerifyOptions {
                seed: cfg.seed,
                random_points: cfg.verify_samples,
                resolution: cfg.verify_resolution,
                ..VerifyOptions::default()
            };
            let reports = run_suite(*suite, &opts);
            let failed = reports.iter().any(|r| !r.passed);
            Ok((Output::Json(to_value(&reports)), failed))
        }
        Command::Figure1 => Ok((figure1(cfg)?, false)),
        Command::Figure2 => Ok((figure2(cfg)?, false)),
    }
}

fn load_config(cli: &Cli) -> Result<RunConfig, Failure> {
    let mut cfg = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read config {}: {e}", path.display())))?;
            RunConfig::parse_inner(&text)?
        }
        None => RunConfig::default(),
    };
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if cli.format.is_some() {
        cfg.format = cli.format;
    }
    if cli.out.is_some() {
        cfg.out.clone_from(&cli.out);
    }
    Ok(cfg)
}

fn write_output(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Computation(format!("cannot write {}: {e}", path.display()))),
        None => {
            use std::io::Write;
            std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(|e| Failure::Computation(e.to_string()))
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn dispatch<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let result = load_config(&cli).and_then(|cfg| {
        let default_format = match cli.command {
            Command::Figure1 | Command::Figure2 => Format::Csv,
            _ => Format::Json,
        };
        let (output, failed) = execute(&cli.command, &cfg)?;
        let text = render(&output, cfg.format.unwrap_or(default_format));
        write_output(&text, cfg.out.as_deref())?;
        Ok(failed)
    });
    match result {
        Ok(false) => EXIT_OK,
        Ok(true) => {
            eprintln!("verification failed");
            EXIT_VERIFICATION
        }
        Err(Failure::Usage(msg)) => {
            let mut text = String::new();
            let _ = writeln!(text, "error: {msg}");
            let _ = write!(text, "usage: ionbound [--seed N] [--format json|csv] [--out PATH] [--config PATH] <COMMAND>");
            eprintln!("{text}");
            EXIT_USAGE
        }
        Err(Failure::Computation(msg)) => {
            eprintln!("error: {msg}");
            EXIT_COMPUTATION
        }
    }
}
