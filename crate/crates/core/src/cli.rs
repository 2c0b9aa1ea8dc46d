//! Command-line front end. `run_with` takes explicit streams so the whole
//! interface can be driven from tests.

use crate::error::Error;
use crate::numeric::{c, C};
use crate::qdilog::{self, QdilogParam};
use crate::qseries::{self, Base, Phi21Params};
use crate::reflectionless::{self as rl, seeds_build_with_cap, SeedSpec, DEFAULT_MAX_SEEDS};
use crate::scattering::amplitudes;
use crate::solvable::{apply_full, eigenpair, reflectionless_identification, Coupling, PotentialFn};
use crate::verify::{self, Suite, VerifyOptions, TOL_CONJECTURE, TOL_EVAL};
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;
use std::io::{Read, Write};
use std::path::PathBuf;

pub const WORKERS_ENV: &str = "QREFLESS_WORKERS";

#[derive(Parser, Debug)]
#[command(name = "qrefless", version, about = "Discrete quantum mechanics with pure imaginary shifts")]
pub struct Cli {
    /// Worker threads for grid sweeps (overrides QREFLESS_WORKERS).
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Quantum dilogarithm.
    #[command(subcommand)]
    Qdilog(QdilogCmd),
    /// Basic hypergeometric series at |q| = 1.
    #[command(subcommand)]
    Qseries(QseriesCmd),
    /// Reflectionless potentials from seed data.
    #[command(subcommand)]
    Refless(ReflessCmd),
    /// The exactly solvable family.
    #[command(subcommand)]
    Solvable(SolvableCmd),
    /// Scattering amplitudes and connection-formula evidence.
    #[command(subcommand)]
    Scatter(ScatterCmd),
    /// Run the full acceptance suite and print a summary table.
    VerifyAll(VerifyAllArgs),
}

#[derive(Subcommand, Debug)]
pub enum QdilogCmd {
    /// Evaluate Φ_γ(z) and print JSON.
    Eval {
        #[arg(long)]
        gamma: f64,
        /// Complex argument as RE,IM.
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long, default_value_t = TOL_EVAL)]
        tol: f64,
    },
}

#[derive(Subcommand, Debug)]
pub enum QseriesCmd {
    /// Sum ₂φ₁(a, b; c; q; z) with q = e^{-ε + iγ}.
    Phi21 {
        #[arg(long)]
        gamma: f64,
        #[arg(long, default_value_t = 0.0)]
        epsilon: f64,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        /// Read a, b, c, z as exponents (a = e^λ, ...).
        #[arg(long)]
        exponents: bool,
        #[arg(long, default_value_t = TOL_EVAL)]
        tol: f64,
    },
}

#[derive(Subcommand, Debug)]
pub enum ReflessCmd {
    /// Tabulate V, 𝒰_N and the bound states on a grid.
    Table {
        #[arg(long)]
        gamma: f64,
        /// Seeds file (JSON array of {"k", "c_tilde"} or "k c_tilde" lines); `-` reads stdin.
        #[arg(long)]
        seeds: String,
        #[arg(long, default_value = "-5:5:0.5", allow_hyphen_values = true)]
        x_range: String,
        #[command(flatten)]
        out: OutArgs,
        #[arg(long, default_value_t = DEFAULT_MAX_SEEDS)]
        max_seeds: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum SolvableCmd {
    /// Tabulate φ_n and its pointwise residual.
    Eigen {
        #[arg(long)]
        gamma: f64,
        #[arg(long)]
        h: f64,
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[arg(long, default_value = "-5:5:0.5", allow_hyphen_values = true)]
        x_range: String,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Compare the family at integer h with the soliton seeds.
    Identify {
        #[arg(long)]
        gamma: f64,
        #[arg(long = "N", short = 'N')]
        big_n: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum ScatterCmd {
    /// t(k), r(k) and the unitarity defect on a k-grid.
    Amplitudes {
        #[arg(long)]
        gamma: f64,
        #[arg(long)]
        h: f64,
        /// A:B:N, N evenly spaced points.
        #[arg(long)]
        k_grid: String,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Run one evidence suite for the connection formula.
    VerifyConjecture {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, default_value_t = VerifyOptions::default().seed)]
        seed: u64,
    },
}

#[derive(Args, Debug)]
pub struct OutArgs {
    /// `csv`, `json`, or a file path (`.json` selects JSON).
    #[arg(long, default_value = "csv")]
    pub out: String,
}

#[derive(Args, Debug)]
pub struct VerifyAllArgs {
    /// Tolerance of the conjecture-evidence checks.
    #[arg(long, default_value_t = TOL_CONJECTURE)]
    pub tol: f64,
    /// Comma-separated criterion ids.
    #[arg(long)]
    pub only: Option<String>,
    /// Also write the full report as JSON to this path.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numeric(Error),
    Io(std::io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Numeric(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Numeric(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

pub type Res<T> = std::result::Result<T, CliError>;

/// Parameter errors found while building inputs count as usage errors.
fn usage<T>(r: crate::Result<T>) -> Res<T> {
    r.map_err(|e| CliError::Usage(e.to_string()))
}

pub fn parse_complex(s: &str) -> Res<C> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |p: &str| p.parse::<f64>().map_err(|_| CliError::Usage(format!("bad number {p:?} in {s:?}")));
    match parts.as_slice() {
        [re] => Ok(c(num(re)?, 0.0)),
        [re, im] => Ok(c(num(re)?, num(im)?)),
        _ => Err(CliError::Usage(format!("expected RE,IM, got {s:?}"))),
    }
}

/// `A:B:STEP` inclusive of `B` up to rounding.
pub fn parse_step_range(s: &str) -> Res<Vec<f64>> {
    let (a, b, step) = three(s)?;
    if !(step > 0.0) || b < a {
        return Err(CliError::Usage(format!("range {s:?} needs A <= B and STEP > 0")));
    }
    let n = ((b - a) / step + 1e-9).floor() as usize;
    if n > 10_000_000 {
        return Err(CliError::Usage(format!("range {s:?} has too many points")));
    }
    Ok((0..=n).map(|i| a + step * i as f64).collect())
}

/// `A:B:N`, `N` points from `A` to `B` inclusive.
pub fn parse_count_range(s: &str) -> Res<Vec<f64>> {
    let (a, b, n) = three(s)?;
    if n < 1.0 || n.fract() != 0.0 || b < a {
        return Err(CliError::Usage(format!("grid {s:?} needs A <= B and a positive integer N")));
    }
    Ok(crate::numeric::linspace(a, b, n as usize))
}

fn three(s: &str) -> Res<(f64, f64, f64)> {
    let v: Vec<f64> = s
        .split(':')
        .map(|p| p.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| CliError::Usage(format!("bad range {s:?}")))?;
    match v.as_slice() {
        &[a, b, c] if a.is_finite() && b.is_finite() && c.is_finite() => Ok((a, b, c)),
        _ => Err(CliError::Usage(format!("expected A:B:X, got {s:?}"))),
    }
}

/// Seeds as a JSON array of `{"k", "c_tilde"}` or as `k c_tilde` lines
/// (commas allowed, `#` comments). Empty input means no seeds.
pub fn parse_seeds(text: &str) -> Res<Vec<SeedSpec>> {
    let t = text.trim();
    if t.is_empty() {
        return Ok(Vec::new());
    }
    if t.starts_with('[') {
        return serde_json::from_str(t).map_err(|e| CliError::Usage(format!("seeds JSON: {e}")));
    }
    let mut out = Vec::new();
    for (i, line) in t.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let v: Vec<f64> = line
            .split(|ch: char| ch == ',' || ch.is_whitespace())
            .filter(|p| !p.is_empty())
            .map(str::parse)
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| CliError::Usage(format!("seeds line {}: {line:?}", i + 1)))?;
        match v.as_slice() {
            &[k, c_tilde] => out.push(SeedSpec { k, c_tilde }),
            _ => return Err(CliError::Usage(format!("seeds line {} needs two numbers", i + 1))),
        }
    }
    Ok(out)
}

#[derive(Serialize)]
struct Versioned<T: Serialize> {
    schema: u32,
    #[serde(flatten)]
    body: T,
}

fn json<T: Serialize>(body: T) -> String {
    serde_json::to_string_pretty(&Versioned { schema: 1, body }).expect("serializable")
}

/// A table with `#` metadata lines, rendered as CSV or JSON.
struct Table {
    meta: Vec<String>,
    columns: Vec<String>,
    rows: Vec<Vec<f64>>,
}

impl Table {
    fn csv(&self) -> String {
        let mut s = String::new();
        for m in &self.meta {
            s.push_str(&format!("# {m}\n"));
        }
        s.push_str(&self.columns.join(","));
        s.push('\n');
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(|v| format!("{v:e}")).collect();
            s.push_str(&cells.join(","));
            s.push('\n');
        }
        s
    }

    fn json(&self) -> String {
        #[derive(Serialize)]
        struct Body<'a> {
            meta: &'a [String],
            columns: &'a [String],
            rows: &'a [Vec<f64>],
        }
        json(Body { meta: &self.meta, columns: &self.columns, rows: &self.rows }) + "\n"
    }

    fn emit(&self, out: &OutArgs, w: &mut Vec<u8>) -> Res<()> {
        match out.out.as_str() {
            "csv" | "CSV" => w.write_all(self.csv().as_bytes())?,
            "json" | "JSON" => w.write_all(self.json().as_bytes())?,
            path => {
                let body = if path.ends_with(".json") { self.json() } else { self.csv() };
                std::fs::write(path, body)?;
            }
        }
        Ok(())
    }
}

fn cplx_cols(name: &str) -> [String; 2] {
    [format!("{name}_re"), format!("{name}_im")]
}

/// Worker count: flag, then environment, then rayon's default.
pub fn worker_count(flag: Option<usize>) -> Option<usize> {
    flag.or_else(|| std::env::var(WORKERS_ENV).ok().and_then(|v| v.parse().ok())).filter(|&n| n > 0)
}

pub fn run() -> i32 {
    let argv: Vec<String> = std::env::args().collect();
    let stdin = std::io::stdin();
    run_with(argv, &mut stdin.lock(), &mut std::io::stdout(), &mut std::io::stderr())
}

/// Exit codes: 0 success, 1 numerical failure or failed check, 2 usage error.
pub fn run_with(argv: Vec<String>, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let piped = match &cli.command {
        Command::Refless(ReflessCmd::Table { seeds, .. }) if seeds == "-" => {
            let mut s = String::new();
            if let Err(e) = stdin.read_to_string(&mut s) {
                let _ = writeln!(err, "error: reading stdin: {e}");
                return 1;
            }
            Some(s)
        }
        _ => None,
    };
    let mut buf = Vec::new();
    let exec = || dispatch(cli.command, piped, &mut buf);
    let result = match worker_count(cli.workers) {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(exec),
            Err(e) => Err(CliError::Usage(format!("cannot start {n} workers: {e}"))),
        },
        None => exec(),
    };
    if out.write_all(&buf).and_then(|_| out.flush()).is_err() {
        return 1;
    }
    match result {
        Ok(code) => code,
        Err(CliError::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            2
        }
        Err(CliError::Numeric(e)) => {
            #[derive(Serialize)]
            struct Body {
                error: String,
                message: String,
            }
            let _ = writeln!(err, "{}", json(Body { error: e.kind().into(), message: e.to_string() }));
            1
        }
        Err(CliError::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn dispatch(cmd: Command, piped: Option<String>, out: &mut Vec<u8>) -> Res<i32> {
    match cmd {
        Command::Qdilog(QdilogCmd::Eval { gamma, z, tol }) => {
            let p = usage(QdilogParam::new(gamma))?.with_tol(tol);
            let z = parse_complex(&z)?;
            let v = qdilog::eval(&p, z)?;
            writeln!(out, "{}", json(v))?;
        }
        Command::Qseries(QseriesCmd::Phi21 { gamma, epsilon, a, b, c: cc, z, exponents, tol }) => {
            let base = usage(Base::new(gamma, epsilon))?;
            let (a, b, cc, z) = (parse_complex(&a)?, parse_complex(&b)?, parse_complex(&cc)?, parse_complex(&z)?);
            let r = if exponents {
                qseries::phi21_exp(&base, &Phi21Params::from_exponents(a, b, cc), z, tol)?
            } else {
                qseries::phi21(&base, &usage(Phi21Params::from_values(a, b, cc))?, z, tol)?
            };
            writeln!(out, "{}", json(r))?;
        }
        Command::Refless(ReflessCmd::Table { gamma, seeds, x_range, out: o, max_seeds }) => {
            let text = match piped {
                Some(s) => s,
                None => std::fs::read_to_string(&seeds)?,
            };
            let specs = parse_seeds(&text)?;
            let k: Vec<f64> = specs.iter().map(|s| s.k).collect();
            let ct: Vec<f64> = specs.iter().map(|s| s.c_tilde).collect();
            let seed = usage(seeds_build_with_cap(gamma, &k, &ct, max_seeds))?;
            let xs = parse_step_range(&x_range)?;
            let mut columns = vec!["x".to_string()];
            columns.extend(cplx_cols("V"));
            columns.extend(cplx_cols("U"));
            for j in 1..=seed.n() {
                columns.extend(cplx_cols(&format!("Phi{j}")));
            }
            let rows: crate::Result<Vec<Vec<f64>>> = xs
                .par_iter()
                .map(|&x| {
                    let xc = c(x, 0.0);
                    let mut row = vec![x];
                    for v in [rl::potential_v(&seed, xc)?, rl::potential_cal_u(&seed, xc)?] {
                        row.extend([v.re, v.im]);
                    }
                    for j in 1..=seed.n() {
                        let v = rl::bound_state(&seed, j, xc)?;
                        row.extend([v.re, v.im]);
                    }
                    Ok(row)
                })
                .collect();
            let mut meta = vec![
                format!("qrefless refless table gamma={gamma} N={}", seed.n()),
                format!("k={:?} c_tilde={:?}", seed.k, seed.c_tilde),
            ];
            let cond = xs.iter().map(|&x| rl::tau_u_with_cond(&seed, c(x, 0.0)).1).fold(0.0, f64::max);
            if cond > 1e12 {
                meta.push(format!("warning: u_N condition estimate {cond:.2e}; expect reduced accuracy"));
            }
            Table { meta, columns, rows: rows? }.emit(&o, out)?;
        }
        Command::Solvable(SolvableCmd::Eigen { gamma, h, n, x_range, out: o }) => {
            let cp = usage(Coupling::new(gamma, h))?;
            if n > cp.nmax {
                return Err(CliError::Usage(format!("level n={n} exceeds nmax={} for h={h}", cp.nmax)));
            }
            let xs = parse_step_range(&x_range)?;
            let (e, f) = eigenpair(&cp, n)?;
            let v = PotentialFn::generic(&cp);
            let vals: crate::Result<Vec<(C, f64)>> = xs
                .par_iter()
                .map(|&x| {
                    let xc = c(x, 0.0);
                    let fx = f(xc)?;
                    Ok((fx, (apply_full(&v, &*f, xc)? - e * fx).norm()))
                })
                .collect();
            let vals = vals?;
            let scale = vals.iter().map(|(fx, _)| fx.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
            let rows = xs.iter().zip(&vals).map(|(&x, (fx, r))| vec![x, fx.re, fx.im, r / scale]).collect();
            let meta = vec![format!("qrefless solvable eigen gamma={gamma} h={h} n={n} energy={e:e}")];
            let columns = ["x", "phi_re", "phi_im", "residual"].map(String::from).to_vec();
            Table { meta, columns, rows }.emit(&o, out)?;
        }
        Command::Solvable(SolvableCmd::Identify { gamma, big_n }) => {
            if big_n == 0 {
                return Err(CliError::Usage("N must be at least 1".into()));
            }
            usage(Coupling::new(gamma, big_n as f64))?;
            let rep = reflectionless_identification(gamma, big_n);
            writeln!(out, "{}", json(&rep))?;
            let worst = rep.potential_dev.max(rep.polynomial_dev).max(rep.eigenvalue_dev);
            if !(worst < crate::verify::TOL_IDENTITY) {
                return Ok(1);
            }
        }
        Command::Scatter(ScatterCmd::Amplitudes { gamma, h, k_grid, out: o }) => {
            let cp = usage(Coupling::new(gamma, h))?;
            let ks = parse_count_range(&k_grid)?;
            if ks[0] <= 0.0 {
                return Err(CliError::Usage("k-grid must be positive".into()));
            }
            let rows: crate::Result<Vec<Vec<f64>>> = ks
                .par_iter()
                .map(|&k| {
                    let a = amplitudes(&cp, k)?;
                    Ok(vec![k, a.t.re, a.t.im, a.r.re, a.r.im, a.unitarity_defect])
                })
                .collect();
            let meta = vec![format!("qrefless scatter amplitudes gamma={gamma} h={h} k_grid={k_grid}")];
            let columns = ["k", "t_re", "t_im", "r_re", "r_im", "defect"].map(String::from).to_vec();
            Table { meta, columns, rows: rows? }.emit(&o, out)?;
        }
        Command::Scatter(ScatterCmd::VerifyConjecture { suite, tol, seed }) => {
            let suite: Suite = usage(suite.parse())?;
            let tol = tol.unwrap_or(suite.default_tol());
            if !(tol > 0.0) {
                return Err(CliError::Usage(format!("tolerance must be positive, got {tol}")));
            }
            let rep = verify::conjecture_suite(suite, tol, seed);
            writeln!(out, "{}", serde_json::to_string_pretty(&rep).expect("serializable"))?;
            return Ok(if rep.pass { 0 } else { 1 });
        }
        Command::VerifyAll(a) => {
            if !(a.tol > 0.0) {
                return Err(CliError::Usage(format!("tolerance must be positive, got {}", a.tol)));
            }
            let ids: Vec<u8> = match &a.only {
                None => (1..=10).collect(),
                Some(s) => s
                    .split(',')
                    .map(|p| p.trim().parse::<u8>().ok().filter(|i| (1..=10).contains(i)))
                    .collect::<Option<_>>()
                    .ok_or_else(|| CliError::Usage(format!("--only expects ids in 1..=10, got {s:?}")))?,
            };
            let opts = VerifyOptions { conjecture_tol: a.tol, ..Default::default() };
            let mut results = Vec::new();
            for id in ids {
                let r = verify::run_criterion(id, &opts);
                writeln!(out, "{}", r.summary_line())?;
                results.push(r);
            }
            let pass = results.iter().all(|r| r.pass);
            writeln!(out, "{} of {} criteria passed", results.iter().filter(|r| r.pass).count(), results.len())?;
            if let Some(p) = a.json {
                #[derive(Serialize)]
                struct Body<'a> {
                    pass: bool,
                    criteria: &'a [verify::CriterionResult],
                }
                std::fs::write(p, json(Body { pass, criteria: &results }) + "\n")?;
            }
            return Ok(if pass { 0 } else { 1 });
        }
    }
    Ok(0)
}
