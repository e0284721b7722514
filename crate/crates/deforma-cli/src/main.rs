//! `deforma` — command-line front end for the deformed/fractional calculus
//! library: identity verification, oscillator spectra, density and
//! quantum-potential profiles, and pointwise derivative evaluation.
//!
//! Output is reproducible byte for byte: the same flags (and seed, for
//! `verify`) always produce the same bytes.  Files are written atomically
//! via a temp file in the target directory followed by a rename.

use clap::{Parser, Subcommand, ValueEnum};
use deforma_core::expr::parse_expression;
use deforma_core::fractional::{caputo, feller, riesz};
use deforma_core::qcalc::{big_q_derivative, q_derivative};
use deforma_core::qpotential::{qp_deformed, qp_relation_check};
use deforma_core::spectral::{
    d_oscillator_energies, fractional_oscillator_numeric, probability_density,
    q_oscillator_energies, wkb_energies,
};
use deforma_core::{dcalc, verify, FunctionHandle, Grid, Parity};
use serde_json::json;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "deforma",
    version,
    about = "Deformed and fractional calculus toolkit",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the machine-checked identity suite and print its report.
    Verify {
        /// Restrict to one module (core, qcalc, fractional, dcalc, spectral, qpotential).
        #[arg(long)]
        only: Option<String>,
        /// Seed for the random identity corpora.
        #[arg(long, default_value_t = verify::DEFAULT_SEED)]
        seed: u64,
        /// Write the report to this file instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Tabulate oscillator energy levels.
    Spectrum {
        /// Spectrum source: q (symmetric bracket), wkb (level formula),
        /// numeric (grid Hamiltonian), dunkl (reflection ladder).
        #[arg(long, value_enum)]
        method: Method,
        /// Symmetric deformation parameter (method q).
        #[arg(long = "q", allow_negative_numbers = true)]
        q: Option<f64>,
        /// Fractional order (methods wkb and numeric).
        #[arg(long, allow_negative_numbers = true)]
        alpha: Option<f64>,
        /// Reflection dimension parameter (method dunkl).
        #[arg(long = "D", allow_negative_numbers = true)]
        dim: Option<f64>,
        /// Highest level index to tabulate.
        #[arg(long, default_value_t = 10)]
        nmax: usize,
        /// Half-width of the numeric grid (method numeric).
        #[arg(short = 'L', long = "L", default_value_t = 8.0)]
        l: f64,
        /// Number of numeric grid points (method numeric).
        #[arg(short = 'N', long = "N", default_value_t = 401)]
        n_points: usize,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Sample a density or quantum-potential profile over a grid.
    Profile {
        /// Profile kind: density (free-particle probability density),
        /// qp (deformed quantum potential), qp-check (composition residual).
        #[arg(long, value_enum)]
        kind: Kind,
        /// Reflection dimension parameter.
        #[arg(long = "D", allow_negative_numbers = true)]
        dim: Option<f64>,
        /// Momentum of the free-particle state (kind density).
        #[arg(long, allow_negative_numbers = true)]
        p: Option<f64>,
        /// Declared parity of the amplitude (kinds qp and qp-check).
        #[arg(long, value_enum)]
        parity: Option<ParityArg>,
        /// Amplitude expression in x (kinds qp and qp-check).
        #[arg(long = "r")]
        amplitude: Option<String>,
        /// Half-width of the sampling grid.
        #[arg(short = 'L', long = "L", default_value_t = 8.0)]
        l: f64,
        /// Number of grid points.
        #[arg(short = 'N', long = "N", default_value_t = 401)]
        n_points: usize,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Apply a derivative operator to an expression.
    Deriv {
        /// Operator: q, Q, caputo, riesz, feller, dunkl.
        #[arg(long, value_enum)]
        op: Op,
        /// Expression in x to differentiate.
        #[arg(long = "f")]
        function: String,
        /// Evaluation point; omit to sample over the grid instead.
        #[arg(long, allow_negative_numbers = true)]
        at: Option<f64>,
        /// Symmetric deformation parameter (op q).
        #[arg(long = "q", allow_negative_numbers = true)]
        q: Option<f64>,
        /// One-sided deformation parameter (op Q).
        #[arg(long = "Q", allow_negative_numbers = true)]
        big_q: Option<f64>,
        /// Fractional order (ops caputo, riesz, feller).
        #[arg(long, allow_negative_numbers = true)]
        alpha: Option<f64>,
        /// Reflection dimension parameter (op dunkl).
        #[arg(long = "D", allow_negative_numbers = true)]
        dim: Option<f64>,
        /// Integration cutoff for the singular-kernel operators.
        #[arg(long, default_value_t = 12.0)]
        cutoff: f64,
        /// Discretization step override for caputo/riesz/feller.
        #[arg(long)]
        step: Option<f64>,
        /// Accuracy target used to pick discretization steps.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Half-width of the sampling grid (grid mode).
        #[arg(short = 'L', long = "L", default_value_t = 8.0)]
        l: f64,
        /// Number of grid points (grid mode).
        #[arg(short = 'N', long = "N", default_value_t = 401)]
        n_points: usize,
        #[command(flatten)]
        out: OutputOpts,
    },
}

#[derive(clap::Args)]
struct OutputOpts {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write to this file instead of stdout (atomic replace).
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Q,
    Wkb,
    Numeric,
    Dunkl,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Q => "q",
            Method::Wkb => "wkb",
            Method::Numeric => "numeric",
            Method::Dunkl => "dunkl",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Density,
    Qp,
    QpCheck,
}

impl Kind {
    fn name(self) -> &'static str {
        match self {
            Kind::Density => "density",
            Kind::Qp => "qp",
            Kind::QpCheck => "qp-check",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Op {
    #[value(name = "q")]
    SmallQ,
    #[value(name = "Q")]
    BigQ,
    Caputo,
    Riesz,
    Feller,
    Dunkl,
}

impl Op {
    fn name(self) -> &'static str {
        match self {
            Op::SmallQ => "q",
            Op::BigQ => "Q",
            Op::Caputo => "caputo",
            Op::Riesz => "riesz",
            Op::Feller => "feller",
            Op::Dunkl => "dunkl",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ParityArg {
    Even,
    Odd,
}

impl From<ParityArg> for Parity {
    fn from(p: ParityArg) -> Parity {
        match p {
            ParityArg::Even => Parity::Even,
            ParityArg::Odd => Parity::Odd,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug)]
enum CliError {
    /// Bad flag combination or value: exit 2.
    Usage(String),
    /// Parameter or convergence failure inside an operator: exit 3.
    Numeric(deforma_core::Error),
    /// Output could not be written: exit 2.
    Io(std::io::Error),
}

impl From<deforma_core::Error> for CliError {
    fn from(e: deforma_core::Error) -> Self {
        CliError::Numeric(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Numeric(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
        Err(CliError::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(command: Command) -> Result<ExitCode, CliError> {
    match command {
        Command::Verify { only, seed, output } => cmd_verify(only, seed, output),
        Command::Spectrum {
            method,
            q,
            alpha,
            dim,
            nmax,
            l,
            n_points,
            out,
        } => cmd_spectrum(method, q, alpha, dim, nmax, l, n_points, out),
        Command::Profile {
            kind,
            dim,
            p,
            parity,
            amplitude,
            l,
            n_points,
            out,
        } => cmd_profile(kind, dim, p, parity, amplitude, l, n_points, out),
        Command::Deriv {
            op,
            function,
            at,
            q,
            big_q,
            alpha,
            dim,
            cutoff,
            step,
            tol,
            l,
            n_points,
            out,
        } => cmd_deriv(
            op, &function, at, q, big_q, alpha, dim, cutoff, step, tol, l, n_points, out,
        ),
    }
}

fn need(value: Option<f64>, flag: &str, context: &str) -> Result<f64, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("--{flag} is required for {context}")))
}

// ----------------------------------------------------------------- verify

fn cmd_verify(
    only: Option<String>,
    seed: u64,
    output: Option<PathBuf>,
) -> Result<ExitCode, CliError> {
    if let Some(m) = only.as_deref() {
        if !verify::MODULES.contains(&m) {
            return Err(CliError::Usage(format!(
                "unknown module `{m}` for --only; expected one of {:?}",
                verify::MODULES
            )));
        }
    }
    let report = verify::run(seed, only.as_deref())?;
    emit(output.as_deref(), &report.render())?;
    Ok(if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

// --------------------------------------------------------------- spectrum

#[allow(clippy::too_many_arguments)]
fn cmd_spectrum(
    method: Method,
    q: Option<f64>,
    alpha: Option<f64>,
    dim: Option<f64>,
    nmax: usize,
    l: f64,
    n_points: usize,
    out: OutputOpts,
) -> Result<ExitCode, CliError> {
    let (result, param) = match method {
        Method::Q => {
            let q = need(q, "q", "--method q")?;
            (q_oscillator_energies(q, nmax)?, q)
        }
        Method::Wkb => {
            let alpha = need(alpha, "alpha", "--method wkb")?;
            (wkb_energies(alpha, nmax)?, alpha)
        }
        Method::Numeric => {
            let alpha = need(alpha, "alpha", "--method numeric")?;
            (
                fractional_oscillator_numeric(alpha, l, n_points, nmax + 1)?,
                alpha,
            )
        }
        Method::Dunkl => {
            let d = need(dim, "D", "--method dunkl")?;
            (d_oscillator_energies(d, nmax)?, d)
        }
    };
    let energies = &result.energies;
    let text = match out.format {
        Format::Csv => {
            let mut t = String::from("n,energy,method,param\n");
            for (n, e) in energies.iter().enumerate() {
                let _ = writeln!(t, "{n},{},{},{}", fmt_g(*e), method.name(), fmt_g(param));
            }
            t
        }
        Format::Json => {
            let n: Vec<usize> = (0..energies.len()).collect();
            let meta = json!({
                "command": "spectrum",
                "method": method.name(),
                "param": param,
                "nmax": nmax,
                "L": l,
                "N": n_points,
            });
            let data = json!({
                "n": n,
                "energy": rounded_all(energies),
                "method": vec![method.name(); energies.len()],
                "param": vec![param; energies.len()],
            });
            json_doc(meta, data)
        }
    };
    emit(out.output.as_deref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------- profile

/// Positive-axis grid (0, L] used wherever the origin must be excluded.
fn positive_grid(l: f64, n: usize) -> Result<Grid, CliError> {
    if !(l.is_finite() && l > 0.0) {
        return Err(CliError::Usage(format!(
            "grid half-width L = {l} must be > 0"
        )));
    }
    if n < 2 {
        return Err(CliError::Usage(format!("grid size N = {n} must be >= 2")));
    }
    Ok(Grid::uniform(l / n as f64, l, n)?)
}

fn symmetric_grid(l: f64, n: usize) -> Result<Grid, CliError> {
    if !(l.is_finite() && l > 0.0) {
        return Err(CliError::Usage(format!(
            "grid half-width L = {l} must be > 0"
        )));
    }
    if n < 2 {
        return Err(CliError::Usage(format!("grid size N = {n} must be >= 2")));
    }
    Ok(Grid::uniform(-l, l, n)?)
}

#[allow(clippy::too_many_arguments)]
fn cmd_profile(
    kind: Kind,
    dim: Option<f64>,
    p: Option<f64>,
    parity: Option<ParityArg>,
    amplitude: Option<String>,
    l: f64,
    n_points: usize,
    out: OutputOpts,
) -> Result<ExitCode, CliError> {
    let d = need(dim, "D", &format!("--kind {}", kind.name()))?;
    let text = match kind {
        Kind::Density => {
            let p = need(p, "p", "--kind density")?;
            let grid = symmetric_grid(l, n_points)?;
            let profile = probability_density(p, d, &grid)?;
            match out.format {
                Format::Csv => {
                    let mut t = String::from("xi,rho\n");
                    for (xi, v) in grid.points().iter().zip(&profile.values) {
                        let _ = writeln!(t, "{},{}", fmt_g(*xi), fmt_g(v.re));
                    }
                    t
                }
                Format::Json => {
                    let meta = json!({
                        "command": "profile", "kind": "density",
                        "D": d, "p": p, "L": l, "N": n_points,
                    });
                    let rho: Vec<f64> = profile.values.iter().map(|v| rounded(v.re)).collect();
                    json_doc(
                        meta,
                        json!({ "xi": rounded_all(grid.points()), "rho": rho }),
                    )
                }
            }
        }
        Kind::Qp | Kind::QpCheck => {
            let parity = parity.ok_or_else(|| {
                CliError::Usage(format!("--parity is required for --kind {}", kind.name()))
            })?;
            let expr = amplitude.as_deref().ok_or_else(|| {
                CliError::Usage(format!("--r is required for --kind {}", kind.name()))
            })?;
            let r = parse_expression(expr)?.with_parity(parity.into());
            let grid = positive_grid(l, n_points)?;
            let values: Vec<(f64, f64)> = match kind {
                Kind::Qp => {
                    let mut rows = Vec::with_capacity(grid.len());
                    for &xi in grid.points() {
                        rows.push((qp_deformed(&r, d, parity.into(), xi)?, 0.0));
                    }
                    rows
                }
                _ => {
                    let profile = qp_relation_check(&r, d, parity.into(), &grid)?;
                    profile.values.iter().map(|v| (v.re, v.im)).collect()
                }
            };
            match out.format {
                Format::Csv => {
                    let mut t = String::from("xi,value_re,value_im\n");
                    for (xi, (re, im)) in grid.points().iter().zip(&values) {
                        let _ = writeln!(t, "{},{},{}", fmt_g(*xi), fmt_g(*re), fmt_g(*im));
                    }
                    t
                }
                Format::Json => {
                    let meta = json!({
                        "command": "profile", "kind": kind.name(),
                        "D": d, "parity": match parity { ParityArg::Even => "even", ParityArg::Odd => "odd" },
                        "r": expr, "L": l, "N": n_points,
                    });
                    let re: Vec<f64> = values.iter().map(|v| rounded(v.0)).collect();
                    let im: Vec<f64> = values.iter().map(|v| rounded(v.1)).collect();
                    json_doc(
                        meta,
                        json!({
                            "xi": rounded_all(grid.points()),
                            "value_re": re,
                            "value_im": im,
                        }),
                    )
                }
            }
        }
    };
    emit(out.output.as_deref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

// ------------------------------------------------------------------ deriv

/// Step size targeting `tol` for the first-kind integral scheme, whose
/// error scales like h^(2-alpha); cost-capped on both sides.
fn caputo_step(x: f64, alpha: f64, tol: f64, step: Option<f64>) -> f64 {
    if let Some(h) = step {
        return h;
    }
    let x = x.abs().max(f64::MIN_POSITIVE);
    (x * tol.powf(1.0 / (2.0 - alpha))).clamp(x / 65_536.0, x / 32.0)
}

/// Step size for the symmetric-kernel quadratures (second-order in h).
fn kernel_step(tol: f64, step: Option<f64>) -> f64 {
    step.unwrap_or_else(|| tol.sqrt().clamp(1.0 / 4096.0, 1.0 / 32.0))
}

struct DerivEval {
    f: FunctionHandle,
    op: Op,
    q: f64,
    alpha: f64,
    d: f64,
    cutoff: f64,
    step: Option<f64>,
    tol: f64,
}

impl DerivEval {
    fn value_at(&self, x: f64) -> Result<f64, CliError> {
        Ok(match self.op {
            Op::SmallQ => q_derivative(&self.f, self.q)?.eval_real(x),
            Op::BigQ => big_q_derivative(&self.f, self.q)?.eval_real(x),
            Op::Caputo => caputo(
                &self.f,
                self.alpha,
                x,
                caputo_step(x, self.alpha, self.tol, self.step),
            )?,
            Op::Riesz => riesz(
                &self.f,
                self.alpha,
                x,
                self.cutoff,
                kernel_step(self.tol, self.step),
            )?,
            Op::Feller => feller(
                &self.f,
                self.alpha,
                x,
                self.cutoff,
                kernel_step(self.tol, self.step),
            )?,
            Op::Dunkl => dcalc::d_derivative(&self.f, self.d)?.eval_real(x),
        })
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_deriv(
    op: Op,
    function: &str,
    at: Option<f64>,
    q: Option<f64>,
    big_q: Option<f64>,
    alpha: Option<f64>,
    dim: Option<f64>,
    cutoff: f64,
    step: Option<f64>,
    tol: f64,
    l: f64,
    n_points: usize,
    out: OutputOpts,
) -> Result<ExitCode, CliError> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(CliError::Usage(format!("--tol {tol} must be > 0")));
    }
    let f = parse_expression(function)?;
    let eval = DerivEval {
        f,
        op,
        q: match op {
            Op::SmallQ => need(q, "q", "--op q")?,
            Op::BigQ => need(big_q, "Q", "--op Q")?,
            _ => 0.0,
        },
        alpha: match op {
            Op::Caputo => need(alpha, "alpha", "--op caputo")?,
            Op::Riesz => need(alpha, "alpha", "--op riesz")?,
            Op::Feller => need(alpha, "alpha", "--op feller")?,
            _ => 0.0,
        },
        d: match op {
            Op::Dunkl => need(dim, "D", "--op dunkl")?,
            _ => 1.0,
        },
        cutoff,
        step,
        tol,
    };
    let text = match at {
        Some(x) => {
            let v = eval.value_at(x)?;
            match out.format {
                Format::Csv => format!("{}\n", fmt_g(v)),
                Format::Json => {
                    let meta = deriv_meta(op, function, &eval, json!({ "at": x }));
                    json_doc(meta, json!({ "value": [rounded(v)] }))
                }
            }
        }
        None => {
            let grid = positive_grid(l, n_points)?;
            let mut values = Vec::with_capacity(grid.len());
            for &x in grid.points() {
                values.push(eval.value_at(x)?);
            }
            match out.format {
                Format::Csv => {
                    let mut t = String::from("x,value\n");
                    for (x, v) in grid.points().iter().zip(&values) {
                        let _ = writeln!(t, "{},{}", fmt_g(*x), fmt_g(*v));
                    }
                    t
                }
                Format::Json => {
                    let meta = deriv_meta(op, function, &eval, json!({ "L": l, "N": n_points }));
                    json_doc(
                        meta,
                        json!({
                            "x": rounded_all(grid.points()),
                            "value": rounded_all(&values),
                        }),
                    )
                }
            }
        }
    };
    emit(out.output.as_deref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

fn deriv_meta(
    op: Op,
    function: &str,
    eval: &DerivEval,
    extra: serde_json::Value,
) -> serde_json::Value {
    let mut meta = json!({
        "command": "deriv",
        "op": op.name(),
        "f": function,
        "tol": eval.tol,
    });
    let map = meta.as_object_mut().expect("object literal");
    match op {
        Op::SmallQ => {
            map.insert("q".into(), json!(eval.q));
        }
        Op::BigQ => {
            map.insert("Q".into(), json!(eval.q));
        }
        Op::Caputo => {
            map.insert("alpha".into(), json!(eval.alpha));
        }
        Op::Riesz | Op::Feller => {
            map.insert("alpha".into(), json!(eval.alpha));
            map.insert("cutoff".into(), json!(eval.cutoff));
        }
        Op::Dunkl => {
            map.insert("D".into(), json!(eval.d));
        }
    }
    if let Some(obj) = extra.as_object() {
        for (k, v) in obj {
            map.insert(k.clone(), v.clone());
        }
    }
    meta
}

// ----------------------------------------------------------------- output

/// Round through the 12-significant-digit display form so the JSON numbers
/// agree with the CSV ones.
fn rounded(v: f64) -> f64 {
    fmt_g(v).parse().unwrap_or(v)
}

fn rounded_all<'a>(vs: impl IntoIterator<Item = &'a f64>) -> Vec<f64> {
    vs.into_iter().map(|&v| rounded(v)).collect()
}

fn json_doc(meta: serde_json::Value, data: serde_json::Value) -> String {
    let doc = json!({ "meta": meta, "data": data });
    let mut text = serde_json::to_string_pretty(&doc).expect("valid JSON value");
    text.push('\n');
    text
}

/// Print to stdout, or atomically replace `path` (temp file + rename).
fn emit(path: Option<&Path>, content: &str) -> Result<(), CliError> {
    match path {
        None => {
            std::io::stdout().write_all(content.as_bytes())?;
            Ok(())
        }
        Some(path) => {
            let dir = match path.parent() {
                Some(p) if !p.as_os_str().is_empty() => p,
                _ => Path::new("."),
            };
            let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
            tmp.write_all(content.as_bytes())?;
            tmp.persist(path).map_err(|e| CliError::Io(e.error))?;
            Ok(())
        }
    }
}

/// Format like C's `%.12g`: 12 significant digits, trailing zeros trimmed,
/// scientific notation outside [1e-4, 1e12) with a signed two-digit exponent.
fn fmt_g(x: f64) -> String {
    if x == 0.0 {
        return if x.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let exp = x.abs().log10().floor() as i32;
    if (-4..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        let mut s = format!("{x:.decimals$}");
        if s.contains('.') {
            while s.ends_with('0') {
                s.pop();
            }
            if s.ends_with('.') {
                s.pop();
            }
        }
        s
    } else {
        let s = format!("{x:.11e}");
        let (mantissa, e) = s.split_once('e').expect("exponent marker");
        let mut mantissa = mantissa.to_string();
        if mantissa.contains('.') {
            while mantissa.ends_with('0') {
                mantissa.pop();
            }
            if mantissa.ends_with('.') {
                mantissa.pop();
            }
        }
        let e: i32 = e.parse().expect("numeric exponent");
        format!("{mantissa}e{}{:02}", if e < 0 { '-' } else { '+' }, e.abs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g_formatting() {
        assert_eq!(fmt_g(5.25), "5.25");
        assert_eq!(fmt_g(0.5), "0.5");
        assert_eq!(fmt_g(1.0), "1");
        assert_eq!(fmt_g(-0.0), "-0");
        assert_eq!(fmt_g(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_g(1234.5), "1234.5");
        assert_eq!(fmt_g(1e-5), "1e-05");
        assert_eq!(fmt_g(-2.5e13), "-2.5e+13");
        assert_eq!(fmt_g(std::f64::consts::FRAC_2_SQRT_PI), "1.1283791671");
    }

    #[test]
    fn grids_respect_bounds() {
        let g = positive_grid(8.0, 401).unwrap();
        assert!(g.points()[0] > 0.0);
        assert!((g.points()[400] - 8.0).abs() < 1e-12);
        let s = symmetric_grid(5.0, 101).unwrap();
        assert_eq!(s.len(), 101);
        assert!((s.points()[50]).abs() < 1e-12);
        assert!(positive_grid(-1.0, 10).is_err());
        assert!(symmetric_grid(5.0, 1).is_err());
    }
}
