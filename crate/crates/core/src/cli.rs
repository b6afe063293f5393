//! Command-line frontend.
//!
//! Every subcommand produces an [`OutputRecord`], serialized as JSON (keys
//! sorted, floats in `%.17g`) or as CSV rows. Exit codes: 0 on success, 2 on
//! a violated precondition, 3 on a numerical failure or a flagged check, 64 on
//! malformed arguments.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::chain::ChainSequences;
use crate::coulomb::{
    a_coeffs, ab_sequences, appell_genfunc_residual, appell_series, bessel_j, coulomb_f,
    coulomb_ode_residual, lambda_recurrence_residual, powel_residual, sincos_expansion_residual,
    weber_genfunc_lhs, weber_series, weber_window, SinCos,
};
use crate::crr::{crr_eval_hypergeometric, crr_eval_recurrence, crr_monic_sequence};
use crate::error::{CrrError, Result};
use crate::opuc::METHOD_AGREEMENT_TOL;
use crate::param::{ParamB, SeriesControl};
use crate::quadrature::orthogonality_matrix;
use crate::zeros::{crr_zeros, minimize_energy, DEFAULT_MAX_ITER, DEFAULT_TOL};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

/// Agreement required between the eigenvalue and minimization routes for zeros.
pub const ZERO_AGREEMENT_TOL: f64 = 1e-8;
/// Flag threshold for the Coulomb differential-equation residual.
pub const ODE_CHECK_TOL: f64 = 1e-8;
/// Flag threshold for the Coulomb recurrence residuals.
pub const RECURRENCE_CHECK_TOL: f64 = 1e-9;

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ParamValue {
    Int(i64),
    Num(f64),
    Text(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub label: String,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputRecord {
    pub command: String,
    pub params: BTreeMap<String, ParamValue>,
    pub rows: Vec<Row>,
    pub diagnostics: Vec<(String, f64)>,
}

impl OutputRecord {
    fn new(command: &str) -> Self {
        OutputRecord {
            command: command.to_string(),
            params: BTreeMap::new(),
            rows: Vec::new(),
            diagnostics: Vec::new(),
        }
    }

    fn param(&mut self, key: &str, v: ParamValue) -> &mut Self {
        self.params.insert(key.to_string(), v);
        self
    }

    fn num(&mut self, key: &str, v: f64) -> &mut Self {
        self.param(key, ParamValue::Num(v))
    }

    fn int(&mut self, key: &str, v: usize) -> &mut Self {
        self.param(key, ParamValue::Int(v as i64))
    }

    fn text(&mut self, key: &str, v: &str) -> &mut Self {
        self.param(key, ParamValue::Text(v.to_string()))
    }

    fn row(&mut self, label: impl Into<String>, values: Vec<f64>) {
        self.rows.push(Row {
            label: label.into(),
            values,
        });
    }

    fn diag(&mut self, name: &str, value: f64) {
        self.diagnostics.push((name.to_string(), value));
    }

    pub fn to_json(&self) -> String {
        let mut s = String::new();
        s.push_str("{\n");
        let _ = writeln!(s, "  \"command\": {},", json_str(&self.command));
        s.push_str("  \"diagnostics\": [");
        for (k, (name, value)) in self.diagnostics.iter().enumerate() {
            if k > 0 {
                s.push_str(", ");
            }
            let _ = write!(s, "{{\"name\": {}, \"value\": {}}}", json_str(name), json_num(*value));
        }
        s.push_str("],\n  \"params\": {");
        for (k, (key, v)) in self.params.iter().enumerate() {
            if k > 0 {
                s.push_str(", ");
            }
            let v = match v {
                ParamValue::Int(i) => i.to_string(),
                ParamValue::Num(x) => json_num(*x),
                ParamValue::Text(t) => json_str(t),
            };
            let _ = write!(s, "{}: {v}", json_str(key));
        }
        s.push_str("},\n  \"rows\": [");
        for (k, row) in self.rows.iter().enumerate() {
            s.push_str(if k > 0 { ",\n    " } else { "\n    " });
            let vals: Vec<String> = row.values.iter().map(|&v| json_num(v)).collect();
            let _ = write!(
                s,
                "{{\"label\": {}, \"values\": [{}]}}",
                json_str(&row.label),
                vals.join(", ")
            );
        }
        if !self.rows.is_empty() {
            s.push_str("\n  ");
        }
        s.push_str("]\n}\n");
        s
    }

    /// Rows only: `label,v1,v2,...`, one line per row, under a header taken
    /// from the `columns` parameter when present.
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        if let Some(ParamValue::Text(cols)) = self.params.get("columns") {
            let _ = writeln!(s, "label,{cols}");
        }
        for row in &self.rows {
            s.push_str(&csv_field(&row.label));
            for &v in &row.values {
                s.push(',');
                s.push_str(&csv_num(v));
            }
            s.push('\n');
        }
        s
    }
}

/// C's `%.17g`.
pub fn format_g17(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{x:.16e}");
    let (mant, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("exponent digits");
    if !(-4..17).contains(&exp) {
        let mant = strip_zeros(mant);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mant}e{sign}{:02}", exp.abs())
    } else {
        let prec = (16 - exp) as usize;
        strip_zeros(&format!("{x:.prec$}")).to_string()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn json_num(x: f64) -> String {
    if x.is_finite() {
        format_g17(x)
    } else {
        "null".into()
    }
}

fn csv_num(x: f64) -> String {
    format_g17(x)
}

fn json_str(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Inclusive grid `a:b:steps`; `steps = 1` yields just `a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub end: f64,
    pub steps: usize,
}

impl Grid {
    pub fn points(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.start];
        }
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|k| {
                if k + 1 == self.steps {
                    self.end
                } else {
                    self.start + (self.end - self.start) * (k as f64 / last)
                }
            })
            .collect()
    }

    fn describe(&self) -> String {
        format!("{}:{}:{}", format_g17(self.start), format_g17(self.end), self.steps)
    }
}

fn parse_grid(s: &str) -> std::result::Result<Grid, String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("expected a:b:steps, got `{s}`"));
    }
    let num = |p: &str| -> std::result::Result<f64, String> {
        let v: f64 = p.trim().parse().map_err(|_| format!("`{p}` is not a number"))?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(format!("`{p}` is not finite"))
        }
    };
    let steps: usize = parts[2]
        .trim()
        .parse()
        .map_err(|_| format!("`{}` is not a positive step count", parts[2]))?;
    if steps == 0 {
        return Err("the step count must be at least 1".into());
    }
    Ok(Grid {
        start: num(parts[0])?,
        end: num(parts[1])?,
        steps,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PolyMethod {
    Recurrence,
    Hyper,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ZeroMethod {
    Eigen,
    Electro,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Check {
    Ode,
    Recurrence,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Appell,
    Weber,
    Sincos,
    Acoeffs,
}

#[derive(Debug, Parser)]
#[command(
    name = "crr",
    version,
    about = "Complementary Romanovski-Routh polynomials and related special functions"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Evaluate grid points in parallel (output order is unchanged).
    #[arg(long, global = true)]
    parallel: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Evaluate P_n(b; x) on a grid.
    #[command(allow_negative_numbers = true)]
    EvalPoly {
        #[arg(long)]
        lambda: f64,
        #[arg(long, default_value_t = 0.0)]
        eta: f64,
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_grid, allow_hyphen_values = true)]
        x_grid: Grid,
        #[arg(long, value_enum, default_value_t = PolyMethod::Recurrence)]
        method: PolyMethod,
    },
    /// Zeros of P_n(b; .).
    #[command(allow_negative_numbers = true)]
    Zeros {
        #[arg(long)]
        lambda: f64,
        #[arg(long, default_value_t = 0.0)]
        eta: f64,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = ZeroMethod::Eigen)]
        method: ZeroMethod,
    },
    /// Moment matrix of the polynomials against the real-line weight.
    #[command(allow_negative_numbers = true)]
    Ortho {
        #[arg(long)]
        lambda: f64,
        #[arg(long, default_value_t = 0.0)]
        eta: f64,
        #[arg(long)]
        n_max: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Regular Coulomb wave function F_L(eta, w) on a grid.
    #[command(allow_negative_numbers = true)]
    Coulomb {
        #[arg(long = "L")]
        l: u32,
        #[arg(long, default_value_t = 0.0)]
        eta: f64,
        #[arg(long, value_parser = parse_grid, allow_hyphen_values = true)]
        w_grid: Grid,
        #[arg(long, value_enum, value_delimiter = ',')]
        check: Vec<Check>,
    },
    /// Bessel function J_alpha(w) on a grid.
    #[command(allow_negative_numbers = true)]
    Bessel {
        #[arg(long)]
        alpha: f64,
        #[arg(long, value_parser = parse_grid, allow_hyphen_values = true)]
        w_grid: Grid,
    },
    /// Generating-function expansions and their coefficients.
    #[command(allow_negative_numbers = true)]
    Expand {
        #[arg(long)]
        lambda: f64,
        #[arg(long, default_value_t = 0.0)]
        eta: f64,
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        order: usize,
        #[arg(long)]
        x: Option<f64>,
        #[arg(long)]
        w: Option<f64>,
    },
    /// Chain sequence and its parameter sequences.
    #[command(allow_negative_numbers = true)]
    Chain {
        #[arg(long)]
        lambda: f64,
        #[arg(long)]
        n_max: usize,
    },
}

enum Failure {
    Usage(String),
    Lib(CrrError),
}

impl From<CrrError> for Failure {
    fn from(e: CrrError) -> Self {
        Failure::Lib(e)
    }
}

/// A record plus whether one of its checks tripped.
struct Outcome {
    record: OutputRecord,
    flagged: bool,
}

impl Outcome {
    fn ok(record: OutputRecord) -> Self {
        Outcome {
            record,
            flagged: false,
        }
    }
}

/// Runs the command line `args` (program name first).
pub fn run(args: &[String]) -> RunOutput {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => RunOutput {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => RunOutput {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    let ctl = SeriesControl::from_env();
    match dispatch(&cli.cmd, cli.parallel, &ctl) {
        Ok(out) => {
            let stdout = match cli.format {
                Format::Json => out.record.to_json(),
                Format::Csv => out.record.to_csv(),
            };
            let (code, stderr) = if out.flagged {
                (EXIT_NUMERIC, "crr: a check exceeded its tolerance; see diagnostics\n".to_string())
            } else {
                (EXIT_OK, String::new())
            };
            RunOutput { code, stdout, stderr }
        }
        Err(Failure::Usage(msg)) => RunOutput {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
        Err(Failure::Lib(e)) => RunOutput {
            code: if e.is_domain() { EXIT_DOMAIN } else { EXIT_NUMERIC },
            stdout: String::new(),
            stderr: format!("crr: {e}\n"),
        },
    }
}

/// Evaluates `f` at every point, in parallel if asked; the first failure in
/// grid order is reported either way.
fn map_grid<T, F>(xs: &[f64], parallel: bool, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(f64) -> Result<T> + Sync,
{
    let out: Vec<Result<T>> = if parallel {
        xs.par_iter().map(|&x| f(x)).collect()
    } else {
        xs.iter().map(|&x| f(x)).collect()
    };
    out.into_iter().collect()
}

fn max_of(v: impl IntoIterator<Item = f64>) -> f64 {
    v.into_iter().fold(0.0, f64::max)
}

fn dispatch(cmd: &Cmd, parallel: bool, ctl: &SeriesControl) -> std::result::Result<Outcome, Failure> {
    match *cmd {
        Cmd::EvalPoly {
            lambda,
            eta,
            n,
            x_grid,
            method,
        } => Ok(eval_poly(ParamB::new(lambda, eta), n, x_grid, method, parallel)?),
        Cmd::Zeros { lambda, eta, n, method } => Ok(zeros(ParamB::new(lambda, eta), n, method)?),
        Cmd::Ortho {
            lambda,
            eta,
            n_max,
            tol,
        } => Ok(ortho(ParamB::new(lambda, eta), n_max, tol)?),
        Cmd::Coulomb {
            l,
            eta,
            w_grid,
            ref check,
        } => Ok(coulomb(l, eta, w_grid, check, parallel, ctl)?),
        Cmd::Bessel { alpha, w_grid } => Ok(bessel(alpha, w_grid, parallel, ctl)?),
        Cmd::Expand {
            lambda,
            eta,
            kind,
            order,
            x,
            w,
        } => expand(ParamB::new(lambda, eta), kind, order, x, w, ctl),
        Cmd::Chain { lambda, n_max } => Ok(chain(lambda, n_max)?),
    }
}

fn eval_poly(b: ParamB, n: usize, grid: Grid, method: PolyMethod, parallel: bool) -> Result<Outcome> {
    let mut rec = OutputRecord::new("eval-poly");
    rec.num("lambda", b.lambda)
        .num("eta", b.eta)
        .int("n", n)
        .text("x_grid", &grid.describe());
    let (name, columns) = match method {
        PolyMethod::Recurrence => ("recurrence", "x,recurrence"),
        PolyMethod::Hyper => ("hyper", "x,hypergeometric"),
        PolyMethod::Both => ("both", "x,recurrence,hypergeometric"),
    };
    rec.text("method", name).text("columns", columns);
    let xs = grid.points();
    let rows = map_grid(&xs, parallel, |x| {
        Ok(match method {
            PolyMethod::Recurrence => vec![x, crr_eval_recurrence(b, n, x)?],
            PolyMethod::Hyper => vec![x, crr_eval_hypergeometric(b, n, x)?],
            PolyMethod::Both => vec![x, crr_eval_recurrence(b, n, x)?, crr_eval_hypergeometric(b, n, x)?],
        })
    })?;
    let mut flagged = false;
    if method == PolyMethod::Both {
        let disc = max_of(rows.iter().map(|r| (r[1] - r[2]).abs() / r[1].abs().max(1.0)));
        rec.diag("max_discrepancy", disc);
        rec.diag("tolerance", METHOD_AGREEMENT_TOL);
        flagged = !(disc <= METHOD_AGREEMENT_TOL);
    }
    for r in rows {
        rec.row(format!("x={}", format_g17(r[0])), r);
    }
    Ok(Outcome { record: rec, flagged })
}

fn zeros(b: ParamB, n: usize, method: ZeroMethod) -> Result<Outcome> {
    let mut rec = OutputRecord::new("zeros");
    rec.num("lambda", b.lambda).num("eta", b.eta).int("n", n);
    rec.text(
        "method",
        match method {
            ZeroMethod::Eigen => "eigen",
            ZeroMethod::Electro => "electro",
            ZeroMethod::Both => "both",
        },
    );
    let eigen = match method {
        ZeroMethod::Eigen | ZeroMethod::Both => Some(crr_zeros(b, n)?),
        ZeroMethod::Electro => None,
    };
    let electro = match method {
        ZeroMethod::Electro | ZeroMethod::Both => Some(minimize_energy(n, b, None, DEFAULT_TOL, DEFAULT_MAX_ITER)?),
        ZeroMethod::Eigen => None,
    };
    let mut flagged = false;
    if let Some(z) = &eigen {
        rec.row("eigen", z.positions.clone());
        rec.diag("eigen_energy", z.energy);
        rec.diag("eigen_grad_norm", z.grad_norm);
    }
    if let Some(z) = &electro {
        rec.row("electro", z.positions.clone());
        rec.diag("electro_energy", z.energy);
        rec.diag("electro_grad_norm", z.grad_norm);
        rec.diag("electro_iterations", z.iterations as f64);
    }
    if let (Some(a), Some(e)) = (&eigen, &electro) {
        let disc = max_of(a.positions.iter().zip(&e.positions).map(|(p, q)| (p - q).abs()));
        rec.diag("max_discrepancy", disc);
        rec.diag("tolerance", ZERO_AGREEMENT_TOL);
        flagged = !(disc <= ZERO_AGREEMENT_TOL);
    }
    Ok(Outcome { record: rec, flagged })
}

fn ortho(b: ParamB, n_max: usize, tol: f64) -> Result<Outcome> {
    let mut rec = OutputRecord::new("ortho");
    rec.num("lambda", b.lambda)
        .num("eta", b.eta)
        .int("n_max", n_max)
        .num("tol", tol)
        .text("columns", "m=0..n");
    let g = orthogonality_matrix(b, n_max, tol)?;
    let gamma = crate::chain::gamma_seq(b.lambda, n_max)?;
    let mut off = 0.0f64;
    let mut diag_err = 0.0f64;
    for n in 0..=n_max {
        let col: Vec<f64> = (0..=n).map(|m| g[(m, n)]).collect();
        for &v in &col[..n] {
            off = off.max(v.abs());
        }
        diag_err = diag_err.max((col[n] - gamma[n]).abs());
        rec.row(format!("n={n}"), col);
    }
    rec.diag("max_offdiagonal", off);
    rec.diag("max_gamma_error", diag_err);
    Ok(Outcome::ok(rec))
}

fn coulomb(l: u32, eta: f64, grid: Grid, checks: &[Check], parallel: bool, ctl: &SeriesControl) -> Result<Outcome> {
    let ode = checks.contains(&Check::Ode);
    let recur = checks.contains(&Check::Recurrence);
    let mut rec = OutputRecord::new("coulomb");
    let mut cols = vec!["w", "F"];
    if ode {
        cols.push("ode_residual");
    }
    if recur {
        cols.extend(["l_recurrence_residual", "lambda_recurrence_residual"]);
    }
    let names: Vec<&str> = checks
        .iter()
        .map(|c| match c {
            Check::Ode => "ode",
            Check::Recurrence => "recurrence",
        })
        .collect();
    rec.int("L", l as usize)
        .num("eta", eta)
        .text("w_grid", &grid.describe())
        .text("check", &names.join(","))
        .text("columns", &cols.join(","));
    let b = ParamB::new(l as f64 + 1.0, -eta);
    let ws = grid.points();
    let rows = map_grid(&ws, parallel, |w| {
        let mut v = vec![w, coulomb_f(l, eta, w, ctl)?];
        if ode {
            v.push(coulomb_ode_residual(l, eta, w, ctl)?);
        }
        if recur {
            v.push(if l >= 1 { powel_residual(l, eta, w, ctl)? } else { f64::NAN });
            v.push(lambda_recurrence_residual(b, w, ctl)?);
        }
        Ok(v)
    })?;
    let mut flagged = false;
    let mut k = 2;
    if ode {
        let m = max_of(rows.iter().map(|r| r[k]));
        rec.diag("max_ode_residual", m);
        flagged |= !(m <= ODE_CHECK_TOL);
        k += 1;
    }
    if recur {
        let m = max_of(rows.iter().flat_map(|r| [r[k], r[k + 1]]).filter(|v| !v.is_nan()));
        rec.diag("max_recurrence_residual", m);
        flagged |= !(m <= RECURRENCE_CHECK_TOL);
    }
    for r in rows {
        rec.row(format!("w={}", format_g17(r[0])), r);
    }
    Ok(Outcome { record: rec, flagged })
}

fn bessel(alpha: f64, grid: Grid, parallel: bool, ctl: &SeriesControl) -> Result<Outcome> {
    let mut rec = OutputRecord::new("bessel");
    rec.num("alpha", alpha)
        .text("w_grid", &grid.describe())
        .text("columns", "w,J");
    let ws = grid.points();
    let rows = map_grid(&ws, parallel, |w| Ok(vec![w, bessel_j(alpha, w, ctl)?]))?;
    for r in rows {
        rec.row(format!("w={}", format_g17(r[0])), r);
    }
    Ok(Outcome::ok(rec))
}

fn require(v: Option<f64>, flag: &str, kind: &str) -> std::result::Result<f64, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("--kind {kind} requires --{flag}")))
}

fn expand(
    b: ParamB,
    kind: Kind,
    order: usize,
    x: Option<f64>,
    w: Option<f64>,
    ctl: &SeriesControl,
) -> std::result::Result<Outcome, Failure> {
    let mut rec = OutputRecord::new("expand");
    rec.num("lambda", b.lambda).num("eta", b.eta).int("order", order);
    if let Some(x) = x {
        rec.num("x", x);
    }
    if let Some(w) = w {
        rec.num("w", w);
    }
    match kind {
        Kind::Appell => {
            let (x, w) = (require(x, "x", "appell")?, require(w, "w", "appell")?);
            rec.text("kind", "appell");
            let monic = crr_monic_sequence(b, order, Complex64::new(x, 0.0))?;
            rec.row("monic", monic.iter().map(|z| z.re).collect());
            rec.row("series", vec![appell_series(b, x, w, order)?]);
            rec.diag("residual", appell_genfunc_residual(b, x, w, order, ctl)?);
        }
        Kind::Weber => {
            let (x, w) = (require(x, "x", "weber")?, require(w, "w", "weber")?);
            rec.text("kind", "weber");
            let lhs = weber_genfunc_lhs(b, x, w)?;
            let series = weber_series(b, x, w, order)?;
            rec.row("closed_form", vec![lhs]);
            rec.row("series", vec![series]);
            rec.diag("residual", (lhs - series).abs());
            rec.diag("window", weber_window(x));
        }
        Kind::Sincos => {
            rec.text("kind", "sincos");
            let (a, bs) = ab_sequences(b, order)?;
            rec.row("a", a);
            rec.row("b", bs);
            if let Some(w) = w {
                for (name, which) in [
                    ("cos_residual", SinCos::Cos),
                    ("sin_residual", SinCos::Sin),
                    ("combined_residual", SinCos::Combined),
                ] {
                    rec.diag(name, sincos_expansion_residual(b, w, order, which, ctl)?);
                }
            }
        }
        Kind::Acoeffs => {
            let l = b.lambda - 1.0;
            if !(l >= 0.0 && l == l.round() && l <= u32::MAX as f64) {
                return Err(CrrError::Domain(format!(
                    "--kind acoeffs needs lambda = L + 1 with integer L >= 0, got lambda = {}",
                    b.lambda
                ))
                .into());
            }
            // b = L + 1 + i eta_b corresponds to the Coulomb charge eta = -eta_b.
            rec.text("kind", "acoeffs").int("L", l as usize).num("coulomb_eta", -b.eta);
            rec.row("A", a_coeffs(l as u32, -b.eta, order)?);
        }
    }
    Ok(Outcome::ok(rec))
}

fn chain(lambda: f64, n_max: usize) -> Result<Outcome> {
    let mut rec = OutputRecord::new("chain");
    rec.num("lambda", lambda).int("n_max", n_max);
    let cs = ChainSequences::new(lambda, n_max)?;
    // d starts at d_2, ell and big_l at index 1, gamma at 0.
    rec.row("d", cs.d.get(2..).map(<[f64]>::to_vec).unwrap_or_default());
    rec.row("ell", cs.ell[1..].to_vec());
    if !cs.big_l.is_empty() {
        rec.row("big_l", cs.big_l[1..].to_vec());
        rec.row("gamma", cs.gamma.clone());
    }
    Ok(Outcome::ok(rec))
}
