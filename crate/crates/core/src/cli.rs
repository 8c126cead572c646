//! Command-line front end. `run` is the whole program minus process exit.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rayon::prelude::*;
use serde_json::{json, Map, Number, Value};

use crate::error::{Error, Result};
use crate::extension::{det_with_q, krein_q, krein_q_boundary, Coupling};
use crate::greens::gs_ren_origin;
use crate::hermitian::Hermitian2;
use crate::model::{classify_regime, Regime, Spin, SystemParams};
use crate::oracle::gs_ren_quadrature;
use crate::perturbation::{asymptotic_eigenvalues, E2Value};
use crate::spectrum::{discrete_eigenvalues, solve, SearchOptions, SpectrumReport, DEFAULT_GRID};
use crate::verify::{run_suite, Suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NOT_CONVERGED: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "rashba-spectrum",
    version,
    about = "Point spectrum of the 3D Rashba Hamiltonian with a contact interaction"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate the Krein matrix Q(z), and det(Γ − Q(z)) when a coupling is given.
    Qfunc(QfuncArgs),
    /// Discrete and embedded eigenvalues for one coupling.
    Solve(SolveArgs),
    /// Eigenvalues along C = c·I, R = r·I.
    Sweep(SweepArgs),
    /// Small-α expansion E⁽⁰⁾ + α²E⁽²⁾.
    Expand(ExpandArgs),
    /// Reference values and identities.
    Verify(VerifyArgs),
    /// Compare the closed-form Green values with momentum-space quadrature.
    Oracle(OracleArgs),
}

#[derive(Args, Debug)]
struct ParamArgs {
    #[arg(long, allow_negative_numbers = true)]
    alpha: f64,
    #[arg(long, allow_negative_numbers = true)]
    beta: f64,
}

#[derive(Args, Debug, Default)]
struct CouplingArgs {
    /// Γ as {"pp", "mm", "pm_re", "pm_im"}.
    #[arg(long)]
    gamma_file: Option<PathBuf>,
    /// C = c·I.
    #[arg(long, allow_negative_numbers = true)]
    c: Option<f64>,
    /// R = r·I (default 0 when C is given).
    #[arg(long, allow_negative_numbers = true)]
    r: Option<f64>,
    /// C as a Hermitian matrix file.
    #[arg(long)]
    c_file: Option<PathBuf>,
    /// R as a Hermitian matrix file.
    #[arg(long)]
    r_file: Option<PathBuf>,
    #[arg(long)]
    trivial: bool,
    #[arg(long)]
    friedrichs: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct QfuncArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, allow_negative_numbers = true)]
    z_re: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    z_im: f64,
    #[command(flatten)]
    coupling: CouplingArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[command(flatten)]
    coupling: CouplingArgs,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Lower end of the discrete search.
    #[arg(long, allow_negative_numbers = true)]
    e_min: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_GRID)]
    grid: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, allow_negative_numbers = true)]
    r: f64,
    #[arg(long, allow_negative_numbers = true)]
    c_from: f64,
    #[arg(long, allow_negative_numbers = true)]
    c_to: f64,
    #[arg(long)]
    steps: usize,
    /// Geometric instead of linear spacing in c.
    #[arg(long)]
    log: bool,
    /// Emit an empty row at c = 0 instead of failing.
    #[arg(long)]
    allow_free: bool,
    /// β used in place of 0 when α > 0.
    #[arg(long, default_value_t = 1e-6)]
    beta_epsilon: f64,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct ExpandArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[command(flatten)]
    coupling: CouplingArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SuiteArg {
    Paper,
    Invariants,
    All,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = SuiteArg::All)]
    suite: SuiteArg,
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, allow_negative_numbers = true)]
    z_re: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    z_im: f64,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[command(flatten)]
    output: OutputArgs,
}

/// Resolved inputs shared by the subcommands that take a coupling.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub params: SystemParams,
    pub coupling: Option<Coupling>,
    pub tol: f64,
}

enum Failure {
    Usage(String),
    Lib(Error),
    Verify,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// Parses `args` (including the program name), runs the command and returns
/// the exit code. Results go to `out` unless `--out` names a file.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    let result = match cli.command {
        Command::Qfunc(a) => cmd_qfunc(a, out),
        Command::Solve(a) => cmd_solve(a, out),
        Command::Sweep(a) => cmd_sweep(a, out, err),
        Command::Expand(a) => cmd_expand(a, out),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Oracle(a) => cmd_oracle(a, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Verify) => EXIT_VERIFY,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::NotConverged { .. } => EXIT_NOT_CONVERGED,
                _ => EXIT_USAGE,
            }
        }
    }
}

/// A JSON number printed with 17 significant digits, or null.
pub fn num(x: f64) -> Value {
    if x.is_finite() {
        Value::Number(
            format!("{x:.16e}")
                .parse::<Number>()
                .expect("formatted float parses"),
        )
    } else {
        Value::Null
    }
}

fn fmt_f(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        String::new()
    }
}

fn emit(output: &OutputArgs, body: &str, out: &mut dyn Write) -> CliResult<()> {
    match &output.out {
        Some(path) => fs::write(path, body)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
        None => out
            .write_all(body.as_bytes())
            .map_err(|e| Failure::Usage(format!("cannot write output: {e}"))),
    }
}

fn emit_json(output: &OutputArgs, v: &Value, out: &mut dyn Write) -> CliResult<()> {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    emit(output, &s, out)
}

fn csv_body(header: &[String], rows: &[Vec<String>]) -> CliResult<String> {
    let mut w = csv::WriterBuilder::new()
        .flexible(true)
        .from_writer(Vec::new());
    let e = |e: csv::Error| Failure::Usage(format!("csv: {e}"));
    w.write_record(header).map_err(e)?;
    for r in rows {
        w.write_record(r).map_err(e)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Failure::Usage(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn params(a: &ParamArgs) -> CliResult<SystemParams> {
    Ok(SystemParams::new(a.alpha, a.beta)?)
}

fn read_hermitian(path: &Path) -> CliResult<Hermitian2> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let h: Hermitian2 = serde_json::from_str(&text).map_err(|e| {
        Failure::Usage(format!(
            "{}: expected {{\"pp\", \"mm\", \"pm_re\", \"pm_im\"}}: {e}",
            path.display()
        ))
    })?;
    if !h.is_finite() {
        return Err(Failure::Usage(format!(
            "{}: entries must be finite",
            path.display()
        )));
    }
    Ok(h)
}

fn coupling(a: &CouplingArgs) -> CliResult<Option<Coupling>> {
    let c_given = a.c.is_some() || a.c_file.is_some();
    let kinds = [a.gamma_file.is_some(), c_given, a.trivial, a.friedrichs];
    if kinds.iter().filter(|&&k| k).count() > 1 {
        return Err(Failure::Usage(
            "give exactly one of --gamma-file, --c/--c-file, --trivial, --friedrichs".into(),
        ));
    }
    if (a.r.is_some() || a.r_file.is_some()) && !c_given {
        return Err(Failure::Usage("--r/--r-file needs --c or --c-file".into()));
    }
    if a.c.is_some() && a.c_file.is_some() || a.r.is_some() && a.r_file.is_some() {
        return Err(Failure::Usage(
            "give C and R either as scalars or as files, not both".into(),
        ));
    }
    if let Some(p) = &a.gamma_file {
        return Ok(Some(Coupling::Gamma(read_hermitian(p)?)));
    }
    if a.trivial {
        return Ok(Some(Coupling::Trivial));
    }
    if a.friedrichs {
        return Ok(Some(Coupling::Friedrichs));
    }
    if c_given {
        let c = match (a.c, &a.c_file) {
            (Some(v), _) => Hermitian2::scalar(v),
            (None, Some(p)) => read_hermitian(p)?,
            _ => unreachable!(),
        };
        let r = match (a.r, &a.r_file) {
            (Some(v), _) => Hermitian2::scalar(v),
            (None, Some(p)) => read_hermitian(p)?,
            _ => Hermitian2::zero(),
        };
        if !c.is_finite() || !r.is_finite() {
            return Err(Failure::Usage("C and R must be finite".into()));
        }
        return Ok(Some(Coupling::CAndR { c, r }));
    }
    Ok(None)
}

fn check_tol(tol: f64) -> CliResult<()> {
    if !(1e-14..=1e-2).contains(&tol) {
        return Err(Failure::Usage(format!(
            "--tol must lie in [1e-14, 1e-2] (got {tol})"
        )));
    }
    Ok(())
}

fn complex_fields(m: &mut Map<String, Value>, key: &str, z: Complex64) {
    m.insert(format!("{key}_re"), num(z.re));
    m.insert(format!("{key}_im"), num(z.im));
}

fn cmd_qfunc(a: QfuncArgs, out: &mut dyn Write) -> CliResult<()> {
    let p = params(&a.params)?;
    let z = Complex64::new(a.z_re, a.z_im);
    let on_continuum = z.im == 0.0 && z.re >= -p.sigma();
    let q = if on_continuum {
        krein_q_boundary(&p, z.re)?
    } else {
        krein_q(&p, z)?
    };
    let g = coupling(&a.coupling)?
        .map(|c| c.gamma())
        .transpose()?
        .flatten();
    let det = g.map(|g| det_with_q(&g, &q));
    match a.output.format {
        Format::Json => {
            let mut m = Map::new();
            m.insert("alpha".into(), num(p.alpha()));
            m.insert("beta".into(), num(p.beta()));
            complex_fields(&mut m, "z", z);
            m.insert("boundary".into(), Value::Bool(on_continuum));
            complex_fields(&mut m, "q_pp", q.q_pp);
            complex_fields(&mut m, "q_mm", q.q_mm);
            if let Some(d) = det {
                complex_fields(&mut m, "det", d);
            }
            emit_json(&a.output, &Value::Object(m), out)
        }
        Format::Csv => {
            let mut header: Vec<String> =
                ["z_re", "z_im", "q_pp_re", "q_pp_im", "q_mm_re", "q_mm_im"]
                    .iter()
                    .map(|s| s.to_string())
                    .collect();
            let mut row: Vec<String> = [z.re, z.im, q.q_pp.re, q.q_pp.im, q.q_mm.re, q.q_mm.im]
                .iter()
                .map(|&x| fmt_f(x))
                .collect();
            if let Some(d) = det {
                header.extend(["det_re".to_string(), "det_im".to_string()]);
                row.extend([fmt_f(d.re), fmt_f(d.im)]);
            }
            let body = csv_body(&header, &[row])?;
            emit(&a.output, &body, out)
        }
    }
}

/// The JSON form of a spectrum report.
pub fn report_json(r: &SpectrumReport) -> Value {
    let discrete: Vec<Value> = r
        .discrete
        .iter()
        .map(|d| json!({"E": num(d.energy), "residual": num(d.residual), "multiplicity": d.multiplicity}))
        .collect();
    let embedded: Vec<Value> = r
        .embedded
        .iter()
        .map(|e| json!({"E": num(e.energy), "residual": num(e.condition_residual), "theorem": e.theorem.as_str()}))
        .collect();
    json!({
        "regime": r.regime.regime.as_str(),
        "sigma": num(r.regime.sigma),
        "continuous_edge": num(r.continuous_edge),
        "nu": r.regime.nu.map(num).unwrap_or(Value::Null),
        "series_valid_at_unit_circle": r.regime.series_valid_at_unit_circle,
        "discrete": discrete,
        "embedded": embedded,
        "notes": r.notes,
    })
}

fn cmd_solve(a: SolveArgs, out: &mut dyn Write) -> CliResult<()> {
    let p = params(&a.params)?;
    check_tol(a.tol)?;
    let c = coupling(&a.coupling)?.ok_or_else(|| {
        Failure::Usage(
            "solve needs a coupling (--gamma-file, --c, --trivial or --friedrichs)".into(),
        )
    })?;
    let cfg = RunConfig {
        params: p,
        coupling: Some(c),
        tol: a.tol,
    };
    let opts = SearchOptions {
        e_min: a.e_min,
        tol: cfg.tol,
        grid: a.grid,
    };
    let r = solve(&cfg.params, &c, &opts)?;
    match a.output.format {
        Format::Json => emit_json(&a.output, &report_json(&r), out),
        Format::Csv => {
            let header: Vec<String> = ["kind", "E", "residual", "tag"]
                .iter()
                .map(|s| s.to_string())
                .collect();
            let mut rows = Vec::new();
            for d in &r.discrete {
                rows.push(vec![
                    "discrete".into(),
                    fmt_f(d.energy),
                    fmt_f(d.residual),
                    d.multiplicity.to_string(),
                ]);
            }
            for e in &r.embedded {
                rows.push(vec![
                    "embedded".into(),
                    fmt_f(e.energy),
                    fmt_f(e.condition_residual),
                    e.theorem.as_str().into(),
                ]);
            }
            emit(&a.output, &csv_body(&header, &rows)?, out)
        }
    }
}

fn sweep_grid(from: f64, to: f64, steps: usize, log: bool) -> CliResult<Vec<f64>> {
    if steps < 2 {
        return Err(Failure::Usage(format!(
            "--steps must be at least 2 (got {steps})"
        )));
    }
    if !from.is_finite() || !to.is_finite() {
        return Err(Failure::Usage("--c-from and --c-to must be finite".into()));
    }
    if log && (from == 0.0 || to == 0.0 || from.signum() != to.signum()) {
        return Err(Failure::Usage(
            "--log needs --c-from and --c-to nonzero with the same sign".into(),
        ));
    }
    let n = (steps - 1) as f64;
    Ok((0..steps)
        .map(|k| {
            let t = k as f64 / n;
            if k == steps - 1 {
                to
            } else if log {
                from * (to / from).powf(t)
            } else {
                from + (to - from) * t
            }
        })
        .collect())
}

fn cmd_sweep(a: SweepArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<()> {
    check_tol(a.tol)?;
    let mut beta = a.params.beta;
    if beta == 0.0 && a.params.alpha > 0.0 {
        if !(a.beta_epsilon > 0.0) {
            return Err(Failure::Usage("--beta-epsilon must be positive".into()));
        }
        beta = a.beta_epsilon;
        let _ = writeln!(err, "note: beta = 0 replaced by {beta:e}");
    }
    let p = SystemParams::new(a.params.alpha, beta)?;
    let grid = sweep_grid(a.c_from, a.c_to, a.steps, a.log)?;
    if !a.allow_free && grid.contains(&0.0) {
        return Err(Failure::Usage(
            "c = 0 is the trivial extension with no point spectrum; pass --allow-free to emit an empty row".into(),
        ));
    }
    let opts = SearchOptions {
        tol: a.tol,
        ..Default::default()
    };
    let rows: Vec<Result<Vec<f64>>> = grid
        .par_iter()
        .map(|&c| {
            if c == 0.0 {
                return Ok(Vec::new());
            }
            let g = Hermitian2::scalar(-1.0 / c - a.r);
            Ok(discrete_eigenvalues(&p, &g, &opts)?
                .iter()
                .map(|d| d.energy)
                .collect())
        })
        .collect();
    let rows: Vec<Vec<f64>> = rows.into_iter().collect::<Result<_>>()?;
    match a.output.format {
        Format::Csv => {
            let width = rows.iter().map(|r| r.len()).max().unwrap_or(0);
            let mut header = vec!["c".to_string()];
            header.extend((1..=width).map(|k| format!("E_{k}")));
            let body: Vec<Vec<String>> = grid
                .iter()
                .zip(&rows)
                .map(|(c, r)| {
                    std::iter::once(fmt_f(*c))
                        .chain(r.iter().map(|&e| fmt_f(e)))
                        .collect()
                })
                .collect();
            emit(&a.output, &csv_body(&header, &body)?, out)
        }
        Format::Json => {
            let list: Vec<Value> = grid
                .iter()
                .zip(&rows)
                .map(|(c, r)| json!({"c": num(*c), "energies": r.iter().map(|&e| num(e)).collect::<Vec<_>>()}))
                .collect();
            let v = json!({"alpha": num(p.alpha()), "beta": num(p.beta()), "r": num(a.r), "rows": list});
            emit_json(&a.output, &v, out)
        }
    }
}

fn cmd_expand(a: ExpandArgs, out: &mut dyn Write) -> CliResult<()> {
    let p = params(&a.params)?;
    let info = classify_regime(&p);
    if info.regime != Regime::CaseB {
        return Err(Failure::Lib(Error::Regime(format!(
            "expand needs 0 < alpha < sqrt(2 beta) (regime {})",
            info.regime.as_str()
        ))));
    }
    let g = coupling(&a.coupling)?
        .ok_or_else(|| Failure::Usage("expand needs a coupling".into()))?
        .gamma()?
        .ok_or_else(|| {
            Failure::Usage(
                "the trivial and Friedrichs couplings have no eigenvalues to expand".into(),
            )
        })?;
    let rep = asymptotic_eigenvalues(&p, &g)?;
    let c = &rep.coefficients;
    let pair = |v: [f64; 2]| json!({"plus": num(v[0]), "minus": num(v[1])});
    let coefficients = json!({
        "n0": pair(c.n0),
        "n1": pair(c.n1),
        "lambda0": pair(c.l0),
        "lambda1": pair(c.l1),
        "eta_pp": num(c.eta[0]),
        "eta_mm": num(c.eta[1]),
        "eta_pm": num(c.eta[2]),
        "omega0": pair(c.omega0),
        "omega1": pair(c.omega1),
        "gamma0": num(c.gamma0),
    });
    let eigen: Vec<Value> = rep
        .eigenvalues
        .iter()
        .map(|e| {
            let e2 = match e.e2 {
                E2Value::Single(v) => vec![num(v)],
                E2Value::Twofold([x, y]) => vec![num(x), num(y)],
            };
            json!({
                "e0": num(e.e0),
                "e2": e2,
                "branch": e.branch.as_str(),
                "asymptotic": e.energies(p.alpha()).into_iter().map(num).collect::<Vec<_>>(),
            })
        })
        .collect();
    let v = json!({
        "alpha": num(p.alpha()),
        "beta": num(p.beta()),
        "regime": info.regime.as_str(),
        "coefficients": coefficients,
        "eigenvalues": eigen,
        "gamma_circle_residual": num(rep.gamma_circle_residual),
        "minus_beta_persists": rep.minus_beta_persists,
    });
    match a.output.format {
        Format::Json => emit_json(&a.output, &v, out),
        Format::Csv => {
            let header: Vec<String> = ["e0", "e2", "branch", "asymptotic"]
                .iter()
                .map(|s| s.to_string())
                .collect();
            let mut rows = Vec::new();
            for e in &rep.eigenvalues {
                for (x, en) in e.e2.values().into_iter().zip(e.energies(p.alpha())) {
                    rows.push(vec![
                        fmt_f(e.e0),
                        fmt_f(x),
                        e.branch.as_str().into(),
                        fmt_f(en),
                    ]);
                }
            }
            emit(&a.output, &csv_body(&header, &rows)?, out)
        }
    }
}

fn cmd_verify(a: VerifyArgs, out: &mut dyn Write) -> CliResult<()> {
    let suite = match a.suite {
        SuiteArg::Paper => Suite::Paper,
        SuiteArg::Invariants => Suite::Invariants,
        SuiteArg::All => Suite::All,
    };
    let checks = run_suite(suite);
    let mut ok = true;
    for c in &checks {
        ok &= c.pass;
        writeln!(out, "{}", c.line()).map_err(|e| Failure::Usage(e.to_string()))?;
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::Verify)
    }
}

fn cmd_oracle(a: OracleArgs, out: &mut dyn Write) -> CliResult<()> {
    let p = params(&a.params)?;
    let z = Complex64::new(a.z_re, a.z_im);
    let mut ok = true;
    let mut rows = Vec::new();
    for s in Spin::BOTH {
        let closed = gs_ren_origin(&p, s, z)?;
        let quad = gs_ren_quadrature(&p, s, z, a.tol)?;
        let dev = (closed - quad.value).norm();
        let pass = dev <= 1e-6 * (1.0 + closed.norm());
        ok &= pass;
        rows.push((s, closed, quad, dev, pass));
    }
    match a.output.format {
        Format::Json => {
            let mut m = Map::new();
            m.insert("alpha".into(), num(p.alpha()));
            m.insert("beta".into(), num(p.beta()));
            complex_fields(&mut m, "z", z);
            for (s, closed, quad, dev, pass) in &rows {
                let mut e = Map::new();
                complex_fields(&mut e, "closed", *closed);
                complex_fields(&mut e, "quadrature", quad.value);
                e.insert("abs_error_estimate".into(), num(quad.abs_error_estimate));
                e.insert("evaluations".into(), json!(quad.evaluations));
                e.insert("deviation".into(), num(*dev));
                e.insert("pass".into(), Value::Bool(*pass));
                let key = if *s == Spin::Plus { "plus" } else { "minus" };
                m.insert(key.into(), Value::Object(e));
            }
            emit_json(&a.output, &Value::Object(m), out)?;
        }
        Format::Csv => {
            let header: Vec<String> = [
                "spin",
                "closed_re",
                "closed_im",
                "quad_re",
                "quad_im",
                "error_estimate",
                "deviation",
                "pass",
            ]
            .iter()
            .map(|s| s.to_string())
            .collect();
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|(s, c, q, d, pass)| {
                    vec![
                        s.symbol().to_string(),
                        fmt_f(c.re),
                        fmt_f(c.im),
                        fmt_f(q.value.re),
                        fmt_f(q.value.im),
                        fmt_f(q.abs_error_estimate),
                        fmt_f(*d),
                        pass.to_string(),
                    ]
                })
                .collect();
            emit(&a.output, &csv_body(&header, &body)?, out)?;
        }
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::Verify)
    }
}
