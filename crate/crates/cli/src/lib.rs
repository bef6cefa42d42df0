//! Argument parsing, command dispatch and output rendering for the `rellich` binary.
//!
//! Every command produces a [`Report`]: a status, warnings, a JSON result and a
//! flat table used for CSV output. Exit codes: 0 pass, 1 math failure or
//! numerical error, 2 malformed options.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use rellich_core::certificates::{self, CertReport};
use rellich_core::constants::{self, float, Params};
use rellich_core::exact::{parse_decimal, parse_rational, to_f64, Exact};
use rellich_core::field_oracle::{crosscheck, OracleConfig, OracleError};
use rellich_core::poly::Rational;
use rellich_core::spectral::{minimizing_sequence, remainder_suite, ProfileKind, SpectralConfig, SpectralError};

pub const OUT_DIR_ENV: &str = "RELLICH_OUT_DIR";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Relative tolerance for calling two floating-point constants equal on the float path.
const FLOAT_EQUAL_TOL: f64 = 1e-12;
const MAX_SWEEP_POINTS: usize = 100_000;

#[derive(Parser, Debug)]
#[command(name = "rellich", version, about = "Sharp Rellich-Hardy constants for curl-free fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format; defaults to csv for `sweep` and json otherwise.
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,
    /// Output file; relative paths resolve against $RELLICH_OUT_DIR when set.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

impl Format {
    fn ext(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exact constants H, A_ν, C_ν, A_min, C_min and the improvement report.
    Constants(ConstantsArgs),
    /// Replay the certificate suite in exact arithmetic.
    Certify(CertifyArgs),
    /// Rellich-Hardy quotients of a minimizing sequence.
    Quotient(QuotientArgs),
    /// A_min and C_min over a γ grid at fixed N (floating point).
    Sweep(SweepArgs),
    /// Full-dimensional integrals against the reduced one-dimensional forms.
    Oracle(OracleArgs),
    /// Seeded random checks of the remainder inequality.
    Remainder(RemainderArgs),
}

#[derive(Args, Debug)]
pub struct ConstantsArgs {
    #[arg(long = "N")]
    pub n_dim: u32,
    /// Rational literal "p/q" (exact) or decimal (floating point).
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: String,
    /// Largest ν listed in the per-mode table.
    #[arg(long, default_value_t = 8)]
    pub nu_max: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RegimeArg {
    All,
    General,
    Le1,
    Gt1Nge3,
    N2,
    Identities,
}

#[derive(Args, Debug)]
pub struct CertifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub regime: RegimeArg,
    /// Inclusive range of dimensions, e.g. 2..12.
    #[arg(long = "N-range", default_value = "2..12")]
    pub n_range: String,
}

#[derive(Args, Debug)]
pub struct QuotientArgs {
    #[arg(long = "N")]
    pub n_dim: u32,
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: String,
    /// Angular mode; defaults to the minimizer of C_{N,γ,ν}.
    #[arg(long)]
    pub nu: Option<u32>,
    /// Dilation parameters of the sequence.
    #[arg(long = "n-list", value_delimiter = ',', default_value = "10,20,40",
          value_parser = clap::value_parser!(u32).range(1..))]
    pub n_list: Vec<u32>,
    #[arg(long, default_value = "bump")]
    pub profile: ProfileKind,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[arg(long = "N")]
    pub n_dim: u32,
    /// START:STOP:STEP; each part a rational literal or decimal.
    #[arg(long = "gamma-grid", allow_hyphen_values = true, default_value = "-3:3:0.25")]
    pub gamma_grid: String,
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    #[arg(long = "N")]
    pub n_dim: u32,
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: String,
    #[arg(long, default_value_t = 1)]
    pub nu: u32,
    /// Dilation parameter of the profile.
    #[arg(long = "n", default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
    pub dilation: u32,
    #[arg(long, default_value = "bump")]
    pub profile: ProfileKind,
}

#[derive(Args, Debug)]
pub struct RemainderArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Random fields per regime.
    #[arg(long, default_value_t = 20)]
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// Malformed or unsupported options (exit 2).
    Usage(String),
    /// Numerical or mathematical failure while computing (exit 1).
    Math(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub command: &'static str,
    pub status: Status,
    pub warnings: Vec<String>,
    pub result: Value,
    pub table: Table,
}

#[derive(Serialize)]
struct Envelope<'a> {
    command: &'a str,
    version: &'a str,
    status: Status,
    warnings: &'a [String],
    result: &'a Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<&'a str>,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Constants(_) => "constants",
            Command::Certify(_) => "certify",
            Command::Quotient(_) => "quotient",
            Command::Sweep(_) => "sweep",
            Command::Oracle(_) => "oracle",
            Command::Remainder(_) => "remainder",
        }
    }

    fn default_format(&self) -> Format {
        match self {
            Command::Sweep(_) => Format::Csv,
            _ => Format::Json,
        }
    }
}

/// γ as typed: a rational literal, or a decimal literal together with the rational it denotes.
#[derive(Clone, Debug, PartialEq)]
pub enum GammaInput {
    Rational(Rational),
    Decimal { text: String, exact: Rational },
}

impl GammaInput {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        if let Some(r) = parse_rational(s) {
            return Ok(GammaInput::Rational(r));
        }
        match parse_decimal(s) {
            Some(exact) => Ok(GammaInput::Decimal { text: s.trim().to_string(), exact }),
            None => Err(CliError::Usage(format!("gamma `{s}` is neither a rational literal p/q nor a decimal"))),
        }
    }

    fn exact(&self) -> &Rational {
        match self {
            GammaInput::Rational(r) => r,
            GammaInput::Decimal { exact, .. } => exact,
        }
    }

    /// Exact parameters; a decimal literal is converted and a warning recorded.
    fn params(&self, n: u32, warnings: &mut Vec<String>) -> Result<Params, CliError> {
        if let GammaInput::Decimal { text, exact } = self {
            warnings.push(format!("gamma `{text}` is a decimal literal; using the exact rational {exact}"));
        }
        params(n, self.exact().clone())
    }
}

fn params(n: u32, gamma: Rational) -> Result<Params, CliError> {
    Params::new(n, gamma).map_err(|e| CliError::Usage(e.to_string()))
}

pub fn parse_n_range(s: &str) -> Result<(u32, u32), CliError> {
    let bad = || CliError::Usage(format!("N-range `{s}` must look like A..B with 2 <= A <= B"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let (a, b): (u32, u32) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
    if a < 2 || a > b {
        return Err(bad());
    }
    Ok((a, b))
}

/// Parse START:STOP:STEP into the list of γ values START + k·STEP ≤ STOP.
pub fn parse_grid(s: &str) -> Result<Vec<f64>, CliError> {
    let bad = |why: &str| CliError::Usage(format!("gamma grid `{s}`: {why}"));
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(bad("expected START:STOP:STEP"));
    }
    let num = |p: &str| {
        parse_rational(p)
            .or_else(|| parse_decimal(p))
            .map(|r| to_f64(&r))
            .filter(|v| v.is_finite())
            .ok_or_else(|| bad("each part must be a rational literal or decimal"))
    };
    let (start, stop, step) = (num(parts[0])?, num(parts[1])?, num(parts[2])?);
    if step <= 0.0 {
        return Err(bad("STEP must be positive"));
    }
    if stop < start {
        return Err(bad("STOP must not be below START"));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    if count > MAX_SWEEP_POINTS {
        return Err(bad("too many grid points"));
    }
    Ok((0..count).map(|k| start + k as f64 * step).collect())
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// One row per object, with the given top-level keys as columns.
fn table_from(items: &[Value], columns: &[&str]) -> Table {
    Table {
        header: columns.iter().map(|c| c.to_string()).collect(),
        rows: items.iter().map(|it| columns.iter().map(|c| cell(&it[*c])).collect()).collect(),
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn float_equal(a: f64, b: f64) -> bool {
    (a - b).abs() <= FLOAT_EQUAL_TOL * a.abs().max(b.abs()).max(1.0)
}

fn run_constants(a: &ConstantsArgs) -> Result<Report, CliError> {
    let gamma = GammaInput::parse(&a.gamma)?;
    if a.n_dim < 2 {
        return Err(CliError::Usage(format!("N must be at least 2, got {}", a.n_dim)));
    }
    match gamma {
        GammaInput::Rational(g) => constants_exact(a, params(a.n_dim, g)?),
        GammaInput::Decimal { text, .. } => constants_float(a, &text),
    }
}

fn constants_exact(a: &ConstantsArgs, p: Params) -> Result<Report, CliError> {
    let math = |e: constants::ConstantsError| CliError::Math(e.to_string());
    let rep = constants::improvement_report(&p).map_err(math)?;
    let modes: Vec<Value> = (0..=a.nu_max)
        .map(|nu| {
            let (av, cv) = (Exact(constants::rellich_hardy_a(&p, nu)), Exact(constants::rellich_hardy_c(&p, nu)));
            json!({"nu": nu, "A": av.to_string(), "A_approx": av.approx(), "C": cv.to_string(), "C_approx": cv.approx()})
        })
        .collect();
    let status = if rep.sandwich_ok == Some(false) { Status::Fail } else { Status::Pass };
    let mut result = to_value(&rep);
    let obj = result.as_object_mut().expect("struct serializes to an object");
    obj.insert("path".into(), json!("exact"));
    obj.insert("H".into(), to_value(&Exact(constants::hardy_leray(&p))));
    obj.insert("rellich_leray_unconstrained".into(), to_value(&constants::rellich_leray_unconstrained(&p)));
    obj.insert("rellich_leray_curlfree".into(), to_value(&constants::rellich_leray_curlfree(&p).map_err(math)?));
    obj.insert("modes".into(), Value::Array(modes.clone()));
    Ok(Report {
        command: "constants",
        status,
        warnings: vec![],
        result,
        table: table_from(&modes, &["nu", "A", "A_approx", "C", "C_approx"]),
    })
}

fn constants_float(a: &ConstantsArgs, text: &str) -> Result<Report, CliError> {
    let gamma: f64 = text.parse().map_err(|_| CliError::Usage(format!("gamma `{text}` is not a decimal")))?;
    let p = float::ParamsF64 { n: a.n_dim, gamma };
    let modes: Vec<Value> = (0..=a.nu_max)
        .map(|nu| json!({"nu": nu, "A_approx": float::rellich_hardy_a(&p, nu), "C_approx": float::rellich_hardy_c(&p, nu)}))
        .collect();
    let (am, aa) = float::a_min(&p);
    let (cm, ca) = float::c_min(&p);
    let equal = float_equal(am, cm);
    let values = [am, cm, float::hardy_leray(&p)];
    let status = if values.iter().all(|v| v.is_finite()) { Status::Pass } else { Status::Fail };
    let result = json!({
        "N": a.n_dim,
        "gamma": gamma,
        "lambda": p.lambda(),
        "path": "float",
        "H": float::hardy_leray(&p),
        "a_min": {"value": am, "argmin": aa, "nu_scanned": p.nu_max()},
        "c_min": {"value": cm, "argmin": ca, "nu_scanned": p.nu_max()},
        "equal": equal,
        "strict": !equal && cm > am,
        "in_improvement_region": float::in_improvement_region(&p),
        "degenerate": p.lambda() == 0.0,
        "modes": modes,
    });
    Ok(Report {
        command: "constants",
        status,
        warnings: vec![format!("gamma `{text}` is a decimal literal; constants evaluated in floating point")],
        result,
        table: table_from(&modes, &["nu", "A_approx", "C_approx"]),
    })
}

fn run_certify(a: &CertifyArgs) -> Result<Report, CliError> {
    let (lo, hi) = parse_n_range(&a.n_range)?;
    let range = lo..=hi;
    let reports: Vec<CertReport> = match a.regime {
        RegimeArg::All => certificates::certify_all(range),
        RegimeArg::General => certificates::certify_general(range),
        RegimeArg::Le1 => certificates::certify_regime_le1(range),
        RegimeArg::Gt1Nge3 => certificates::certify_regime_gt1_nge3(range),
        RegimeArg::N2 => certificates::certify_regime_n2(),
        RegimeArg::Identities => certificates::identities::verify_constant_identities(),
    };
    let summary = certificates::summarize(&reports);
    let items: Vec<Value> = reports.iter().map(to_value).collect();
    let status = if summary.failed == 0 { Status::Pass } else { Status::Fail };
    Ok(Report {
        command: "certify",
        status,
        warnings: vec![],
        result: json!({"N_range": [lo, hi], "summary": summary, "reports": items}),
        table: table_from(&items, &["name", "group", "regime", "n", "identity_ok", "signs_ok", "failing"]),
    })
}

fn spectral_error(e: SpectralError) -> CliError {
    match e {
        SpectralError::DegenerateMode | SpectralError::InvalidInput(_) => CliError::Usage(e.to_string()),
        other => CliError::Math(other.to_string()),
    }
}

fn run_quotient(a: &QuotientArgs) -> Result<Report, CliError> {
    let mut warnings = vec![];
    let p = GammaInput::parse(&a.gamma)?.params(a.n_dim, &mut warnings)?;
    let cfg = SpectralConfig::default();
    let nu = match a.nu {
        Some(nu) => nu,
        None => constants::c_min(&p).map_err(|e| CliError::Math(e.to_string()))?.argmin,
    };
    let seq = minimizing_sequence(&p, nu, &a.n_list, a.profile, &cfg).map_err(spectral_error)?;
    let below = seq.reports.iter().any(|r| r.quotient < r.target - cfg.bound_tol * r.target.abs().max(1.0));
    let items: Vec<Value> = seq.reports.iter().map(to_value).collect();
    Ok(Report {
        command: "quotient",
        status: if below { Status::Fail } else { Status::Pass },
        warnings,
        result: to_value(&seq),
        table: table_from(&items, &["N", "gamma", "nu", "n", "quotient", "target", "gap"]),
    })
}

pub const SWEEP_COLUMNS: [&str; 8] =
    ["N", "gamma", "A_min", "A_argmin", "C_min", "C_argmin", "equal", "in_improvement_region"];

fn run_sweep(a: &SweepArgs) -> Result<Report, CliError> {
    if a.n_dim < 2 {
        return Err(CliError::Usage(format!("N must be at least 2, got {}", a.n_dim)));
    }
    let rows: Vec<Value> = parse_grid(&a.gamma_grid)?
        .into_iter()
        .map(|gamma| {
            let p = float::ParamsF64 { n: a.n_dim, gamma };
            let (am, aa) = float::a_min(&p);
            let (cm, ca) = float::c_min(&p);
            json!({
                "N": a.n_dim, "gamma": gamma, "A_min": am, "A_argmin": aa, "C_min": cm, "C_argmin": ca,
                "equal": float_equal(am, cm), "in_improvement_region": float::in_improvement_region(&p),
            })
        })
        .collect();
    let finite = rows.iter().all(|r| r["A_min"].is_f64() && r["C_min"].is_f64());
    Ok(Report {
        command: "sweep",
        status: if finite { Status::Pass } else { Status::Fail },
        warnings: vec![],
        result: json!({"N": a.n_dim, "grid": a.gamma_grid, "path": "float", "rows": rows}),
        table: table_from(&rows, &SWEEP_COLUMNS),
    })
}

pub const ORACLE_COLUMNS: [&str; 12] = [
    "N", "gamma", "nu", "n", "i_lap", "spectral_lap", "rel_lap", "i_grad", "spectral_grad", "rel_grad", "rel_rem", "pass",
];

fn run_oracle(a: &OracleArgs) -> Result<Report, CliError> {
    let mut warnings = vec![];
    let p = GammaInput::parse(&a.gamma)?.params(a.n_dim, &mut warnings)?;
    let pf = rellich_core::spectral::Profile::standard(a.profile, a.dilation).map_err(spectral_error)?;
    let (status, rep) = match crosscheck(&p, a.nu, &pf, &OracleConfig::default(), &SpectralConfig::default()) {
        Ok(r) => (Status::Pass, r),
        Err(OracleError::Mismatch(r)) => (Status::Fail, *r),
        Err(e @ (OracleError::UnsupportedDimension(_) | OracleError::InvalidInput(_))) => {
            return Err(CliError::Usage(e.to_string()))
        }
        Err(OracleError::Spectral(e)) => return Err(spectral_error(e)),
        Err(e) => return Err(CliError::Math(e.to_string())),
    };
    let result = to_value(&rep);
    Ok(Report {
        command: "oracle",
        status,
        warnings,
        table: table_from(std::slice::from_ref(&result), &ORACLE_COLUMNS),
        result,
    })
}

fn run_remainder(a: &RemainderArgs) -> Result<Report, CliError> {
    let reports = remainder_suite(a.seed, a.count, &SpectralConfig::default()).map_err(spectral_error)?;
    let failed = reports.iter().filter(|r| !r.pass).count();
    let items: Vec<Value> = reports.iter().map(to_value).collect();
    let summary = json!({"total": reports.len(), "passed": reports.len() - failed, "failed": failed});
    Ok(Report {
        command: "remainder",
        status: if failed == 0 { Status::Pass } else { Status::Fail },
        warnings: vec![],
        result: json!({"seed": a.seed, "per_regime": a.count, "summary": summary, "reports": items}),
        table: table_from(
            &items,
            &["regime", "N", "gamma", "nu", "n", "profile", "gap", "remainder", "factor", "slack", "pass"],
        ),
    })
}

pub fn run(cmd: &Command) -> Result<Report, CliError> {
    match cmd {
        Command::Constants(a) => run_constants(a),
        Command::Certify(a) => run_certify(a),
        Command::Quotient(a) => run_quotient(a),
        Command::Sweep(a) => run_sweep(a),
        Command::Oracle(a) => run_oracle(a),
        Command::Remainder(a) => run_remainder(a),
    }
}

pub fn render_json(command: &str, status: Status, warnings: &[String], result: &Value, error: Option<&str>) -> String {
    let env = Envelope { command, version: VERSION, status, warnings, result, error };
    let mut s = serde_json::to_string_pretty(&env).expect("envelope serializes");
    s.push('\n');
    s
}

pub fn render_csv(t: &Table) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&t.header).expect("in-memory write");
    for r in &t.rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv of utf-8 fields")
}

/// Rendered output of one invocation.
#[derive(Clone, Debug)]
pub struct Rendered {
    pub code: i32,
    pub body: String,
    pub format: Format,
}

/// Run a parsed command line. Usage errors are returned as `Err` with exit code 2;
/// numerical errors render as a JSON envelope with status `error`.
pub fn execute(cli: &Cli) -> Result<Rendered, CliError> {
    let format = cli.format.unwrap_or_else(|| cli.command.default_format());
    match run(&cli.command) {
        Ok(rep) => {
            let body = match format {
                Format::Json => render_json(rep.command, rep.status, &rep.warnings, &rep.result, None),
                Format::Csv => render_csv(&rep.table),
            };
            Ok(Rendered { code: if rep.status == Status::Pass { 0 } else { 1 }, body, format })
        }
        Err(CliError::Math(msg)) => Ok(Rendered {
            code: 1,
            body: render_json(cli.command.name(), Status::Error, &[], &Value::Object(Map::new()), Some(&msg)),
            format: Format::Json,
        }),
        Err(e) => Err(e),
    }
}

/// Where output goes: `--output` (relative to $RELLICH_OUT_DIR when set),
/// else `$RELLICH_OUT_DIR/<command>.<ext>`, else stdout (`None`).
pub fn output_path(cli: &Cli, format: Format, out_dir: Option<PathBuf>) -> Option<PathBuf> {
    match (&cli.output, out_dir) {
        (Some(p), Some(dir)) if p.is_relative() => Some(dir.join(p)),
        (Some(p), _) => Some(p.clone()),
        (None, Some(dir)) => Some(dir.join(format!("{}.{}", cli.command.name(), format.ext()))),
        (None, None) => None,
    }
}

/// Full entry point; returns the process exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let rendered = match execute(&cli) {
        Ok(r) => r,
        Err(CliError::Usage(msg)) | Err(CliError::Math(msg)) => {
            eprintln!("error: {msg}\n\n{}", Cli::command().render_usage());
            return 2;
        }
    };
    let dir = std::env::var_os(OUT_DIR_ENV).filter(|d| !d.is_empty()).map(PathBuf::from);
    match output_path(&cli, rendered.format, dir) {
        None => {
            use std::io::Write;
            let mut out = std::io::stdout().lock();
            match out.write_all(rendered.body.as_bytes()).and_then(|_| out.flush()) {
                Ok(()) => {}
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {}
                Err(e) => {
                    eprintln!("error: cannot write output: {e}");
                    return 1;
                }
            }
        }
        Some(path) => {
            let written = path
                .parent()
                .filter(|p| !p.as_os_str().is_empty())
                .map_or(Ok(()), std::fs::create_dir_all)
                .and_then(|_| std::fs::write(&path, &rendered.body));
            if let Err(e) = written {
                eprintln!("error: cannot write {}: {e}", path.display());
                return 2;
            }
            eprintln!("wrote {}", path.display());
        }
    }
    rendered.code
}
