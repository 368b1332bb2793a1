mod output;
mod parse;

use std::collections::BTreeMap;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};

use xiforge::hyper::{p_q, p_q_scaled, MAX_RELIABLE_DEGREE};
use xiforge::quadrature::{QuadratureConfig, QuadratureResult};
use xiforge::special::digamma;
use xiforge::theta::{omega, psi_j, SeriesControl, ThetaArgument};
use xiforge::verify::{run_suite, Suite, SuiteParams};
use xiforge::xi::{
    mellin_omega_integral, mellin_psi_integral, xi_direct, xi_prop3, xi_prop4, Prop4Form, SplitParameter,
};
use xiforge::zeros::{default_t_max, find_zeros, verify_exhaustive, DEFAULT_GRID_STEP};
use xiforge::zeta::ZetaFamilyPoint;
use xiforge::Error;

use output::{CsvWriter, Format, OutputRecord};
use parse::Range;

#[derive(Parser, Debug)]
#[command(name = "xiforge", version, about = "Hermite-theta zeta family and xi representations")]
struct Cli {
    /// Output format for records (scans are always CSV).
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,

    /// Absolute quadrature tolerance.
    #[arg(long, global = true, env = "XIFORGE_ABS_TOL")]
    abs_tol: Option<f64>,

    /// Relative quadrature tolerance.
    #[arg(long, global = true, env = "XIFORGE_REL_TOL")]
    rel_tol: Option<f64>,

    /// Tail tolerance for theta series.
    #[arg(long, global = true, env = "XIFORGE_TAIL_TOL")]
    tail_tol: Option<f64>,

    /// Omit the timestamp metadata so output is byte-for-byte reproducible.
    #[arg(long, global = true)]
    no_meta: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a single quantity.
    Eval(EvalArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Tabulate a function along a line as CSV.
    Scan(ScanArgs),
    /// Critical-line zeros of P_q with a count verdict.
    Zeros(ZerosArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum EvalTarget {
    Pq,
    ZetaFamily,
    Theta,
    Psi,
    XiDirect,
    XiProp3,
    XiProp4,
    Mellin,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum FormArg {
    I,
    Ii,
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[arg(value_enum)]
    target: EvalTarget,
    #[arg(long)]
    q: Option<u32>,
    #[arg(long)]
    j: Option<u32>,
    #[arg(long)]
    ell: Option<u32>,
    /// Hermite degree for omega_{n,ell}(t) under `theta`.
    #[arg(long)]
    n: Option<u32>,
    /// Complex argument `re,im`.
    #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
    s: Option<Complex64>,
    /// Theta argument `re,im`.
    #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
    x: Option<Complex64>,
    /// Split point: real for xi-prop3, `re,im` for xi-prop4.
    #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
    b: Option<Complex64>,
    #[arg(long, value_enum, default_value = "i")]
    form: FormArg,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(value_parser = parse_suite)]
    suite: Suite,
    #[arg(long)]
    qmax: Option<u32>,
    #[arg(long)]
    j: Option<u32>,
    #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
    s: Option<Complex64>,
    /// `0.5,1,2` for real points or `re,im;re,im` for complex ones.
    #[arg(long, allow_hyphen_values = true)]
    b_list: Option<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ScanTarget {
    PqLine,
    XiLine,
    PsiRay,
}

#[derive(Args, Debug)]
struct ScanArgs {
    #[arg(value_enum)]
    target: ScanTarget,
    #[arg(long)]
    q: Option<u32>,
    #[arg(long)]
    j: Option<u32>,
    /// Inclusive grid `start:stop:step`.
    #[arg(long, value_parser = parse::range, allow_hyphen_values = true)]
    t: Option<Range>,
    #[arg(long, allow_hyphen_values = true)]
    from: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    to: Option<f64>,
    #[arg(long)]
    step: Option<f64>,
}

#[derive(Args, Debug)]
struct ZerosArgs {
    #[arg(long)]
    q: u32,
    #[arg(long)]
    t_max: Option<f64>,
    #[arg(long)]
    grid_step: Option<f64>,
}

fn parse_suite(text: &str) -> Result<Suite, String> {
    text.parse::<Suite>().map_err(|e| e.to_string())
}

/// Failure of a command, carrying its exit status.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Core(Error),
    Verification(String),
    Io(io::Error),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) | Failure::Io(_) => 1,
            Failure::Core(Error::Convergence { .. } | Error::ToleranceNotMet { .. }) => 2,
            Failure::Core(Error::CountMismatch { .. }) => 3,
            Failure::Core(_) => 1,
            Failure::Verification(_) => 3,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) | Failure::Verification(m) => m.clone(),
            Failure::Core(e) => e.to_string(),
            Failure::Io(e) => e.to_string(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type CmdResult = Result<(), Failure>;

struct Settings {
    format: Format,
    meta: bool,
    qc: QuadratureConfig,
    ctl: SeriesControl,
}

impl Settings {
    fn from_cli(cli: &Cli) -> Result<Self, Failure> {
        let base = QuadratureConfig::default();
        let qc = base.with_tolerances(cli.abs_tol.unwrap_or(base.abs_tol), cli.rel_tol.unwrap_or(base.rel_tol))?;
        let ctl = SeriesControl::new(
            cli.tail_tol.unwrap_or(SeriesControl::DEFAULT_TAIL_TOL),
            SeriesControl::DEFAULT_MAX_TERMS,
        )?;
        Ok(Self {
            format: cli.format,
            meta: !cli.no_meta,
            qc,
            ctl,
        })
    }

    fn emit(&self, record: OutputRecord) -> CmdResult {
        record.with_meta(self.meta).emit(self.format)?;
        Ok(())
    }
}

fn require<T>(value: Option<T>, flag: &str, what: &str) -> Result<T, Failure> {
    value.ok_or_else(|| Failure::Usage(format!("{what} requires --{flag}")))
}

fn complex_json(z: Complex64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

fn quad_record(command: &str, params: BTreeMap<String, Value>, r: QuadratureResult) -> OutputRecord {
    let mut record = OutputRecord::scalar(command, params, r.value);
    record.err_estimate = Some(r.err_estimate);
    record
}

fn cmd_eval(args: &EvalArgs, cfg: &Settings) -> CmdResult {
    let name = args.target.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
    let command = format!("eval {name}");
    let what = command.as_str();
    let mut params = BTreeMap::new();
    let record = match args.target {
        EvalTarget::Pq => {
            let q = require(args.q, "q", what)?;
            let s = require(args.s, "s", what)?;
            params.insert("q".into(), json!(q));
            params.insert("s".into(), complex_json(s));
            let mut r = OutputRecord::scalar(what, params, p_q(q, s)?);
            r.warnings = xiforge::hyper::precision_warning(q).iter().map(ToString::to_string).collect();
            r
        }
        EvalTarget::ZetaFamily => {
            let q = require(args.q, "q", what)?;
            let ell = require(args.ell, "ell", what)?;
            let s = require(args.s, "s", what)?;
            params.insert("q".into(), json!(q));
            params.insert("ell".into(), json!(ell));
            params.insert("s".into(), complex_json(s));
            let v = ZetaFamilyPoint::new(q, ell, s).evaluate()?;
            let mut r = OutputRecord::scalar(what, params, v.value);
            r.warnings = v.warnings.iter().map(ToString::to_string).collect();
            r
        }
        EvalTarget::Theta => {
            let sum = if let Some(n) = args.n {
                let ell = args.ell.unwrap_or(0);
                let t = require(args.x, "x", what)?;
                params.insert("n".into(), json!(n));
                params.insert("ell".into(), json!(ell));
                params.insert("x".into(), complex_json(t));
                omega(n, ell, t, &cfg.ctl)?
            } else {
                let j = require(args.j, "j", what)?;
                let x = require(args.x, "x", what)?;
                params.insert("j".into(), json!(j));
                params.insert("x".into(), complex_json(x));
                psi_j(j, ThetaArgument::new(x)?, &cfg.ctl)?
            };
            params.insert("terms".into(), json!(sum.terms));
            let mut r = OutputRecord::scalar(what, params, sum.value);
            r.err_estimate = Some(sum.tail_bound);
            r
        }
        EvalTarget::Psi => {
            let s = require(args.s, "s", what)?;
            params.insert("s".into(), complex_json(s));
            OutputRecord::scalar(what, params, digamma(s)?)
        }
        EvalTarget::XiDirect => {
            let s = require(args.s, "s", what)?;
            params.insert("s".into(), complex_json(s));
            OutputRecord::scalar(what, params, xi_direct(s)?)
        }
        EvalTarget::XiProp3 => {
            let j = require(args.j, "j", what)?;
            let s = require(args.s, "s", what)?;
            let b = require(args.b, "b", what)?;
            if b.im != 0.0 {
                return Err(Failure::Usage(format!("{what} needs a real --b, got {b}")));
            }
            params.insert("j".into(), json!(j));
            params.insert("s".into(), complex_json(s));
            params.insert("b".into(), json!(b.re));
            quad_record(what, params, xi_prop3(j, s, b.re, &cfg.qc)?)
        }
        EvalTarget::XiProp4 => {
            let j = require(args.j, "j", what)?;
            let s = require(args.s, "s", what)?;
            let b = require(args.b, "b", what)?;
            let form = match args.form {
                FormArg::I => Prop4Form::Inverse,
                FormArg::Ii => Prop4Form::Conjugate,
            };
            params.insert("j".into(), json!(j));
            params.insert("s".into(), complex_json(s));
            params.insert("b".into(), complex_json(b));
            params.insert("form".into(), json!(form.label()));
            quad_record(what, params, xi_prop4(j, s, SplitParameter::new(b)?, form, &cfg.qc)?)
        }
        EvalTarget::Mellin => {
            let s = require(args.s, "s", what)?;
            params.insert("s".into(), complex_json(s));
            let result = if let Some(q) = args.q {
                let ell = args.ell.unwrap_or(0);
                params.insert("q".into(), json!(q));
                params.insert("ell".into(), json!(ell));
                mellin_omega_integral(q, ell, s, &cfg.qc)?
            } else {
                let j = require(args.j, "j", what)?;
                params.insert("j".into(), json!(j));
                mellin_psi_integral(j, s, &cfg.qc)?
            };
            quad_record(what, params, result)
        }
    };
    cfg.emit(record)
}

fn cmd_verify(args: &VerifyArgs, cfg: &Settings) -> CmdResult {
    let b_list = args.b_list.as_deref().map(parse::b_list).transpose().map_err(Failure::Usage)?;
    let params = SuiteParams {
        qmax: args.qmax,
        j: args.j,
        s: args.s,
        b_list: b_list.clone(),
        qc: cfg.qc,
        ctl: cfg.ctl,
        ..Default::default()
    };
    let report = run_suite(args.suite, &params);
    let mut shown = BTreeMap::new();
    if let Some(q) = args.qmax {
        shown.insert("qmax".into(), json!(q));
    }
    if let Some(j) = args.j {
        shown.insert("j".into(), json!(j));
    }
    if let Some(s) = args.s {
        shown.insert("s".into(), complex_json(s));
    }
    if let Some(list) = &b_list {
        shown.insert("b_list".into(), Value::Array(list.iter().map(|&b| complex_json(b)).collect()));
    }
    let cases: Vec<Value> = report
        .cases
        .iter()
        .map(|c| {
            json!({
                "key": c.key,
                "measured": c.measured,
                "tolerance": c.tolerance,
                "passed": c.passed,
                "note": c.note,
            })
        })
        .collect();
    let failures = report.failures().count();
    let mut record = OutputRecord::list(&format!("verify {}", args.suite), shown, cases);
    record.summary = Some(json!({
        "suite": args.suite.name(),
        "passed": report.passed(),
        "cases": report.cases.len(),
        "failures": failures,
        "worst_ratio": report.worst_ratio(),
    }));
    cfg.emit(record)?;
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Verification(format!(
            "suite {} failed: {failures} of {} cases",
            args.suite,
            report.cases.len()
        )))
    }
}

fn cmd_scan(args: &ScanArgs) -> CmdResult {
    let what = "scan";
    let mut out = io::BufWriter::new(io::stdout().lock());
    match args.target {
        ScanTarget::PqLine => {
            let q = require(args.q, "q", what)?;
            let grid = require(args.t, "t", what)?;
            let mut csv = CsvWriter::new(&mut out, &["t", "re", "im", "section", "scale"])?;
            for t in grid.points() {
                let v = p_q_scaled(q, Complex64::new(0.5, t))?;
                let section = if q % 2 == 0 { v.value.re } else { v.value.im };
                csv.row(&[t, v.value.re, v.value.im, section, v.scale])?;
            }
        }
        ScanTarget::XiLine => {
            let grid = require(args.t, "t", what)?;
            let mut csv = CsvWriter::new(&mut out, &["t", "re", "im"])?;
            for t in grid.points() {
                let v = xi_direct(Complex64::new(0.5, t))?;
                csv.row(&[t, v.re, v.im])?;
            }
        }
        ScanTarget::PsiRay => {
            let j = require(args.j, "j", what)?;
            let grid = Range::new(
                require(args.from, "from", what)?,
                require(args.to, "to", what)?,
                require(args.step, "step", what)?,
            )
            .map_err(Failure::Usage)?;
            let ctl = SeriesControl::default();
            let mut csv = CsvWriter::new(&mut out, &["x", "re", "im", "abs", "tail_bound"])?;
            for x in grid.points() {
                let v = psi_j(j, ThetaArgument::real(x)?, &ctl)?;
                csv.row(&[x, v.value.re, v.value.im, v.value.norm(), v.tail_bound])?;
            }
        }
    }
    out.flush()?;
    Ok(())
}

fn cmd_zeros(args: &ZerosArgs, cfg: &Settings) -> CmdResult {
    let q = args.q;
    if q > MAX_RELIABLE_DEGREE {
        return Err(Failure::Core(Error::Domain {
            function: "zeros",
            reason: format!("q = {q} exceeds {MAX_RELIABLE_DEGREE}"),
        }));
    }
    let mut params = BTreeMap::new();
    params.insert("q".into(), json!(q));
    let custom = args.t_max.is_some() || args.grid_step.is_some();
    let (zeros, found, passed, min_gap, warnings) = if custom {
        let t_max = args.t_max.unwrap_or_else(|| default_t_max(q));
        let step = args.grid_step.unwrap_or(DEFAULT_GRID_STEP);
        params.insert("t_max".into(), json!(t_max));
        params.insert("grid_step".into(), json!(step));
        let zeros = find_zeros(q, t_max, step)?;
        let found = zeros.iter().map(|z| if z.t == 0.0 { 1 } else { 2 }).sum::<usize>();
        let warnings = xiforge::hyper::precision_warning(q).into_iter().collect();
        (zeros, found, found == q as usize, None, warnings)
    } else {
        let report = verify_exhaustive(q)?;
        if let Some(e) = report.failure {
            return Err(e.into());
        }
        (report.zeros, report.found, report.passed, report.min_gap, report.warnings)
    };
    let items: Vec<Value> = zeros
        .iter()
        .map(|z| {
            json!({
                "t": z.t,
                "residual": z.residual,
                "bracket_width": z.bracket_width,
                "scale": z.scale,
                "residual_ok": z.residual_ok(),
            })
        })
        .collect();
    let mut record = OutputRecord::list("zeros", params, items);
    record.warnings = warnings.iter().map(ToString::to_string).collect();
    record.summary = Some(json!({
        "count_ok": passed,
        "found": found,
        "expected": q,
        "min_gap": min_gap,
    }));
    cfg.emit(record)?;
    if passed {
        Ok(())
    } else {
        Err(Failure::Core(Error::CountMismatch {
            q,
            found,
            expected: q as usize,
        }))
    }
}

fn run(cli: &Cli) -> CmdResult {
    let cfg = Settings::from_cli(cli)?;
    match &cli.command {
        Command::Eval(args) => cmd_eval(args, &cfg),
        Command::Verify(args) => cmd_verify(args, &cfg),
        Command::Scan(args) => cmd_scan(args),
        Command::Zeros(args) => cmd_zeros(args, &cfg),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.exit_code())
        }
    }
}
