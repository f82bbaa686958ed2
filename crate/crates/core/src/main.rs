use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use altfact::checks::{run_suite, Suite};
use altfact::gamma::EULER_GAMMA;
use altfact::kurepa::{evaluate, KurepaFunction, RepresentationId};
use altfact::output::{evaluate_grid, write_pole_table, write_records, Axis, OutputFormat, OutputRecord, PoleRow};
use altfact::singular::{singularity, FunctionId};
use altfact::special::{constant_gompertz, constant_l2, l2_via_alternating_series, l2_via_gamma_ratios};
use altfact::{Complex64, Error, EvalConfig};

const EXIT_USAGE: u8 = 1;
const EXIT_DOMAIN: u8 = 2;
const EXIT_CHECK_FAILED: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "altfact", version, about = "Evaluate the alternating Kurepa function A(z) and its companion A1(z)")]
struct Cli {
    /// Relative tolerance (absolute tolerance is 1/100 of it)
    #[arg(long, global = true, env = "ALTFACT_TOL")]
    tol: Option<f64>,

    /// Cap on series terms and continued-fraction steps
    #[arg(long, global = true)]
    max_terms: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate A or A1 at one point
    Eval(EvalArgs),
    /// Residues and principal values at integers
    PoleTable(PoleTableArgs),
    /// Run the seeded consistency suites
    Check(CheckArgs),
    /// Print the constants with their independent computation routes
    Constants,
    /// Evaluate on a rectangular grid for plotting
    Grid(GridArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Func {
    #[value(name = "A")]
    A,
    #[value(name = "A1")]
    A1,
}

impl From<Func> for KurepaFunction {
    fn from(f: Func) -> Self {
        match f {
            Func::A => KurepaFunction::A,
            Func::A1 => KurepaFunction::A1,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum PoleFunc {
    #[value(name = "A")]
    A,
    #[value(name = "A1")]
    A1,
    #[value(name = "Gamma")]
    Gamma,
}

impl From<PoleFunc> for FunctionId {
    fn from(f: PoleFunc) -> Self {
        match f {
            PoleFunc::A => FunctionId::A,
            PoleFunc::A1 => FunctionId::A1,
            PoleFunc::Gamma => FunctionId::Gamma,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Method {
    Integral,
    Recurrence,
    Series,
    ClosedForm,
    Slavic,
    Auto,
}

impl From<Method> for RepresentationId {
    fn from(m: Method) -> Self {
        match m {
            Method::Integral => RepresentationId::Integral,
            Method::Recurrence => RepresentationId::Recurrence,
            Method::Series => RepresentationId::Series,
            Method::ClosedForm => RepresentationId::ClosedForm,
            Method::Slavic => RepresentationId::Slavic,
            Method::Auto => RepresentationId::Auto,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Format {
    Csv,
    Json,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Csv => OutputFormat::Csv,
            Format::Json => OutputFormat::Json,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SuiteArg {
    Fe,
    Repr,
    Pv,
    Identities,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Fe => Suite::Fe,
            SuiteArg::Repr => Suite::Repr,
            SuiteArg::Pv => Suite::Pv,
            SuiteArg::Identities => Suite::Identities,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[arg(long, value_enum, default_value = "A")]
    function: Func,
    #[arg(long, allow_hyphen_values = true)]
    re: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    im: f64,
    #[arg(long, value_enum, default_value = "auto")]
    method: Method,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Args, Debug)]
struct PoleTableArgs {
    #[arg(long, value_enum, default_value = "A")]
    function: PoleFunc,
    #[arg(long, allow_hyphen_values = true)]
    m_min: i64,
    #[arg(long, allow_hyphen_values = true)]
    m_max: i64,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[arg(long, value_enum, default_value = "all")]
    suite: SuiteArg,
    /// Random points per suite (default: 300 for fe, 100 for repr and identities)
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug)]
struct GridArgs {
    #[arg(long, value_enum, default_value = "A")]
    function: Func,
    #[arg(long, allow_hyphen_values = true)]
    re_min: f64,
    #[arg(long, allow_hyphen_values = true)]
    re_max: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    im_min: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    im_max: f64,
    #[arg(long)]
    step: f64,
    #[arg(long, value_enum, default_value = "auto")]
    method: Method,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

/// Failure of a subcommand, carrying its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidConfig(_) => EXIT_USAGE,
            _ => EXIT_DOMAIN,
        };
        let message = match &e {
            Error::PoleProximity { nearest, .. } => {
                format!("{e}; for the residue and principal value there use `altfact pole-table --m-min {nearest} --m-max {nearest}`")
            }
            _ => e.to_string(),
        };
        Failure { code, message }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn io_failure(e: io::Error) -> Failure {
    Failure {
        code: EXIT_DOMAIN,
        message: format!("write failed: {e}"),
    }
}

fn config(cli: &Cli) -> Result<EvalConfig, Failure> {
    let mut cfg = EvalConfig::default();
    if let Some(tol) = cli.tol {
        cfg = cfg.with_tolerance(tol);
    }
    if let Some(n) = cli.max_terms {
        cfg = cfg.with_max_terms(n);
    }
    cfg.validate().map_err(|e| usage(e.to_string()))?;
    Ok(cfg)
}

fn cmd_eval(args: &EvalArgs, cfg: &EvalConfig) -> Result<(), Failure> {
    let z = Complex64::new(args.re, args.im);
    let outcome = evaluate(args.function.into(), z, args.method.into(), cfg)?;
    let record = OutputRecord::from_outcome(z, &outcome);
    write_records(io::stdout().lock(), &[record], args.format.into(), false)?;
    Ok(())
}

fn cmd_pole_table(args: &PoleTableArgs) -> Result<(), Failure> {
    if args.m_min > args.m_max {
        return Err(usage(format!("--m-min {} exceeds --m-max {}", args.m_min, args.m_max)));
    }
    if args.m_max - args.m_min > 100_000 {
        return Err(usage("pole table limited to 100001 rows"));
    }
    let rows = (args.m_min..=args.m_max)
        .map(|m| singularity(args.function.into(), m).map(|s| PoleRow::from(&s)))
        .collect::<Result<Vec<_>, _>>()?;
    write_pole_table(io::stdout().lock(), &rows, args.format.into())?;
    Ok(())
}

fn cmd_check(args: &CheckArgs, cfg: &EvalConfig) -> Result<(), Failure> {
    let lines = run_suite(args.suite.into(), args.samples, args.seed, cfg)?;
    let mut out = io::stdout().lock();
    let failed = lines.iter().filter(|l| !l.report.passed).count();
    for line in &lines {
        writeln!(out, "{line}").map_err(io_failure)?;
    }
    writeln!(out, "checks: {} passed, {} failed", lines.len() - failed, failed).map_err(io_failure)?;
    if failed > 0 {
        return Err(Failure {
            code: EXIT_CHECK_FAILED,
            message: format!("{failed} check(s) failed"),
        });
    }
    Ok(())
}

fn cmd_constants() -> Result<(), Failure> {
    let l2 = constant_l2();
    let by_ratios = l2_via_gamma_ratios(200);
    let by_series = l2_via_alternating_series(40);
    let gompertz = constant_gompertz();
    let e = std::f64::consts::E;
    let rows = [
        ("euler_gamma", EULER_GAMMA, 0.0, "stored"),
        ("e", e, 0.0, "exp(1)"),
        ("L2", l2, 0.0, "1 + e*Ei(-1)"),
        ("L2", by_ratios, by_ratios - l2, "1 - sum_{n<200} (H_n - gamma)/n!"),
        ("L2", by_series, by_series - l2, "1 + e*gamma - e*sum_{n<=40} (-1)^(n-1)/(n!*n)"),
        ("gompertz", gompertz, gompertz - (1.0 - l2), "-e*Ei(-1), delta against 1 - L2"),
    ];
    let mut out = io::stdout().lock();
    writeln!(out, "name,value,delta,route").map_err(io_failure)?;
    for (name, value, delta, route) in rows {
        writeln!(out, "{name},{value:.17},{delta:.3e},{route}").map_err(io_failure)?;
    }
    Ok(())
}

fn cmd_grid(args: &GridArgs, cfg: &EvalConfig) -> Result<(), Failure> {
    let re = Axis {
        min: args.re_min,
        max: args.re_max,
    };
    let im = Axis {
        min: args.im_min,
        max: args.im_max,
    };
    let rows = evaluate_grid(args.function.into(), args.method.into(), re, im, args.step, cfg)?;
    write_records(io::stdout().lock(), &rows, args.format.into(), true)?;
    Ok(())
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Eval(args) => cmd_eval(args, &config(cli)?),
        Command::PoleTable(args) => cmd_pole_table(args),
        Command::Check(args) => cmd_check(args, &config(cli)?),
        Command::Constants => cmd_constants(),
        Command::Grid(args) => cmd_grid(args, &config(cli)?),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("altfact: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
