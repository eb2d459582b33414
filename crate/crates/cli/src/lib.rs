//! The `qcalc` command line: quantum derivatives, antiderivatives and
//! definite integrals of parsed expressions.
//!
//! Exit codes: 0 on success, 1 for usage or parse errors, 2 for math errors
//! (the error name is printed alone on stderr).

pub mod format;

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qcalc_core::classic::{
    h_definite_integral, h_derivative, h_right_inverse, jackson_integral, q_definite_integral,
    q_derivative, q_p_inverse, HConfig, QConfig,
};
use qcalc_core::selfcheck::{check_h, check_q, CheckOutcome};
use qcalc_core::{parse, to_realfn, CalcError, RealFn};

use format::{format_value, render_table, Grid};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_MATH: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "qcalc", version, about = "Quantum (h- and q-) calculus on expressions in x")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Quantum derivative D_h or Δ_q at a point or over a grid.
    Deriv(PointArgs),
    /// Antiderivative R_hs (h) or P_qs (q) at a point or over a grid.
    Antideriv(PointArgs),
    /// Definite integral between lattice-aligned limits.
    Defint(DefintArgs),
    /// Jackson series antiderivative, q in (0,1).
    Jackson(JacksonArgs),
    /// Run the law suites on one configuration.
    Check(ConfigArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Calculus {
    H,
    Q,
}

#[derive(Debug, Args)]
struct ConfigArgs {
    #[arg(long, value_enum)]
    calculus: Calculus,
    /// Step of the h-calculus.
    #[arg(long = "h", allow_hyphen_values = true)]
    h: Option<f64>,
    /// Parameter of the q-calculus.
    #[arg(long = "q", allow_hyphen_values = true)]
    q: Option<f64>,
    /// Base point of the partition.
    #[arg(long, allow_hyphen_values = true)]
    s: Option<f64>,
}

#[derive(Debug, Args)]
struct PointArgs {
    #[command(flatten)]
    config: ConfigArgs,
    #[arg(long, allow_hyphen_values = true)]
    expr: String,
    #[arg(long, allow_hyphen_values = true, required_unless_present = "table")]
    at: Option<f64>,
    /// X0:X1:STEP; prints CSV instead of a single value.
    #[arg(long, allow_hyphen_values = true)]
    table: Option<String>,
}

#[derive(Debug, Args)]
struct DefintArgs {
    #[command(flatten)]
    config: ConfigArgs,
    #[arg(long, allow_hyphen_values = true)]
    expr: String,
    #[arg(long, allow_hyphen_values = true)]
    from: f64,
    #[arg(long, allow_hyphen_values = true)]
    to: f64,
}

#[derive(Debug, Args)]
struct JacksonArgs {
    #[arg(long = "q", allow_hyphen_values = true)]
    q: f64,
    #[arg(long, allow_hyphen_values = true)]
    expr: String,
    #[arg(long, allow_hyphen_values = true)]
    at: f64,
    #[arg(long, default_value_t = 1e-15)]
    tol: f64,
    #[arg(long = "max-terms", default_value_t = 100_000)]
    max_terms: usize,
}

enum Failure {
    Usage(String),
    Math(CalcError),
}

impl From<CalcError> for Failure {
    fn from(e: CalcError) -> Self {
        match e {
            CalcError::InvalidConfig(msg) => Failure::Usage(msg),
            other => Failure::Math(other),
        }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

enum Setup {
    H(HConfig),
    Q(QConfig),
}

impl ConfigArgs {
    /// Validates the flag combination; `default_s` fills a missing `--s`
    /// when the command does not depend on it.
    fn setup(&self, default_s: Option<(f64, f64)>) -> Outcome<Setup> {
        let s_or = |fallback: f64| -> Outcome<f64> {
            match (self.s, default_s) {
                (Some(s), _) => Ok(s),
                (None, Some(_)) => Ok(fallback),
                (None, None) => Err(Failure::Usage("--s is required for this command".into())),
            }
        };
        let (default_h_s, default_q_s) = default_s.unwrap_or((0.0, 1.0));
        match self.calculus {
            Calculus::H => {
                if self.q.is_some() {
                    return Err(Failure::Usage("--q cannot be used with --calculus h".into()));
                }
                let h = self.h.ok_or_else(|| Failure::Usage("--h is required with --calculus h".into()))?;
                let cfg = HConfig::new(h, s_or(default_h_s)?)
                    .map_err(|e| Failure::Usage(format!("--h/--s: {e}")))?;
                Ok(Setup::H(cfg))
            }
            Calculus::Q => {
                if self.h.is_some() {
                    return Err(Failure::Usage("--h cannot be used with --calculus q".into()));
                }
                let q = self.q.ok_or_else(|| Failure::Usage("--q is required with --calculus q".into()))?;
                let cfg = QConfig::new(q, s_or(default_q_s)?)
                    .map_err(|e| Failure::Usage(format!("--q/--s: {e}")))?;
                Ok(Setup::Q(cfg))
            }
        }
    }
}

fn parse_expr(text: &str) -> Outcome<RealFn> {
    parse(text)
        .map(|e| to_realfn(&e))
        .map_err(|e| Failure::Usage(format!("--expr: {e}")))
}

fn point_or_table(args: &PointArgs, f: &RealFn) -> Outcome<String> {
    match &args.table {
        Some(spec) => {
            let grid = Grid::parse(spec).map_err(|e| Failure::Usage(format!("--table: {e}")))?;
            Ok(render_table(&grid, f)?)
        }
        None => {
            let x = args.at.expect("clap enforces --at without --table");
            Ok(format!("{}\n", format_value(f.eval(x)?)))
        }
    }
}

fn deriv(args: &PointArgs) -> Outcome<String> {
    let f = parse_expr(&args.expr)?;
    let d = match args.config.setup(Some((0.0, 1.0)))? {
        Setup::H(cfg) => h_derivative(&cfg, &f),
        Setup::Q(cfg) => q_derivative(&cfg, &f),
    };
    point_or_table(args, &d)
}

fn antideriv(args: &PointArgs) -> Outcome<String> {
    let f = parse_expr(&args.expr)?;
    let r = match args.config.setup(None)? {
        Setup::H(cfg) => h_right_inverse(&cfg, &f),
        Setup::Q(cfg) => q_p_inverse(&cfg, &f),
    };
    point_or_table(args, &r)
}

fn defint(args: &DefintArgs) -> Outcome<String> {
    let f = parse_expr(&args.expr)?;
    let v = match args.config.setup(Some((0.0, 1.0)))? {
        Setup::H(cfg) => h_definite_integral(&cfg, args.from, args.to, &f)?,
        Setup::Q(cfg) => q_definite_integral(&cfg, args.from, args.to, &f)?,
    };
    Ok(format!("{}\n", format_value(v)))
}

fn jackson(args: &JacksonArgs) -> Outcome<String> {
    let cfg = QConfig::new(args.q, 1.0).map_err(|e| Failure::Usage(format!("--q: {e}")))?;
    let f = parse_expr(&args.expr)?;
    let v = jackson_integral(&cfg, &f, args.at, args.tol, args.max_terms)?;
    Ok(format!("{}\n", format_value(v)))
}

fn check(args: &ConfigArgs) -> Outcome<(String, bool)> {
    let outcomes: Vec<CheckOutcome> = match args.setup(Some((0.0, 1.0)))? {
        Setup::H(cfg) => check_h(&cfg),
        Setup::Q(cfg) => check_q(&cfg),
    };
    let mut text = String::new();
    for c in &outcomes {
        if c.passed {
            text.push_str(&format!("PASS {}\n", c.name));
        } else {
            text.push_str(&format!("FAIL {}: {}\n", c.name, c.detail));
        }
    }
    Ok((text, outcomes.iter().all(|c| c.passed)))
}

/// Runs the CLI on `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
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
    let result = match &cli.command {
        Command::Deriv(a) => deriv(a).map(|s| (s, true)),
        Command::Antideriv(a) => antideriv(a).map(|s| (s, true)),
        Command::Defint(a) => defint(a).map(|s| (s, true)),
        Command::Jackson(a) => jackson(a).map(|s| (s, true)),
        Command::Check(a) => check(a),
    };
    match result {
        Ok((text, all_passed)) => {
            let _ = out.write_all(text.as_bytes());
            if all_passed {
                EXIT_OK
            } else {
                EXIT_MATH
            }
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Math(e)) => {
            let _ = writeln!(err, "{}", e.name());
            EXIT_MATH
        }
    }
}
