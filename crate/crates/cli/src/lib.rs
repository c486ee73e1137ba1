//! Command-line front end for `gapscan`.

pub mod parse;

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gapscan::factor::factor;
use gapscan::family::{is_capellian, robustness, CapellianWitness, GapFamily, Robustness};
use gapscan::heights::comparison_bounds;
use gapscan::pipeline::{analyze, oracle_verify, AnalyzeOptions, FamilyReport, VerificationRecord};
use gapscan::search::{compute_m0, n0_formula, PruneArithmetic, SearchLimits, Strategy};
use gapscan::{Error, IntPoly};
use serde::Serialize;

pub use parse::{parse_poly, ParseError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "gapscan", version, about = "Irreducibility of x^N c(1/x) + d(x) for all N")]
pub struct Cli {
    /// Worker threads (default: all cores; GAPSCAN_THREADS overrides).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct PairArgs {
    /// The polynomial c, e.g. "1" or "1 + 2*x".
    #[arg(long, allow_hyphen_values = true)]
    pub c: String,
    /// The polynomial d, e.g. "1 - 7*x^2".
    #[arg(long, allow_hyphen_values = true)]
    pub d: String,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum StrategyArg {
    Level,
    Pruned,
    Bestfirst,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Strategy {
        match s {
            StrategyArg::Level => Strategy::LevelSweep,
            StrategyArg::Pruned => Strategy::PrunedLevelSweep,
            StrategyArg::Bestfirst => Strategy::BestFirst,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Full report: verdicts, m0, thresholds, progressions, exceptional N.
    Analyze {
        #[command(flatten)]
        pair: PairArgs,
        /// Sweep horizon for families that cannot be certified.
        #[arg(long, default_value_t = 60)]
        horizon: usize,
        #[arg(long)]
        json: bool,
        /// Also cross-check the report against direct factorization up to N.
        #[arg(long)]
        oracle_horizon: Option<usize>,
    },
    /// The stabilization level m0 of the pair search.
    M0 {
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        /// One or more d polynomials (repeat the flag).
        #[arg(long, allow_hyphen_values = true, required = true)]
        d: Vec<String>,
        #[arg(long, value_enum, default_value = "bestfirst")]
        strategy: StrategyArg,
        /// Beam width of the lower-bound bootstrap.
        #[arg(long, default_value_t = 1000)]
        beam: usize,
        /// Abort after generating this many nodes.
        #[arg(long)]
        max_nodes: Option<u64>,
        /// Use exact rational arithmetic for the pruning bound.
        #[arg(long)]
        exact: bool,
        #[arg(long)]
        json: bool,
        /// One `w,m0` line per d, for tables.
        #[arg(long, conflicts_with = "json")]
        csv: bool,
    },
    /// Factor a polynomial over the integers.
    Factor {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        #[arg(long)]
        json: bool,
    },
    /// The explicit thresholds N1, N_main, N_FFK and the Schinzel bound.
    Bounds {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        json: bool,
    },
    /// Robustness and Capelli verdicts.
    Check {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        json: bool,
    },
    /// Compare the report with direct factorization of every f_N up to the horizon.
    Oracle {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        horizon: usize,
        #[arg(long)]
        json: bool,
    },
}

/// A failure with its exit status.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: format!("cannot parse polynomial {e}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: exit_code(&e),
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: format!("write failed: {e}"),
        }
    }
}

/// Exit status for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e.root() {
        Error::DegreeCapExceeded { .. }
        | Error::RecombinationLimit { .. }
        | Error::NoConvergence { .. }
        | Error::LevelCeilingExceeded { .. }
        | Error::ResourceLimit { .. } => EXIT_RESOURCE,
        _ => EXIT_INPUT,
    }
}

/// Integers exactly, everything else to 6 significant digits.
pub fn format_number(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x.fract() == 0.0 && x.abs() < 9.0e15 {
        return format!("{}", x as i64);
    }
    let mag = x.abs().log10().floor() as i32;
    if (-4..15).contains(&mag) {
        let decimals = (5 - mag).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.5e}")
    }
}

fn poly_arg(text: &str, which: &str) -> Result<IntPoly, Failure> {
    parse_poly(text).map_err(|e| Failure {
        code: EXIT_INPUT,
        message: format!("cannot parse --{which} {text:?}: {e}"),
    })
}

fn family(pair: &PairArgs) -> Result<GapFamily, Failure> {
    family_of(&pair.c, &pair.d)
}

fn family_of(c: &str, d: &str) -> Result<GapFamily, Failure> {
    let c = poly_arg(c, "c")?;
    let d = poly_arg(d, "d")?;
    Ok(GapFamily::new(c, d)?)
}

fn json_line<T: Serialize>(out: &mut dyn Write, v: &T) -> Result<(), Failure> {
    let s = serde_json::to_string_pretty(v).expect("report types serialize");
    writeln!(out, "{s}")?;
    Ok(())
}

#[derive(Serialize)]
struct AnalyzeOutput<'a> {
    report: &'a FamilyReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<&'a VerificationRecord>,
}

#[derive(Serialize)]
struct M0Output {
    c: IntPoly,
    d: IntPoly,
    weight_budget: u64,
    m0: usize,
    n0: usize,
    witness: Option<gapscan::search::CandidatePair>,
    terminal_pairs: Vec<gapscan::search::CandidatePair>,
    stats: gapscan::search::SearchStats,
}

#[derive(Serialize)]
struct CheckOutput {
    c: IntPoly,
    d: IntPoly,
    r: IntPoly,
    robustness: Robustness,
    capellian: Option<CapellianWitness>,
}

#[derive(Serialize)]
struct FactorOutput {
    poly: IntPoly,
    factorization: gapscan::factor::Factorization,
}

fn render_verification(v: &VerificationRecord) -> String {
    let mut s = format!("oracle: checked {} values of N up to {}", v.checked, v.horizon);
    if v.ok() {
        s.push_str(", all agree with the report\n");
        return s;
    }
    s.push('\n');
    for m in &v.mismatches {
        s.push_str(&format!("MISMATCH at N = {}: report says {}, factor gives {}\n", m.n, m.expected, m.actual));
    }
    for (n, p) in &v.stray_reciprocal_factors {
        s.push_str(&format!("MISMATCH at N = {n}: reciprocal factor {p} does not divide r\n"));
    }
    s
}

fn execute(cmd: &Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        Command::Analyze {
            pair,
            horizon,
            json,
            oracle_horizon,
        } => {
            let fam = family(pair)?;
            let opts = AnalyzeOptions {
                horizon: *horizon,
                ..AnalyzeOptions::default()
            };
            let report = analyze(&fam, &opts)?;
            let oracle = match oracle_horizon {
                Some(h) => Some(oracle_verify(&fam, &report, *h)?),
                None => None,
            };
            if *json {
                json_line(
                    out,
                    &AnalyzeOutput {
                        report: &report,
                        oracle: oracle.as_ref(),
                    },
                )?;
            } else {
                write!(out, "{}", report.render_text())?;
                if let Some(v) = &oracle {
                    write!(out, "{}", render_verification(v))?;
                }
            }
            Ok(if oracle.is_some_and(|v| !v.ok()) { EXIT_MISMATCH } else { EXIT_OK })
        }
        Command::M0 {
            c,
            d,
            strategy,
            beam,
            max_nodes,
            exact,
            json,
            csv,
        } => {
            let limits = SearchLimits {
                max_nodes: *max_nodes,
                beam: *beam,
                arithmetic: if *exact { PruneArithmetic::Exact } else { PruneArithmetic::Float },
                ..SearchLimits::default()
            };
            if *csv {
                writeln!(out, "w,m0")?;
            }
            for d in d {
                let fam = family_of(c, d)?;
                let res = compute_m0(&fam, (*strategy).into(), limits)?;
                let deficient = gapscan::family::has_weight_deficient_factorization(&fam)?;
                let n0 = n0_formula(&fam, res.m0, deficient);
                if *csv {
                    writeln!(out, "{},{}", fam.budget(), res.m0)?;
                } else if *json {
                    json_line(
                        out,
                        &M0Output {
                            c: fam.c().clone(),
                            d: fam.d().clone(),
                            weight_budget: fam.budget(),
                            m0: res.m0,
                            n0,
                            witness: res.deepest_defective,
                            terminal_pairs: res.terminal_pairs,
                            stats: res.stats,
                        },
                    )?;
                } else {
                    writeln!(out, "{}", res.m0)?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Factor { poly, json } => {
            let p = poly_arg(poly, "poly")?;
            if p.is_zero() {
                return Err(Failure {
                    code: EXIT_INPUT,
                    message: "cannot factor the zero polynomial".to_string(),
                });
            }
            let f = factor(&p)?;
            if *json {
                json_line(
                    out,
                    &FactorOutput {
                        poly: p,
                        factorization: f,
                    },
                )?;
            } else {
                writeln!(out, "{}", f.render())?;
            }
            Ok(EXIT_OK)
        }
        Command::Bounds { pair, json } => {
            let fam = family(pair)?;
            let b = comparison_bounds(fam.c(), fam.d())?;
            if *json {
                json_line(out, &b)?;
            } else {
                writeln!(out, "N1        {}", format_number(b.n1))?;
                writeln!(out, "N_main    {}", b.n_main)?;
                writeln!(out, "N_FFK     {}", b.n_ffk)?;
                match b.n_schinzel_log {
                    Some(l) => writeln!(out, "log N_S   {}", format_number(l))?,
                    None => writeln!(out, "log2 log N_S  {}", format_number(b.n_schinzel_log2_log))?,
                }
                writeln!(out, "non-cyclotomic factors for large N  <= {}", b.factor_count_bound)?;
            }
            Ok(EXIT_OK)
        }
        Command::Check { pair, json } => {
            let fam = family(pair)?;
            let rob = robustness(&fam)?;
            let cap = is_capellian(&fam)?;
            if *json {
                json_line(
                    out,
                    &CheckOutput {
                        c: fam.c().clone(),
                        d: fam.d().clone(),
                        r: fam.r().clone(),
                        robustness: rob,
                        capellian: cap,
                    },
                )?;
            } else {
                writeln!(out, "r           {}", fam.r())?;
                let v = match &rob {
                    Robustness::Robust => "robust".to_string(),
                    Robustness::WeaklyRobustOnly { witness } => {
                        format!("weakly robust, not robust: ({}, {})", witness.a, witness.b)
                    }
                    Robustness::NotWeaklyRobust { witness } => {
                        format!("not weakly robust: ({}, {})", witness.a, witness.b)
                    }
                };
                writeln!(out, "robustness  {v}")?;
                let cv = match cap {
                    None => "not Capellian".to_string(),
                    Some(CapellianWitness::Power(p)) => format!("Capellian: -d/c(1/x) is a {p}-th power"),
                    Some(CapellianWitness::FourTimesFourth) => {
                        "Capellian: d/c(1/x) is 4 times a fourth power".to_string()
                    }
                };
                writeln!(out, "capelli     {cv}")?;
            }
            Ok(EXIT_OK)
        }
        Command::Oracle { pair, horizon, json } => {
            let fam = family(pair)?;
            let report = analyze(&fam, &AnalyzeOptions::default())?;
            let v = oracle_verify(&fam, &report, *horizon)?;
            if *json {
                json_line(out, &v)?;
            } else {
                write!(out, "{}", render_verification(&v))?;
            }
            Ok(if v.ok() { EXIT_OK } else { EXIT_MISMATCH })
        }
    }
}

/// Thread count from `GAPSCAN_THREADS`, else `--threads`.
pub fn thread_count(flag: Option<usize>) -> Option<usize> {
    std::env::var("GAPSCAN_THREADS")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .or(flag)
        .filter(|&n| n > 0)
}

/// Runs the command line `args` and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    if let Some(n) = thread_count(cli.threads) {
        // Fails only if a pool already exists, which is fine.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match execute(&cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_format() {
        assert_eq!(format_number(40.0), "40");
        assert_eq!(format_number(98.86827945059804), "98.8683");
        assert_eq!(format_number(0.123456789), "0.123457");
        assert_eq!(format_number(1.5e20), "1.50000e20");
    }
}
