//! Command-line front end.

pub mod parse;

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand};
use fjump::ring::format_rational;
use fjump::verify::{run_suite, Suite};
use fjump::{
    default_denominator_bound, enumerate_jumps, fpt, frobenius_root, scaling_counterexample_check, tau,
    ChainConfig, ExactRational, Ideal, JumpReport, MonomialOrder, ParametricPair, Ring,
};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::parse::{parse_ideal, parse_pair, parse_range, ring_from_flags, PairSpec};

/// Exit code for a successful run.
pub const EXIT_OK: i32 = 0;
/// Exit code for computation diagnostics (non-stabilization, uncertified
/// jumps under `--strict`, failing suites).
pub const EXIT_DIAGNOSTIC: i32 = 1;
/// Exit code for usage and parse errors.
pub const EXIT_USAGE: i32 = 2;

type Range = (ExactRational, ExactRational);

#[derive(Debug, Parser)]
#[command(name = "fjump", version, about = "Test ideals and F-jumping numbers over F_p[x1..xn]")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Characteristic p (prime).
    #[arg(long = "char", global = true)]
    pub char: Option<u64>,
    /// Comma-separated variable names.
    #[arg(long, global = true, default_value = "x")]
    pub vars: String,
    #[arg(long, global = true, default_value = "grevlex")]
    pub order: MonomialOrder,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for the randomized suites.
    #[arg(long, global = true, default_value_t = 7)]
    pub seed: u64,
    #[arg(long = "e-cap", global = true)]
    pub e_cap: Option<u32>,
    #[arg(long = "confirm-steps", global = true)]
    pub confirm_steps: Option<u32>,
    /// Treat uncertified jumps as failures.
    #[arg(long, global = true)]
    pub strict: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generators of the test ideal of a pair.
    Tau {
        pair: String,
        /// Value of t when the pair has a moving factor.
        #[arg(long)]
        at: Option<String>,
    },
    /// F-jumping numbers of a pair with a moving factor on (lo, hi].
    Jumps {
        pair: String,
        #[arg(long, value_parser = parse_range)]
        range: Range,
        #[arg(long = "denom-bound")]
        denom_bound: Option<u64>,
    },
    /// The F-pure threshold of the moving factor.
    Fpt {
        pair: String,
        #[arg(long = "denom-bound")]
        denom_bound: Option<u64>,
    },
    /// Frobenius root I^[1/p^e].
    Froot {
        ideal: String,
        #[arg(long)]
        e: u32,
    },
    /// Reduced Gröbner basis.
    Gb { ideal: String },
    /// Whether p^e·t0 is again a jump for each jump t0 in the range.
    ScalingCheck {
        pair: String,
        #[arg(long)]
        e: u32,
        #[arg(long, value_parser = parse_range, default_value = "0..3")]
        range: Range,
    },
    /// Run the verification suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Tau { .. } => "tau",
            Command::Jumps { .. } => "jumps",
            Command::Fpt { .. } => "fpt",
            Command::Froot { .. } => "froot",
            Command::Gb { .. } => "gb",
            Command::ScalingCheck { .. } => "scaling-check",
            Command::Verify { .. } => "verify",
        }
    }
}

/// Failure of a command, mapped to an exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Compute(#[from] fjump::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Compute(_) => EXIT_DIAGNOSTIC,
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// A finished command: the JSON result, its text rendering, and whether
/// the run counts as a diagnostic failure.
#[derive(Debug)]
pub struct Outcome {
    pub result: Value,
    pub text: String,
    pub failed: bool,
}

fn ideal_json(i: &Ideal) -> Value {
    json!(i.canonical_generators())
}

fn ideal_text(i: &Ideal) -> String {
    format!("({})", i.canonical_generators().join(", "))
}

fn rat(r: &ExactRational) -> Value {
    Value::String(format_rational(r))
}

fn config(cli: &Cli) -> Result<ChainConfig, CliError> {
    let mut cfg = ChainConfig::default();
    if let Some(e) = cli.e_cap {
        cfg.e_cap = e;
    }
    if let Some(c) = cli.confirm_steps {
        cfg.confirm_steps = c;
    }
    cfg.e_floor = cfg.e_floor.min(cfg.e_cap);
    cfg.validate().map_err(|e| usage(e.to_string()))?;
    Ok(cfg)
}

fn ring(cli: &Cli) -> Result<Ring, CliError> {
    let p = cli.char.ok_or_else(|| usage("--char is required for this command"))?;
    ring_from_flags(p, &cli.vars, cli.order).map_err(|e| usage(e.to_string()))
}

fn pair(ring: &Ring, text: &str) -> Result<PairSpec, CliError> {
    parse_pair(ring, text).map_err(|e| usage(format!("in pair {text:?}: {e}")))
}

fn parametric(ring: &Ring, text: &str) -> Result<ParametricPair, CliError> {
    match pair(ring, text)? {
        PairSpec::Parametric(p) => Ok(p),
        PairSpec::Fixed(_) => Err(usage("this command needs a factor with exponent t")),
    }
}

fn ideal(ring: &Ring, text: &str) -> Result<Ideal, CliError> {
    parse_ideal(ring, text).map_err(|e| usage(format!("in ideal {text:?}: {e}")))
}

fn bound(ring: &Ring, given: Option<u64>, cfg: &ChainConfig) -> Result<u64, CliError> {
    match given {
        Some(0) => Err(usage("--denom-bound must be positive")),
        Some(b) => Ok(b),
        None => Ok(default_denominator_bound(ring.p(), cfg)),
    }
}

fn report_json(report: &JumpReport) -> Value {
    json!({
        "interval": [rat(&report.interval.0), rat(&report.interval.1)],
        "denominator_bound": report.denominator_bound,
        "jumps": report.jumps.iter().map(|j| json!({
            "t": rat(&j.t),
            "certified": j.certified,
            "bracket": [rat(&j.bracket.0), rat(&j.bracket.1)],
            "tau_before": ideal_json(&j.tau_before),
            "tau_at": ideal_json(&j.tau_at),
        })).collect::<Vec<_>>(),
    })
}

fn report_text(report: &JumpReport) -> String {
    if report.jumps.is_empty() {
        return "none".into();
    }
    report
        .jumps
        .iter()
        .map(|j| {
            if j.certified {
                format_rational(&j.t)
            } else {
                format!(
                    "uncertified in ({}, {}]",
                    format_rational(&j.bracket.0),
                    format_rational(&j.bracket.1)
                )
            }
        })
        .collect::<Vec<_>>()
        .join(", ")
}

/// Runs a parsed command.
pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let cfg = config(cli)?;
    match &cli.command {
        Command::Tau { pair: text, at } => {
            let ring = ring(cli)?;
            let fixed = match (pair(&ring, text)?, at) {
                (PairSpec::Fixed(p), None) => p,
                (PairSpec::Fixed(_), Some(_)) => return Err(usage("--at needs a factor with exponent t")),
                (PairSpec::Parametric(_), None) => return Err(usage("the pair has a moving factor; pass --at")),
                (PairSpec::Parametric(p), Some(t)) => {
                    let t = fjump::ring::parse_rational(t).map_err(|e| usage(e.to_string()))?;
                    p.at(&t).map_err(|e| usage(e.to_string()))?
                }
            };
            let i = tau(&fixed, &cfg)?;
            Ok(Outcome {
                result: json!({ "generators": ideal_json(&i) }),
                text: ideal_text(&i),
                failed: false,
            })
        }
        Command::Jumps {
            pair: text,
            range,
            denom_bound,
        } => {
            let ring = ring(cli)?;
            let pp = parametric(&ring, text)?;
            let b = bound(&ring, *denom_bound, &cfg)?;
            let report = enumerate_jumps(&pp, &range.0, &range.1, b, &cfg)?;
            Ok(Outcome {
                result: report_json(&report),
                text: report_text(&report),
                failed: cli.strict && !report.all_certified(),
            })
        }
        Command::Fpt { pair: text, denom_bound } => {
            let ring = ring(cli)?;
            let pp = parametric(&ring, text)?;
            let b = bound(&ring, *denom_bound, &cfg)?;
            let c = fpt(&pp, b, &cfg)?;
            Ok(Outcome {
                result: json!({ "fpt": rat(&c) }),
                text: format_rational(&c),
                failed: false,
            })
        }
        Command::Froot { ideal: text, e } => {
            let ring = ring(cli)?;
            let i = frobenius_root(&ideal(&ring, text)?, *e)?;
            Ok(Outcome {
                result: json!({ "e": e, "generators": ideal_json(&i) }),
                text: ideal_text(&i),
                failed: false,
            })
        }
        Command::Gb { ideal: text } => {
            let ring = ring(cli)?;
            let i = ideal(&ring, text)?;
            let basis: Vec<String> = i.groebner_basis().iter().map(|g| g.to_string()).collect();
            Ok(Outcome {
                text: format!("({})", basis.join(", ")),
                result: json!({ "basis": basis }),
                failed: false,
            })
        }
        Command::ScalingCheck { pair: text, e, range } => {
            let ring = ring(cli)?;
            let pp = parametric(&ring, text)?;
            if *e == 0 {
                return Err(usage("--e must be at least 1"));
            }
            let q = ExactRational::from_integer(BigInt::from(ring.p()).pow(*e));
            let b = default_denominator_bound(ring.p(), &cfg);
            let report = enumerate_jumps(&pp, &range.0, &(&range.1 * &q), b, &cfg)?;
            let rows: Vec<_> = scaling_counterexample_check(&pp, *e, &report, &cfg)?
                .into_iter()
                .filter(|row| row.t0 > range.0 && row.t0 <= range.1)
                .collect();
            let text = rows
                .iter()
                .map(|row| {
                    format!(
                        "{} -> {}: {}",
                        format_rational(&row.t0),
                        format_rational(&row.scaled),
                        if row.is_jump { "jump" } else { "not a jump" }
                    )
                })
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Outcome {
                result: json!({
                    "e": e,
                    "rows": rows.iter().map(|row| json!({
                        "t0": rat(&row.t0),
                        "scaled": rat(&row.scaled),
                        "is_jump": row.is_jump,
                    })).collect::<Vec<_>>(),
                }),
                text: if text.is_empty() { "no jumps in range".into() } else { text },
                failed: false,
            })
        }
        Command::Verify { suite } => {
            let suites: Vec<Suite> = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                vec![suite.parse().map_err(|e: fjump::Error| usage(e.to_string()))?]
            };
            let mut lines = Vec::new();
            let mut entries = Vec::new();
            let mut failed = false;
            for s in suites {
                let outcome = run_suite(s, cli.seed, &cfg)?;
                failed |= !outcome.passed();
                lines.push(outcome.to_string());
                lines.extend(outcome.failures.iter().map(|f| format!("  failed: {f}")));
                entries.push(json!({
                    "suite": s.name(),
                    "cases": outcome.cases,
                    "passed": outcome.cases - outcome.failures.len(),
                    "failures": outcome.failures,
                }));
            }
            Ok(Outcome {
                result: json!({ "seed": cli.seed, "suites": entries }),
                text: lines.join("\n"),
                failed,
            })
        }
    }
}

/// Parses `args`, runs the command, writes results to `out` and
/// diagnostics to `err`, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return e.exit_code();
        }
    };
    match execute(&cli) {
        Ok(outcome) => {
            let written = if cli.json {
                let (p, vars) = match ring(&cli) {
                    Ok(r) => (json!(r.p()), json!(r.variables())),
                    Err(_) => (Value::Null, json!([])),
                };
                let doc = json!({
                    "char": p,
                    "vars": vars,
                    "command": cli.command.name(),
                    "result": outcome.result,
                });
                writeln!(out, "{doc}")
            } else {
                writeln!(out, "{}", outcome.text)
            };
            if written.is_err() {
                return EXIT_DIAGNOSTIC;
            }
            if outcome.failed {
                let _ = writeln!(err, "error: {} reported failures", cli.command.name());
                EXIT_DIAGNOSTIC
            } else {
                EXIT_OK
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
