//! `tricat`: run constructions and verification suites on the exact
//! triangulated categories, writing JSON reports and DOT diagrams.
//!
//! Exit status: 0 when every check passes, 1 when some check fails, 2 on
//! bad input.

mod commands;
mod input;
mod instances;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;
use tricat::chain::ChainInstance;
use tricat::frobenius::FrobeniusInstance;
use tricat::linalg::Field;
use tricat::toolkit::Op;
use tricat::vect::VectInstance;

use commands::{Command, Ctx, LocalizeCheck, Outcome};
use input::{parse_json, parse_subcat, read_text, InputError};
use instances::{CliInstance, SampleLimits};

#[derive(Parser, Debug)]
#[command(name = "tricat", version, about = "Exact computations in triangulated categories")]
struct Cli {
    /// vect, chain, frobenius, or op-of:<instance>
    #[arg(long, global = true, default_value = "vect")]
    instance: String,
    /// Q or Fp:<p>
    #[arg(long, global = true, default_value = "Q")]
    field: String,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 50)]
    samples: usize,
    /// Largest sampled dimension (per degree for chain complexes).
    #[arg(long, global = true, default_value_t = 4)]
    max_dim: usize,
    /// Longest sampled chain complex.
    #[arg(long, global = true, default_value_t = 4)]
    max_len: usize,
    /// Subcategory: a kind, inline JSON, or a JSON file.
    #[arg(long, global = true)]
    subcat: Option<String>,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Write a DOT diagram here, for commands that draw one.
    #[arg(long, global = true)]
    dot: Option<PathBuf>,
    /// Worker threads for sampled suites; 0 uses all cores.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand, Clone, Debug)]
enum Sub {
    /// Cone of a morphism, with its triangle checks.
    Cone {
        #[arg(long)]
        f: Option<PathBuf>,
    },
    /// Composition axiom for X --f--> Y --g--> Z.
    Octahedron {
        #[arg(long)]
        f: Option<PathBuf>,
        #[arg(long)]
        g: Option<PathBuf>,
    },
    /// Third map of a morphism between the cones of f and f2.
    Fill {
        #[arg(long)]
        f: Option<PathBuf>,
        #[arg(long)]
        j: Option<PathBuf>,
        #[arg(long)]
        k: Option<PathBuf>,
        #[arg(long)]
        f2: Option<PathBuf>,
    },
    /// Long sequence obtained by rotating the cone triangle of f.
    Puppe {
        #[arg(long)]
        f: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        left: usize,
        #[arg(long, default_value_t = 3)]
        right: usize,
    },
    /// Braid of the four triangles of an octahedron.
    Braid {
        #[arg(long)]
        f: Option<PathBuf>,
        #[arg(long)]
        g: Option<PathBuf>,
    },
    /// 3×3 completion of a commuting square k∘f = h∘g.
    ThreeByThree {
        #[arg(long)]
        f: Option<PathBuf>,
        #[arg(long)]
        g: Option<PathBuf>,
        #[arg(long)]
        h: Option<PathBuf>,
        #[arg(long)]
        k: Option<PathBuf>,
    },
    /// Cone triangle of a triple composite h∘g∘f.
    Triple {
        #[arg(long)]
        f: Option<PathBuf>,
        #[arg(long)]
        g: Option<PathBuf>,
        #[arg(long)]
        h: Option<PathBuf>,
    },
    /// Axioms and derived properties on sampled data.
    VerifyAxioms {
        /// Also run the toolkit constructions on every sample.
        #[arg(long)]
        constructions: bool,
    },
    /// Verdier localization at --subcat.
    Localize {
        #[arg(long, value_enum, default_value_t = CheckArg::Triangulation)]
        check: CheckArg,
    },
    /// Stable hom dimensions of the Frobenius instance.
    Stable {
        /// Sweep free and trivial ranks up to this bound.
        #[arg(long, default_value_t = 3)]
        bound: usize,
        /// Only this source, as free,trivial.
        #[arg(long, value_parser = parse_pair)]
        source: Option<(usize, usize)>,
        #[arg(long, value_parser = parse_pair)]
        target: Option<(usize, usize)>,
    },
    /// Instance-specific normal form of an input file.
    Decompose {
        #[arg(long)]
        input: PathBuf,
    },
    /// Summarize a saved report; exit status follows its checks.
    Report {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CheckArg {
    Triangulation,
    Trivial,
    Thick,
    Kernel,
    Members,
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or("expected free,trivial")?;
    Ok((a.trim().parse().map_err(|e| format!("{e}"))?, b.trim().parse().map_err(|e| format!("{e}"))?))
}

fn to_command(sub: Sub) -> Command {
    match sub {
        Sub::Cone { f } => Command::Cone { f },
        Sub::Octahedron { f, g } => Command::Octahedron { f, g },
        Sub::Fill { f, j, k, f2 } => Command::Fill { f, j, k, f2 },
        Sub::Puppe { f, left, right } => Command::Puppe { f, left, right },
        Sub::Braid { f, g } => Command::Braid { f, g },
        Sub::ThreeByThree { f, g, h, k } => Command::ThreeByThree { f, g, h, k },
        Sub::Triple { f, g, h } => Command::Triple { f, g, h },
        Sub::VerifyAxioms { constructions } => Command::VerifyAxioms { constructions },
        Sub::Localize { check } => Command::Localize {
            check: match check {
                CheckArg::Triangulation => LocalizeCheck::Triangulation,
                CheckArg::Trivial => LocalizeCheck::Trivial,
                CheckArg::Thick => LocalizeCheck::Thick,
                CheckArg::Kernel => LocalizeCheck::Kernel,
                CheckArg::Members => LocalizeCheck::Members,
            },
        },
        Sub::Stable { bound, source, target } => Command::Stable { bound, source, target },
        Sub::Decompose { input } => Command::Decompose { input },
        Sub::Report { .. } => unreachable!("handled before dispatch"),
    }
}

#[derive(Clone, Copy, Debug)]
enum Base {
    Vect,
    Chain,
    Frobenius,
}

fn parse_instance(s: &str) -> Result<(Base, bool), InputError> {
    let (name, op) = match s.strip_prefix("op-of:") {
        Some(rest) => (rest, true),
        None => (s, false),
    };
    let base = match name {
        "vect" => Base::Vect,
        "chain" => Base::Chain,
        "frobenius" => Base::Frobenius,
        other => return Err(InputError(format!("unknown instance {other:?}"))),
    };
    Ok((base, op))
}

fn run_on<I: CliInstance + Clone>(inst: I, op: bool, cmd: &Command, ctx: &Ctx) -> Result<Outcome, InputError> {
    if op {
        commands::run(&Op(inst), cmd, ctx)
    } else {
        commands::run(&inst, cmd, ctx)
    }
}

fn execute(cli: &Cli, cmd: Command) -> Result<Outcome, InputError> {
    let field: Field = cli.field.parse().map_err(|e| InputError(format!("--field: {e}")))?;
    let (base, op) = parse_instance(&cli.instance)?;
    let ctx = Ctx {
        seed: cli.seed,
        samples: cli.samples,
        limits: SampleLimits { max_dim: cli.max_dim, max_len: cli.max_len },
        subcat: cli.subcat.as_deref().map(parse_subcat).transpose()?,
        threads: cli.threads,
    };
    match (base, &cmd) {
        (Base::Frobenius, Command::Stable { bound, source, target }) if !op => {
            commands::stable(&FrobeniusInstance::new(field), *bound, *source, *target)
        }
        (Base::Vect, _) => run_on(VectInstance::new(field), op, &cmd, &ctx),
        (Base::Chain, _) => run_on(ChainInstance::new(field), op, &cmd, &ctx),
        (Base::Frobenius, _) => run_on(FrobeniusInstance::new(field), op, &cmd, &ctx),
    }
}

/// Prints a one-line summary per failing entry of a saved report.
fn summarize(path: &Path) -> Result<bool, InputError> {
    let v = parse_json(&read_text(path)?)?;
    let entries = v.get("entries").and_then(Value::as_array).ok_or_else(|| InputError("not a report".into()))?;
    let mut ok = true;
    for e in entries {
        let anchor = e.get("anchor").and_then(Value::as_str).unwrap_or("?");
        let passed = e.get("passed").and_then(Value::as_u64).unwrap_or(0);
        let failed = e.get("failed").and_then(Value::as_u64).unwrap_or(0);
        println!("{} {anchor}: {passed} passed, {failed} failed", if failed == 0 { "ok  " } else { "FAIL" });
        ok &= failed == 0;
    }
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Sub::Report { input } = &cli.command {
        return match summarize(input) {
            Ok(true) => ExitCode::SUCCESS,
            Ok(false) => ExitCode::from(1),
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        };
    }
    let cmd = to_command(cli.command.clone());
    let outcome = match execute(&cli, cmd) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let json = outcome.report.to_json();
    let written = match &cli.out {
        Some(p) => std::fs::write(p, json + "\n"),
        None => {
            println!("{json}");
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: writing report: {e}");
        return ExitCode::from(2);
    }
    if let (Some(path), Some(dot)) = (&cli.dot, &outcome.dot) {
        if let Err(e) = std::fs::write(path, dot) {
            eprintln!("error: writing DOT: {e}");
            return ExitCode::from(2);
        }
    }
    let r = &outcome.report;
    let passed: usize = r.entries.iter().map(|e| e.passed).sum();
    eprintln!("{}: {passed} checks passed, {} failed", r.command, r.failed_count());
    if r.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
