//! Command-line front end for the Weyl-module nonvanishing checker.
//!
//! Exit codes: 0 success (or agreement), 1 usage error, 2 expression/input
//! parse error, 3 witness verification failure, 4 cross-validation mismatch.
//! Results go to standard output; diagnostics and timing go to standard
//! error. With `--json`, standard output is a single machine-readable line
//! that is byte-stable for fixed inputs and seed.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use weylcrit::criterion::{
    check_irreducible_nonzero, check_nonzero, cross_validate, verify_witness, GridParams, Report,
    Step, Witness,
};
use weylcrit::flows::{cmp_flows, enumerate_family};
use weylcrit::hyperalgebra::{xi, UElem};
use weylcrit::oracle::WeylContext;
use weylcrit::tableaux::{coherent_partition, enumerate_standard};
use weylcrit::{expr, Error, FieldCtx, WeightVec};

#[derive(Parser)]
#[command(
    name = "weylcrit",
    version,
    about = "Decides whether a lowering operator survives in a Weyl module",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Flags shared by every command that fixes a rank, a field, and a highest
/// weight.
#[derive(Args)]
struct ContextArgs {
    /// Rank: the group is of type A_{n-1}, acting on n tensor letters.
    #[arg(short = 'n', value_name = "N")]
    n: usize,
    /// Ground field: Q, or F<p> for a prime p (e.g. F2, F7).
    #[arg(long, value_name = "FIELD")]
    field: String,
    /// Highest weight as comma-separated fundamental coordinates (n-1 of them).
    #[arg(long, value_name = "A1,...")]
    weight: String,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether F e+ is nonzero in the Weyl module via the local
    /// reduction procedure, optionally printing a replayable witness.
    Check {
        #[command(flatten)]
        ctx: ContextArgs,
        /// Element of the negative hyperalgebra, e.g. "E(2,1)^(2)*E(3,2)".
        #[arg(long, value_name = "EXPR")]
        expr: String,
        /// Emit one machine-readable JSON line instead of text.
        #[arg(long)]
        json: bool,
        /// Include the replayable witness in the output.
        #[arg(long)]
        witness: bool,
    },
    /// Decide the same question by brute force: expand F e+ in the tensor
    /// space and test it against zero.
    Oracle {
        #[command(flatten)]
        ctx: ContextArgs,
        #[arg(long, value_name = "EXPR")]
        expr: String,
        #[arg(long)]
        json: bool,
    },
    /// Replay a witness produced by `check` and confirm its scalar.
    Verify {
        #[command(flatten)]
        ctx: ContextArgs,
        #[arg(long, value_name = "EXPR")]
        expr: String,
        /// Path to a witness JSON file.
        #[arg(long, value_name = "PATH")]
        witness_file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether F v+ is nonzero in the irreducible head L(omega)
    /// (raising moves only, with arbitrary divided powers).
    Irr {
        #[command(flatten)]
        ctx: ContextArgs,
        #[arg(long, value_name = "EXPR")]
        expr: String,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        witness: bool,
    },
    /// List the flows of a family F_i(sources; sinks) with their signs.
    Flows {
        #[arg(short = 'n', value_name = "N")]
        n: usize,
        /// Distinguished level of the family.
        #[arg(short = 'i', value_name = "I")]
        i: usize,
        /// Sources, ascending, e.g. 1,2,5.
        #[arg(long, value_name = "S1,...")]
        sources: String,
        /// Sinks, descending, e.g. 9,8,7.
        #[arg(long, value_name = "T1,...")]
        sinks: String,
        #[arg(long)]
        json: bool,
    },
    /// Apply the flow-sum operator xi_i(sources; sinks) to an element and
    /// print the image canonically.
    Xi {
        #[arg(short = 'n', value_name = "N")]
        n: usize,
        #[arg(short = 'i', value_name = "I")]
        i: usize,
        #[arg(long, value_name = "S1,...")]
        sources: String,
        #[arg(long, value_name = "T1,...")]
        sinks: String,
        /// Ground field for the coefficients.
        #[arg(long, value_name = "FIELD")]
        field: String,
        #[arg(long, value_name = "EXPR")]
        expr: String,
        #[arg(long)]
        json: bool,
    },
    /// Count standard tableaux and compare with the rank of the oracle's
    /// standard basis (the two must agree).
    Dim {
        #[command(flatten)]
        ctx: ContextArgs,
        #[arg(long)]
        json: bool,
    },
    /// Print a basis of the primitive vectors of a target weight inside the
    /// Weyl module, each as a lowering expression applied to e+.
    Primitive {
        #[command(flatten)]
        ctx: ContextArgs,
        /// Target weight, comma-separated fundamental coordinates.
        #[arg(long, value_name = "A1,...")]
        target: String,
        #[arg(long)]
        json: bool,
    },
    /// Sweep a grid of (field, weight, monomial) cells comparing the checker
    /// against the oracle and replaying every witness.
    Crosscheck {
        /// Largest rank to sweep (all n from 2 up to this).
        #[arg(long, value_name = "N")]
        max_n: usize,
        /// Upper bound for each fundamental coordinate of the weight.
        #[arg(long, value_name = "C")]
        max_coeff: i64,
        /// Upper bound for the total root height of the lowering monomials.
        #[arg(long, value_name = "D")]
        max_degree: u32,
        /// Comma-separated field list, e.g. Q,F2,F3.
        #[arg(long, value_name = "F1,...")]
        fields: String,
        /// Optional cap on the sum of the weight's coordinates.
        #[arg(long, value_name = "H")]
        max_weight: Option<i64>,
        /// Worker threads.
        #[arg(long, default_value_t = 1, value_name = "K")]
        jobs: usize,
        /// Seed for cell subsampling.
        #[arg(long, default_value_t = 1, value_name = "S")]
        seed: u64,
        /// Check only this many randomly chosen cells instead of all.
        #[arg(long, value_name = "CELLS")]
        sample: Option<usize>,
        #[arg(long)]
        json: bool,
    },
}

/// Mirror of the verdict part of `check`/`oracle`/`irr` output.
#[derive(Serialize)]
struct VerdictOut {
    verdict: &'static str,
    expr: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<WitnessOut>,
}

/// Serializes exactly like the canonical witness JSON.
#[derive(Serialize)]
struct WitnessOut {
    steps: Vec<Step>,
    scalar: String,
}

impl From<&Witness> for WitnessOut {
    fn from(w: &Witness) -> WitnessOut {
        WitnessOut { steps: w.steps.clone(), scalar: w.scalar.to_string() }
    }
}

#[derive(Serialize)]
struct VerifyOut {
    verdict: &'static str,
    scalar: String,
}

#[derive(Serialize)]
struct FlowOut {
    edges: Vec<(usize, usize)>,
    sign: i64,
}

#[derive(Serialize)]
struct FlowsOut {
    count: usize,
    flows: Vec<FlowOut>,
}

#[derive(Serialize)]
struct XiOut {
    result: String,
}

#[derive(Serialize)]
struct DimOut {
    standard_tableaux: usize,
    oracle_rank: usize,
}

#[derive(Serialize)]
struct PrimitiveOut {
    dimension: usize,
    basis: Vec<String>,
}

fn parse_context(ctx: &ContextArgs) -> Result<(FieldCtx, WeightVec), Error> {
    let field = FieldCtx::parse(&ctx.field)?;
    let omega = WeightVec::parse(&ctx.weight)?;
    if omega.n() != ctx.n {
        return Err(Error::Weight(format!(
            "-n {} expects {} weight coordinates, got {}",
            ctx.n,
            ctx.n - 1,
            omega.n() - 1
        )));
    }
    Ok((field, omega))
}

fn parse_levels(what: &str, s: &str) -> Result<Vec<usize>, Error> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|e| Error::Input(format!("bad {what} entry {t:?}: {e}")))
        })
        .collect()
}

fn emit<T: Serialize>(json: bool, value: &T, text: &str) {
    if json {
        println!(
            "{}",
            serde_json::to_string(value).expect("output serialization cannot fail")
        );
    } else if !text.is_empty() {
        println!("{text}");
    }
}

fn verdict_output(
    json: bool,
    show_witness: bool,
    canonical: &UElem,
    found: &Option<Witness>,
) -> i32 {
    let verdict = if found.is_some() { "nonzero" } else { "zero" };
    if json {
        let out = VerdictOut {
            verdict,
            expr: canonical.to_string(),
            witness: match (show_witness, found) {
                (true, Some(w)) => Some(WitnessOut::from(w)),
                _ => None,
            },
        };
        emit(true, &out, "");
    } else {
        println!("{verdict}");
        if show_witness {
            if let Some(w) = found {
                println!("witness: {}", w.to_json());
            }
        }
    }
    0
}

fn run(command: Command) -> Result<i32, Error> {
    match command {
        Command::Check { ctx, expr: text, json, witness } => {
            let (field, omega) = parse_context(&ctx)?;
            let f = expr::parse(field, ctx.n, &text)?;
            let found = check_nonzero(&f, &omega)?;
            Ok(verdict_output(json, witness, &f, &found))
        }
        Command::Oracle { ctx, expr: text, json } => {
            let (field, omega) = parse_context(&ctx)?;
            let f = expr::parse(field, ctx.n, &text)?;
            let module = WeylContext::new(field, &omega)?;
            let nonzero = !module.vector_of(&f)?.is_zero();
            let verdict = if nonzero { "nonzero" } else { "zero" };
            let out = VerdictOut { verdict, expr: f.to_string(), witness: None };
            emit(json, &out, verdict);
            Ok(0)
        }
        Command::Verify { ctx, expr: text, witness_file, json } => {
            let (field, omega) = parse_context(&ctx)?;
            let f = expr::parse(field, ctx.n, &text)?;
            let raw = std::fs::read_to_string(&witness_file).map_err(|e| {
                Error::Input(format!("cannot read {}: {e}", witness_file.display()))
            })?;
            let witness = Witness::from_json(field, &raw)
                .map_err(|e| Error::Parse { pos: 0, msg: format!("witness file: {e}") })?;
            verify_witness(&f, &omega, &witness)?;
            let out = VerifyOut { verdict: "verified", scalar: witness.scalar.to_string() };
            emit(json, &out, &format!("verified: scalar = {}", witness.scalar));
            Ok(0)
        }
        Command::Irr { ctx, expr: text, json, witness } => {
            let (field, omega) = parse_context(&ctx)?;
            let f = expr::parse(field, ctx.n, &text)?;
            let found = check_irreducible_nonzero(&f, &omega)?;
            Ok(verdict_output(json, witness, &f, &found))
        }
        Command::Flows { n, i, sources, sinks, json } => {
            let a = parse_levels("source", &sources)?;
            let b = parse_levels("sink", &sinks)?;
            let mut family = enumerate_family(n, i, &a, &b)?;
            family.sort_by(|x, y| cmp_flows(x, y).unwrap_or(std::cmp::Ordering::Equal));
            let mut flows = Vec::with_capacity(family.len());
            for gamma in &family {
                flows.push(FlowOut { edges: gamma.edges().collect(), sign: gamma.sign(i)? });
            }
            if json {
                emit(true, &FlowsOut { count: flows.len(), flows }, "");
            } else {
                for fl in &flows {
                    let edges: Vec<String> =
                        fl.edges.iter().map(|(s, t)| format!("({s},{t})")).collect();
                    println!("{{{}}} sign={:+}", edges.join(","), fl.sign);
                }
            }
            Ok(0)
        }
        Command::Xi { n, i, sources, sinks, field, expr: text, json } => {
            let field = FieldCtx::parse(&field)?;
            let a = parse_levels("source", &sources)?;
            let b = parse_levels("sink", &sinks)?;
            let p = expr::parse(field, n, &text)?;
            let image = xi(i, &a, &b, &p)?;
            let rendered = image.to_string();
            emit(json, &XiOut { result: rendered.clone() }, &rendered);
            Ok(0)
        }
        Command::Dim { ctx, json } => {
            let (field, omega) = parse_context(&ctx)?;
            let count = enumerate_standard(&coherent_partition(&omega)?)?.len();
            let module = WeylContext::new(field, &omega)?;
            let rank = module.dimension()?;
            if count != rank {
                return Err(Error::Internal(format!(
                    "standard tableau count {count} differs from oracle rank {rank}"
                )));
            }
            emit(
                json,
                &DimOut { standard_tableaux: count, oracle_rank: rank },
                &format!("{count} = {rank}"),
            );
            Ok(0)
        }
        Command::Primitive { ctx, target, json } => {
            let (field, omega) = parse_context(&ctx)?;
            let target = WeightVec::parse(&target)?;
            if target.n() != ctx.n {
                return Err(Error::Weight(format!(
                    "--target expects {} coordinates, got {}",
                    ctx.n - 1,
                    target.n() - 1
                )));
            }
            let module = WeylContext::new(field, &omega)?;
            let vectors = module.primitive_space(&target)?;
            let mut basis = Vec::with_capacity(vectors.len());
            for v in &vectors {
                let coords = module.coords(v)?;
                let mut u = UElem::zero(field, ctx.n);
                for (c, t) in coords.iter().zip(module.basis()?.tableaux()) {
                    if !c.is_zero() {
                        u = u.add(&t.f_of(field)?.scale(c));
                    }
                }
                basis.push(u.to_string());
            }
            if json {
                emit(true, &PrimitiveOut { dimension: basis.len(), basis }, "");
            } else {
                println!("dimension: {}", basis.len());
                for line in &basis {
                    println!("{line}");
                }
            }
            Ok(0)
        }
        Command::Crosscheck {
            max_n,
            max_coeff,
            max_degree,
            fields,
            max_weight,
            jobs,
            seed,
            sample,
            json,
        } => {
            if max_n < 2 {
                return Err(Error::Input("--max-n must be at least 2".into()));
            }
            if jobs == 0 {
                return Err(Error::Input("--jobs must be at least 1".into()));
            }
            let fields = fields
                .split(',')
                .map(|t| FieldCtx::parse(t.trim()))
                .collect::<Result<Vec<_>, _>>()?;
            let params = GridParams {
                n_values: (2..=max_n).collect(),
                fields,
                max_coeff,
                max_height: max_degree,
                max_omega_height: max_weight,
                jobs,
                sample: sample.map(|cells| (seed, cells)),
            };
            let report = cross_validate(&params)?;
            print_report(&report, json);
            Ok(if report.ok() { 0 } else { 4 })
        }
    }
}

fn print_report(report: &Report, json: bool) {
    if json {
        emit(true, report, "");
        return;
    }
    println!("cells: {}", report.cells);
    println!("nonzero: {}", report.criterion_nonzero);
    println!("mismatches: {}", report.mismatches.len());
    println!("failures: {}", report.failures.len());
    println!("{}", if report.ok() { "ok" } else { "MISMATCH" });
    for m in &report.mismatches {
        eprintln!(
            "mismatch: field={} weight=({}) F={} criterion={} oracle={}",
            m.field, m.omega, m.f, m.criterion_nonzero, m.oracle_nonzero
        );
    }
    for f in &report.failures {
        eprintln!("failure: {f}");
    }
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Parse { .. } => 2,
        Error::WitnessReplay(_) => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let started = Instant::now();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            // clap renders help to stdout and errors to stderr on its own
            e.print().expect("cannot write diagnostics");
            return ExitCode::from(code as u8);
        }
    };
    let code = match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    };
    eprintln!("# elapsed: {} ms", started.elapsed().as_millis());
    ExitCode::from(code as u8)
}
