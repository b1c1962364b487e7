// SPDX-License-Identifier: Apache-2.0

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use dpip_core::arith::trial_factor;
use dpip_core::dpip::{conjectural_bound, general_ideal_dpip, AdviceBundle, Decision, SwitchConfig, Verdict};
use dpip_core::io::{load_field, load_ideal};
use dpip_core::nf::{dedekind_maximal_at_p, kummer_dedekind, NumberField};
use dpip_core::quadlab::{genus_advice, is_principal_quad};
use dpip_core::switchlab::{switch_stats, to_csv};
use dpip_core::Error;
use num_bigint::BigInt;

const EXIT_NO: u8 = 1;
const EXIT_ERROR: u8 = 2;
const EXIT_MAX_TRIALS: u8 = 3;

#[derive(Parser)]
#[command(name = "dpip", version, about = "Decide principality of ideals from class field advice")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether an ideal is principal.
    Decide(DecideArgs),
    /// Write genus-field advice for an imaginary quadratic field.
    PrecomputeQuad(PrecomputeArgs),
    /// Average number of ideal switches until a prime cofactor, as CSV.
    SwitchStats(StatsArgs),
    /// Principality of a quadratic ideal by form reduction.
    OracleQuad(OracleArgs),
    /// Factor a rational prime into prime ideals.
    FactorPrime(FactorArgs),
    /// Validate an advice file.
    AdviceCheck(AdviceCheckArgs),
}

#[derive(Args)]
struct DecideArgs {
    #[arg(long)]
    field: PathBuf,
    #[arg(long)]
    advice: PathBuf,
    #[arg(long)]
    ideal: PathBuf,
    /// Sampling bound B for switching.
    #[arg(long, short = 'B', conflicts_with = "conjectural_bound")]
    bound: Option<BigInt>,
    /// Use B = 2^d·|Δ|.
    #[arg(long)]
    conjectural_bound: bool,
    /// Switching attempts before giving up (default 64·d).
    #[arg(long)]
    max_trials: Option<usize>,
    #[arg(long, default_value_t = SwitchConfig::DEFAULT_SEED)]
    seed: u64,
}

#[derive(Args)]
struct PrecomputeArgs {
    /// Positive squarefree d for Q(√−d).
    #[arg(short = 'd', allow_negative_numbers = true)]
    d: i64,
    /// Write the advice here instead of stdout.
    #[arg(long, short = 'o')]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct StatsArgs {
    #[arg(long)]
    field: PathBuf,
    #[arg(long)]
    ideal: PathBuf,
    /// Comma-separated sampling bounds.
    #[arg(long, value_delimiter = ',', default_value = "5,10,20")]
    bounds: Vec<BigInt>,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = SwitchConfig::DEFAULT_SEED)]
    seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long, short = 'o')]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    field: PathBuf,
    #[arg(long)]
    ideal: PathBuf,
}

#[derive(Args)]
struct FactorArgs {
    #[arg(long)]
    field: PathBuf,
    #[arg(short = 'p')]
    p: BigInt,
}

#[derive(Args)]
struct AdviceCheckArgs {
    #[arg(long)]
    advice: PathBuf,
    /// Also require the advice to be for this field.
    #[arg(long)]
    field: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            let max_trials = e
                .downcast_ref::<Error>()
                .is_some_and(|e| matches!(e, Error::MaxTrialsExceeded(_)));
            ExitCode::from(if max_trials { EXIT_MAX_TRIALS } else { EXIT_ERROR })
        }
    }
}

fn run(cmd: Command) -> Result<u8> {
    match cmd {
        Command::Decide(a) => decide(a),
        Command::PrecomputeQuad(a) => precompute(a),
        Command::SwitchStats(a) => stats(a),
        Command::OracleQuad(a) => oracle(a),
        Command::FactorPrime(a) => factor(a),
        Command::AdviceCheck(a) => advice_check(a),
    }
}

fn field_arg(path: &Path) -> Result<Arc<NumberField>> {
    let k = load_field(path).with_context(|| format!("reading field {}", path.display()))?;
    Ok(Arc::new(k))
}

fn advice_arg(path: &Path) -> Result<AdviceBundle> {
    AdviceBundle::load(path).with_context(|| format!("reading advice {}", path.display()))
}

/// Warns about primes where `Z[θ]` may not be the maximal order.
fn warn_non_maximal(k: &NumberField) {
    let (fac, _) = trial_factor(k.disc(), 100_000);
    for (p, e) in fac {
        if e >= 2 && !dedekind_maximal_at_p(k, &p).unwrap_or(true) {
            eprintln!(
                "warning: Z[θ] is not maximal at {p} (Dedekind criterion); results describe the order Z[θ]"
            );
        }
    }
}

fn decide(a: DecideArgs) -> Result<u8> {
    let k = field_arg(&a.field)?;
    let advice = advice_arg(&a.advice)?;
    if **advice.field() != *k {
        bail!(Error::AdviceFieldMismatch);
    }
    warn_non_maximal(&k);
    let ideal = load_ideal(&a.ideal, &k).with_context(|| format!("reading ideal {}", a.ideal.display()))?;
    let defaults = SwitchConfig::for_field(&k);
    let bound = match (a.bound, a.conjectural_bound) {
        (_, true) => conjectural_bound(&k),
        (Some(b), false) => b,
        (None, false) => defaults.bound().clone(),
    };
    let cfg = SwitchConfig::new(bound, a.max_trials.unwrap_or(defaults.max_trials()), a.seed)?;
    let d = general_ideal_dpip(&ideal, &advice, &cfg)?;
    print_decision(&d);
    Ok(match d.verdict {
        Verdict::Yes => 0,
        Verdict::No => EXIT_NO,
    })
}

fn print_decision(d: &Decision) {
    println!("{}", d.verdict);
    println!("reason: {}", d.reason);
    println!("switches_used: {}", d.switches_used);
    if let Some(p) = &d.witness_prime {
        println!("witness_prime: {p}");
    }
}

fn precompute(a: PrecomputeArgs) -> Result<u8> {
    if a.d <= 0 {
        bail!("-d must be a positive squarefree integer");
    }
    let m = BigInt::from(a.d);
    let disc = if a.d % 4 == 3 { -m } else { -m * 4 };
    let advice = genus_advice(&disc)?;
    match a.output {
        Some(path) => advice.store(&path)?,
        None => println!("{}", serde_json::to_string_pretty(&advice.to_file())?),
    }
    Ok(0)
}

fn stats(a: StatsArgs) -> Result<u8> {
    let k = field_arg(&a.field)?;
    let ideal = load_ideal(&a.ideal, &k).with_context(|| format!("reading ideal {}", a.ideal.display()))?;
    let stats = switch_stats(&ideal, &a.bounds, a.trials, a.seed, a.jobs)?;
    for s in stats.iter().filter(|s| s.capped) {
        eprintln!("warning: a trial at B = {} reached the sample cap", s.bound_b);
    }
    let csv = to_csv(&stats);
    match a.output {
        Some(path) => std::fs::write(&path, csv).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{csv}"),
    }
    Ok(0)
}

fn oracle(a: OracleArgs) -> Result<u8> {
    let k = field_arg(&a.field)?;
    let ideal = load_ideal(&a.ideal, &k)?;
    if k.degree() != 2 || k.disc() >= &BigInt::from(0) {
        bail!("oracle-quad needs an imaginary quadratic field");
    }
    let principal = is_principal_quad(&ideal, k.disc())?;
    println!("{}", if principal { "Yes" } else { "No" });
    Ok(if principal { 0 } else { EXIT_NO })
}

fn factor(a: FactorArgs) -> Result<u8> {
    let k = field_arg(&a.field)?;
    if !dedekind_maximal_at_p(&k, &a.p)? {
        eprintln!("warning: Z[θ] is not maximal at {}; factors are ideals of Z[θ]", a.p);
    }
    let parts: Vec<String> = kummer_dedekind(&k, &a.p)?
        .iter()
        .map(|(q, e)| if *e == 1 { q.to_string() } else { format!("{q}^{e}") })
        .collect();
    println!("({}) = {}", a.p, parts.join(" "));
    Ok(0)
}

fn advice_check(a: AdviceCheckArgs) -> Result<u8> {
    let advice = advice_arg(&a.advice)?;
    if let Some(path) = a.field {
        let k = field_arg(&path)?;
        if **advice.field() != *k {
            return Err(anyhow!(Error::AdviceFieldMismatch));
        }
    }
    let degrees: Vec<String> = advice.subfields().iter().map(|s| s.q.to_string()).collect();
    println!(
        "ok: field {} (degree {}), t = {}, degrees [{}], |S| = {}",
        advice.field(),
        advice.field().degree(),
        advice.t(),
        degrees.join(", "),
        advice.s().len()
    );
    Ok(0)
}
