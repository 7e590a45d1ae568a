use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use sitcj_core::experiment::{generate_channel, run_experiment_to, solve_trial, Dims, ExperimentConfig, SweepAxis};
use sitcj_core::verify::{run_suite, Suite};
use sitcj_core::{Scheme, SolverBudget};

#[derive(Parser)]
#[command(name = "sitcj", version, about = "Secrecy rates with cooperative jamming on random wiretap channels")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Average rates over random channels for each value of one parameter.
    Sweep(SweepArgs),
    /// Rates of every scheme on one random channel.
    Single(SingleArgs),
    /// Compare the solvers against brute-force oracles.
    Verify {
        #[arg(long, value_parser = parse_with::<Suite>)]
        suite: Suite,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Args)]
struct Common {
    /// Receive antennas at the legitimate receiver.
    #[arg(long, default_value_t = 4)]
    b: usize,
    /// Receive antennas at the eavesdropper.
    #[arg(long, default_value_t = 4)]
    e: usize,
    /// Transmit antennas per user.
    #[arg(long, default_value_t = 1)]
    t: usize,
    /// Transmit power per user in dB over unit noise.
    #[arg(long = "p-db", default_value_t = 20.0, allow_hyphen_values = true)]
    p_db: f64,
    #[arg(long, value_delimiter = ',', value_parser = parse_with::<Scheme>, default_value = "no,gn,sitcj")]
    schemes: Vec<Scheme>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 5)]
    l1: usize,
    #[arg(long, default_value_t = 50)]
    l2: usize,
    #[arg(long = "alt-iters", default_value_t = 5)]
    alt_iters: usize,
}

impl Common {
    fn dims(&self) -> Dims {
        Dims { b: self.b, e: self.e, t: self.t, p_db: self.p_db }
    }

    fn budget(&self) -> SolverBudget {
        SolverBudget {
            l1: self.l1,
            l2: self.l2,
            alt_iters: self.alt_iters,
            ..SolverBudget::default()
        }
    }
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_parser = parse_with::<SweepAxis>)]
    axis: SweepAxis,
    #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
    values: Vec<f64>,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long, default_value = "results.csv")]
    out: PathBuf,
    /// Worker threads (defaults to all cores).
    #[arg(long)]
    threads: Option<usize>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct SingleArgs {
    /// Which draw of the seeded channel sequence to use.
    #[arg(long, default_value_t = 0)]
    trial: u64,
    #[command(flatten)]
    common: Common,
}

fn parse_with<T: std::str::FromStr<Err = sitcj_core::Error>>(s: &str) -> std::result::Result<T, String> {
    s.parse().map_err(|e: sitcj_core::Error| e.to_string())
}

fn sweep(args: SweepArgs) -> Result<()> {
    let cfg = ExperimentConfig {
        schemes: args.common.schemes.clone(),
        axis: args.axis,
        values: args.values,
        fixed: args.common.dims(),
        trials: args.trials,
        seed: args.common.seed,
        budget: args.common.budget(),
        threads: args.threads,
    };
    let rows = run_experiment_to(&cfg, &args.out)
        .with_context(|| format!("sweep writing {}", args.out.display()))?;
    println!("wrote {} rows to {}", rows.len(), args.out.display());
    Ok(())
}

fn single(args: SingleArgs) -> Result<()> {
    let c = &args.common;
    let d = c.dims();
    let ch = generate_channel(args.trial, c.seed, d.b, d.e, d.t)?;
    println!("B={} E={} T={} P={} dB seed={} trial={}", d.b, d.e, d.t, d.p_db, c.seed, args.trial);
    for &scheme in &c.schemes {
        let r = solve_trial(&ch, scheme, d.power(), &c.budget())?;
        println!("{:<6} rs={:.6} ro={:.6} total={:.6}", scheme.as_str(), r.rs, r.ro, r.total());
    }
    Ok(())
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Sweep(args) => sweep(args),
        Command::Single(args) => single(args),
        Command::Verify { suite, seed } => {
            print!("{}", run_suite(suite, seed)?);
            Ok(())
        }
    }
}
