use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use furstenberg_fp::harness::{parse_config_with, run, Command};
use furstenberg_fp::indices::parse_rational;
use furstenberg_fp::Rational;

const SCHEMAS: &str = "\
CSV columns:
  index        index,s,t,a,n,k,value,type,pass,error
  lemmas       lemma,n,k,step,checked,counterexamples,pass,error
               (plus counterexamples.csv: lemma,n,k,witness,lhs,rhs,deficit)
  construct    s,t,n,k,p,branch,size,target,ratio,valid,upper_ok,lower_ok,pass,error
  exceptional  a,s,n,k,p,type,branch,size,claimed,certified,target,size_ok,lower_ok,disjoint,pass,error
  count        n,k,m,l,p,count,exponent,pass,error
Rationals are written num/den; counts are exact decimal integers.
summary.json holds {cases, passes, fails, wall_ms}. Exit status is 1 iff some case fails, 2 on a bad config.";

#[derive(Parser)]
#[command(name = "furstenberg", version, about = "Exact experiments on Furstenberg sets and projections over F_p", after_help = SCHEMAS)]
struct Cli {
    #[command(subcommand)]
    command: Sub,

    /// JSON config; each parameter key takes a scalar or a list
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output directory
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Grid step for `lemmas`, as num/den
    #[arg(long, global = true, value_parser = rational)]
    grid_step: Option<Rational>,

    /// C in the upper-bound checks, as num/den
    #[arg(long, global = true, value_parser = rational)]
    upper_constant: Option<Rational>,

    /// c in the lower-bound checks, as num/den
    #[arg(long, global = true, value_parser = rational)]
    lower_constant: Option<Rational>,
}

#[derive(Subcommand, Clone, Copy)]
enum Sub {
    /// Evaluate F(s,t;n,k) and, when `a` is given, M(a,s;n,k)
    Index,
    /// Run grid checks of the recursions and index properties
    Lemmas,
    /// Build Furstenberg families and test them against C p^F
    Construct,
    /// Build exceptional-set witnesses and certify c p^M
    Exceptional,
    /// Count subspaces with a small projection of a coordinate subspace
    Count,
}

impl From<Sub> for Command {
    fn from(s: Sub) -> Self {
        match s {
            Sub::Index => Command::Index,
            Sub::Lemmas => Command::Lemmas,
            Sub::Construct => Command::Construct,
            Sub::Exceptional => Command::Exceptional,
            Sub::Count => Command::Count,
        }
    }
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    match go(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn go(cli: Cli) -> anyhow::Result<ExitCode> {
    let text = match &cli.config {
        Some(path) => fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?,
        None => "{}".to_string(),
    };
    let mut cfg = parse_config_with(&text, Some(cli.command.into()))?;
    if let Some(step) = cli.grid_step {
        anyhow::ensure!(step > Rational::from_integer(0), "--grid-step must be positive");
        cfg.step = step;
    }
    if let Some(c) = cli.upper_constant {
        cfg.upper_constant = c;
    }
    if let Some(c) = cli.lower_constant {
        cfg.lower_constant = c;
    }
    if cli.jobs.is_some() {
        cfg.jobs = cli.jobs;
    }
    let out = cli.out.or(cfg.out.clone()).unwrap_or_else(|| PathBuf::from("out"));

    let report = run(&cfg)?;
    report.write(&out)?;
    let s = report.summary();
    println!(
        "{}: {} cases, {} passed, {} failed, {} ms -> {}",
        cfg.command,
        s.cases,
        s.passes,
        s.fails,
        s.wall_ms,
        out.display()
    );
    Ok(if s.fails == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}
