use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};
use cuboid_verify::show::{show, ShowArgs, Target};
use cuboid_verify::{default_threads, json, run_all, search, sweep, Config};

#[derive(Parser)]
#[command(name = "cuboid", version, about = "Exact verification of the cuboid root obstruction")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every check and print the certificate.
    Verify {
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        height: u64,
        #[arg(long, default_value_t = 30, value_parser = clap::value_parser!(u64).range(2..))]
        sweep_bound: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        threads: Option<u64>,
    },
    /// List the rational points of the curve up to a height.
    Search {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        height: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        threads: Option<u64>,
    },
    /// Look for rational roots over coprime parameter pairs.
    Sweep {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        bound: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        threads: Option<u64>,
    },
    /// Print one of the polynomial families.
    Show {
        /// One of qpq, ps, f, g, param.
        target: Target,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        q: Option<u64>,
        /// A positive rational NUM/DEN.
        #[arg(long)]
        s: Option<String>,
    },
}

fn threads(n: Option<u64>) -> usize {
    n.map_or_else(default_threads, |n| n as usize)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Verify { height, sweep_bound, threads: n } => {
            let config = Config { height, sweep_bound, threads: threads(n) };
            let cert = run_all(&config)?;
            println!("{}", cert.to_json());
            for check in cert.checks.iter().filter(|c| c.status == "fail") {
                eprintln!("FAILED {}: {}\n  {}", check.check, check.citation, check.witness);
            }
            eprintln!(
                "{}: {} passed, {} failed, {} external assumptions",
                cert.status, cert.summary.passes, cert.summary.failures, cert.summary.external_assumptions
            );
            Ok(if cert.passed() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::Search { height, threads: n } => {
            let points = search(height, threads(n))?;
            println!("{}", serde_json::to_string_pretty(&json::points_json(&points))?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Sweep { bound, threads: n } => {
            let report = sweep(bound, threads(n))?;
            println!("{}", serde_json::to_string_pretty(&json::SweepJson::from(&report))?);
            if !report.confirmed() {
                eprintln!("sweep found {} violations", report.violations.len());
            }
            Ok(if report.confirmed() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::Show { target, p, q, s } => match show(target, &ShowArgs { p, q, s }) {
            Ok(text) => {
                println!("{}", text);
                Ok(ExitCode::SUCCESS)
            }
            Err(e) => {
                eprintln!("error: {}", e);
                Ok(ExitCode::from(2))
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {:#}", e);
            ExitCode::FAILURE
        }
    }
}
