//! Command-line front end: exact tables, censuses, bound checks, the
//! repeated-root count, and Monte Carlo experiments.
//!
//! Exit status is 0 when every comparison passes, 1 when one fails, and 2 on
//! usage errors.

mod commands;
mod output;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use padic_galois::fqpoly::DEFAULT_CENSUS_CAP;
use padic_galois::montecarlo::{ExperimentConfig, Mode};
use padic_galois::padic::DEFAULT_PRECISION_CAP;

use output::{Format, Output};

#[derive(Parser, Debug)]
#[command(
    name = "padic-galois",
    version,
    about = "Splitting types and Galois groups of random p-adic polynomials"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long, env = "PADIC_GALOIS_THREADS", global = true)]
    threads: Option<usize>,
    /// Largest number of polynomials a census may enumerate.
    #[arg(long, default_value_t = DEFAULT_CENSUS_CAP, global = true)]
    census_cap: u128,
    /// Print which command reproduces which result, then exit.
    #[arg(long)]
    manifest: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse().map_err(|e: padic_galois::Error| e.to_string())
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact probability tables.
    Exact {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        q: u64,
        /// Joint probabilities of an unramified splitting field and each type (n = 2, 3).
        #[arg(long)]
        unramified: bool,
        /// Galois group probabilities (n = 2, 3).
        #[arg(long)]
        groups: bool,
    },
    /// Splitting types of every monic polynomial over F_q.
    Census {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        q: u64,
    },
    /// Check the explicit bound on the distance to cycle-type frequencies.
    VerifyBounds {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        q: u64,
    },
    /// Count cubics with reduction (x+a)^2(x-2a) that split modulo π^k.
    TripleCount {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        f: u32,
        #[arg(long)]
        k: u32,
        /// Index of the residue a in the packed enumeration of F_q.
        #[arg(long, default_value_t = 1)]
        a: u32,
    },
    /// Monte Carlo experiment over Haar-random monic polynomials.
    Sample {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        f: u32,
        #[arg(long, default_value_t = 1)]
        e: u32,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_parser = parse_mode, default_value = "splitting-types")]
        mode: Mode,
        #[arg(long, default_value_t = DEFAULT_PRECISION_CAP)]
        precision_cap: u32,
    },
    /// Star-conditioned runs over a list of q.
    Sweep {
        #[arg(long)]
        n: u32,
        #[arg(long, value_delimiter = ',', required = true)]
        q_list: Vec<u64>,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn run(cli: &Cli) -> padic_galois::Result<Output> {
    match cli.command.as_ref().expect("checked by caller") {
        Command::Exact {
            n,
            q,
            unramified,
            groups,
        } => commands::exact(*n, *q, *groups, *unramified),
        Command::Census { n, q } => commands::census(*n, *q, cli.census_cap),
        Command::VerifyBounds { n, q } => commands::verify(*n, *q),
        Command::TripleCount { p, f, k, a } => commands::triples(*p, *f, *k, *a, cli.census_cap),
        Command::Sample {
            n,
            p,
            f,
            e,
            samples,
            seed,
            mode,
            precision_cap,
        } => {
            let cfg = ExperimentConfig {
                p: *p,
                f: *f,
                e: *e,
                n: *n,
                samples: *samples,
                seed: *seed,
                precision_cap: *precision_cap,
                mode: *mode,
            };
            let (out, report) = commands::sample(&cfg)?;
            eprintln!("wall time: {:.3}s", report.wall_time.as_secs_f64());
            Ok(out)
        }
        Command::Sweep {
            n,
            q_list,
            samples,
            seed,
        } => commands::sweep(*n, q_list, *samples, *seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if t == 0 || rayon::ThreadPoolBuilder::new().num_threads(t).build_global().is_err() {
            eprintln!("error: invalid thread count {t}");
            return ExitCode::from(2);
        }
    }
    let result = if cli.manifest {
        Ok(commands::manifest())
    } else if cli.command.is_none() {
        eprintln!("error: a subcommand or --manifest is required (see --help)");
        return ExitCode::from(2);
    } else {
        run(&cli)
    };
    match result {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            if out.write(cli.format, &mut stdout).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(2);
            }
            if out.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
