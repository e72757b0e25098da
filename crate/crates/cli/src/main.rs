mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lfd_core::poly::groebner::Budget;
use lfd_core::{Exec, DEFAULT_SEED, DEFAULT_TRIALS};

use commands::{CliError, Ctx};

#[derive(Parser, Debug)]
#[command(name = "lfd", version, about = "Verify and analyze linear free divisors")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json, env = "LFD_FORMAT")]
    format: Format,
    /// Seed for sampled tests.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED, env = "LFD_SEED")]
    seed: u64,
    /// Random lines or points per sampled test.
    #[arg(long, global = true, default_value_t = DEFAULT_TRIALS, env = "LFD_TRIALS")]
    trials: usize,
    /// Worker threads; 1 runs everything sequentially.
    #[arg(long, global = true, env = "LFD_JOBS")]
    jobs: Option<usize>,
    /// Gröbner basis limits as `POLYS` or `POLYS/DEGREE`.
    #[arg(long, global = true, default_value = "5000/20", env = "LFD_GROEBNER_BUDGET", value_parser = parse_budget)]
    groebner_budget: Budget,
    /// Include wall-clock timings (makes output nondeterministic).
    #[arg(long, global = true, env = "LFD_TIMINGS")]
    timings: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Args, Debug)]
struct InputArgs {
    /// JSON input file.
    #[arg(conflicts_with = "catalog", required_unless_present = "catalog")]
    input: Option<PathBuf>,
    /// Built-in catalog entry id or alias.
    #[arg(long)]
    catalog: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that a basis of linear vector fields defines a linear free divisor.
    Verify(InputArgs),
    /// Lie algebra cohomology of the basis and the comparison with a group type.
    Cohomology {
        #[command(flatten)]
        input: InputArgs,
        /// Group type such as `GL:2` or `T:1,B:2`.
        #[arg(long)]
        group: Option<String>,
    },
    /// Discriminant and Kac check for a quiver representation space.
    Quiver(InputArgs),
    /// Maximal-minor families of a generic matrix.
    Minors(InputArgs),
    /// Strong Euler homogeneity and quasihomogeneity witnesses.
    Euler {
        #[command(flatten)]
        input: InputArgs,
        /// Witness JSON file to verify in addition to built-in ones.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Run every catalog entry, or dump the catalog as JSON.
    Catalog {
        /// Only entries whose id or alias contains this text.
        #[arg(long)]
        filter: Option<String>,
        /// Print the catalog data instead of running it.
        #[arg(long)]
        dump: bool,
    },
}

fn parse_budget(s: &str) -> Result<Budget, String> {
    let (polys, degree) = match s.split_once('/') {
        Some((p, d)) => (p, Some(d)),
        None => (s, None),
    };
    let max_basis = polys.trim().parse().map_err(|_| format!("invalid polynomial count `{polys}`"))?;
    let max_degree = match degree {
        Some(d) => d.trim().parse().map_err(|_| format!("invalid degree `{d}`"))?,
        None => Budget::default().max_degree,
    };
    Ok(Budget { max_basis, max_degree })
}

fn run(cli: Cli) -> Result<output::Document, CliError> {
    let g = cli.global;
    let exec = match g.jobs {
        Some(0) => return Err(CliError::usage("--jobs must be at least 1")),
        Some(1) => Exec::Sequential,
        Some(n) => {
            commands::configure_threads(n)?;
            Exec::Parallel
        }
        None => Exec::default(),
    };
    let ctx = Ctx {
        seed: g.seed,
        trials: g.trials.max(1),
        budget: g.groebner_budget,
        exec,
        timings: g.timings,
    };
    match cli.command {
        Command::Verify(i) => commands::verify(&ctx, &commands::load(i.input, i.catalog)?),
        Command::Cohomology { input, group } => {
            let group = group
                .map(|s| s.parse().map_err(|e: lfd_core::Error| CliError::usage(e.to_string())))
                .transpose()?;
            commands::cohomology(&ctx, &commands::load(input.input, input.catalog)?, group)
        }
        Command::Quiver(i) => commands::quiver(&ctx, &commands::load(i.input, i.catalog)?),
        Command::Minors(i) => commands::minors(&ctx, &commands::load(i.input, i.catalog)?),
        Command::Euler { input, witness } => {
            commands::euler(&ctx, &commands::load(input.input, input.catalog)?, witness.as_deref())
        }
        Command::Catalog { filter, dump } => {
            if dump {
                Ok(commands::dump())
            } else {
                commands::catalog(&ctx, filter.as_deref())
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.global.format;
    match run(cli) {
        Ok(doc) => {
            output::print(&doc, format);
            ExitCode::from(doc.exit_code())
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
