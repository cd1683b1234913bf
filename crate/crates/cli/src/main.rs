use std::ops::RangeInclusive;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use higgs_betti::cache::{Cache, CACHE_ENV};
use higgs_betti::commands::{parse_range, ComputeRequest, Context, Field, PipelineArg};
use higgs_betti::format::{render_record, render_records, render_reports, Format};
use higgs_betti::CliError;

/// Signed Betti polynomials of moduli spaces of Higgs bundles over real and
/// complex curves.
#[derive(Parser)]
#[command(version, about)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Neither read nor write the cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Worker threads (default: one per core).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Report wall_ms as 0, making output byte-reproducible.
    #[arg(long, global = true)]
    no_timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// One Betti polynomial.
    Compute {
        #[arg(long)]
        g: usize,
        /// The real points of the curve form b + 1 circles (real field only).
        #[arg(long)]
        b: Option<usize>,
        #[arg(long)]
        r: usize,
        /// Degree; must be coprime to r. Recorded, the result does not depend on it.
        #[arg(long, allow_hyphen_values = true)]
        d: Option<i64>,
        #[arg(long, value_enum, default_value_t = Field::Real)]
        field: Field,
        #[arg(long, value_enum, default_value_t = PipelineArg::Generic)]
        pipeline: PipelineArg,
    },
    /// A grid of Betti polynomials; every b ≤ g unless --b is given.
    Table {
        /// Genus range: `a`, `a..b` (inclusive).
        #[arg(long, value_parser = parse_range)]
        g: RangeInclusive<usize>,
        #[arg(long)]
        b: Option<usize>,
        /// Rank range: `a`, `a..b` (inclusive).
        #[arg(long, value_parser = parse_range)]
        r: RangeInclusive<usize>,
        #[arg(long, allow_hyphen_values = true)]
        d: Option<i64>,
        #[arg(long, value_enum, default_value_t = Field::Real)]
        field: Field,
    },
    /// Run every identity check over g ≤ max-g, r ≤ max-r.
    Verify {
        #[arg(long, default_value_t = 3)]
        max_g: usize,
        #[arg(long, default_value_t = 3)]
        max_r: usize,
        /// Also recompute every cache entry and compare.
        #[arg(long)]
        recompute_cache: bool,
    },
    /// Inspect or empty the cache of A_{g,r}.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand)]
enum CacheAction {
    List,
    Clear,
}

fn run(cli: Cli) -> Result<String, CliError> {
    let g = cli.global;
    let ctx = Context {
        cache: (!g.no_cache).then(Cache::from_env),
        jobs: g.jobs,
        no_timing: g.no_timing,
    };
    match cli.command {
        Command::Compute {
            g: genus,
            b,
            r,
            d,
            field,
            pipeline,
        } => {
            let rec = ctx.compute(&ComputeRequest {
                g: genus,
                b,
                r,
                d,
                field,
                pipeline,
            })?;
            render_record(&rec, g.format)
        }
        Command::Table { g: gs, b, r, d, field } => {
            let (records, errors) = ctx.table(gs, b, r, d, field)?;
            let out = render_records(&records, g.format)?;
            if let Some(worst) = errors.iter().map(|(_, e)| e.exit_code()).max() {
                print!("{out}");
                for (cell, e) in &errors {
                    eprintln!("{cell}: {e}");
                }
                return Err(if worst == 4 {
                    CliError::Internal(format!("{} cell(s) failed", errors.len()))
                } else {
                    CliError::Invalid(format!("{} cell(s) failed", errors.len()))
                });
            }
            Ok(out)
        }
        Command::Verify {
            max_g,
            max_r,
            recompute_cache,
        } => {
            let reports = ctx.verify(max_g, max_r, recompute_cache)?;
            let out = render_reports(&reports, g.format)?;
            let failed = reports.iter().filter(|r| !r.passed()).count();
            if failed > 0 {
                print!("{out}");
                return Err(CliError::VerifyFailed(failed));
            }
            Ok(out)
        }
        Command::Cache { action } => {
            let cache = Cache::from_env();
            match action {
                CacheAction::List => {
                    let mut s = format!(
                        "# cache directory: {} (set {CACHE_ENV} to override)\n",
                        cache.dir().display()
                    );
                    for entry in cache.list() {
                        match entry {
                            Ok(e) => s.push_str(&format!(
                                "g={} r={} engine={}{} created={} terms={}\n",
                                e.g,
                                e.r,
                                e.engine_version,
                                if e.is_current() { "" } else { " (stale)" },
                                e.created,
                                e.poly.split(" + ").count()
                            )),
                            Err(e) => s.push_str(&format!("unreadable: {e}\n")),
                        }
                    }
                    Ok(s)
                }
                CacheAction::Clear => Ok(format!(
                    "removed {} entries\n",
                    cache.clear().map_err(|e| CliError::Internal(e.to_string()))?
                )),
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
