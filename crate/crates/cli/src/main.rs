//! `congmon`: generators, orbits and checks for the monoid of solutions of
//! `x1 + 2 x2 + ... + (n-1) x_{n-1} = 0 (mod n)`.

mod render;

use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{ArgGroup, Args, Parser, Subcommand};
use congmon::gen::forced_layer;
use congmon::monoid::{enumerate_degree_with, indecomposables_with};
use congmon::reduce::general_indecomposables_with;
use congmon::verify::any_proved_failure;
use congmon::{
    brute_force_im, level1_layer, orbit_decomposition, reduce, Check, Error, GeneralCongruence,
    GeneratorMode, GeneratorRequest, Harness, Layer, Solution, SweepConfig, UnitGroup,
    VerifyLimits,
};

use render::{Format, SolutionRow};

#[derive(Parser)]
#[command(name = "congmon", version, about)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Worker threads; 0 picks one per core.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Cap on candidate vectors a degree sweep may visit.
    #[arg(long = "limit", global = true, value_name = "CAND_CAP")]
    limit: Option<u64>,
    /// Suppress notes and warnings on stderr.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Indecomposable generators, optionally one degree.
    Im {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        degree: Option<u32>,
        /// Also compare against the brute-force oracle.
        #[arg(long, hide = true)]
        seed_check: bool,
    },
    /// Every solution of a given degree.
    Enumerate {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        degree: u32,
    },
    /// Unit-group orbits of the generators, optionally one degree.
    Orbits {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        degree: Option<u32>,
    },
    /// Level-1 generators of a high degree, built from partitions.
    Gen {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        degree: u32,
        /// Expand each generator into its full orbit.
        #[arg(long)]
        orbits: bool,
        /// Build the layer even below the completeness threshold.
        #[arg(long)]
        force: bool,
    },
    /// Generators of `w1 x1 + ... + wr xr = 0 (mod n)` for arbitrary weights.
    Reduce {
        #[arg(long = "mod", value_name = "N")]
        modulus: u32,
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        weights: Vec<i64>,
    },
    /// Run checks and report status per modulus.
    Verify(VerifyArgs),
    /// F(n) next to the lower bound p(n) + phi(n) - 1.
    Table {
        #[arg(long)]
        n_max: u32,
    },
}

#[derive(Args)]
#[command(group(ArgGroup::new("range").required(true).args(["n", "n_max"])))]
struct VerifyArgs {
    #[arg(long)]
    n: Option<u32>,
    /// Every modulus from 2 up to this one.
    #[arg(long)]
    n_max: Option<u32>,
    /// Check to run; repeat for several. Defaults to all.
    #[arg(long = "check", value_parser = str::parse::<Check>)]
    checks: Vec<Check>,
}

struct Ctx {
    format: Format,
    quiet: bool,
    sweep: SweepConfig,
}

impl Ctx {
    fn note(&self, msg: &str) {
        if !self.quiet {
            eprintln!("{msg}");
        }
    }
}

/// Outcome of a command that ran to completion.
enum Done {
    Ok,
    CheckFailed,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if cli.threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let ctx = Ctx {
        format: cli.format,
        quiet: cli.quiet,
        sweep: cli
            .limit
            .map(|candidate_cap| SweepConfig { candidate_cap })
            .unwrap_or_default(),
    };
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(&ctx, cli.command, &mut out).and_then(|done| {
        out.flush()?;
        Ok(done)
    });
    match result {
        Ok(Done::Ok) => ExitCode::SUCCESS,
        Ok(Done::CheckFailed) => ExitCode::from(5),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(err) if err.is_scale() => 3,
        Some(Error::BelowThreshold { .. }) => 4,
        Some(_) => 2,
        None if e.downcast_ref::<io::Error>().is_some() => 1,
        None => 2,
    }
}

fn run(ctx: &Ctx, command: Command, out: &mut dyn Write) -> anyhow::Result<Done> {
    match command {
        Command::Im {
            n,
            degree,
            seed_check,
        } => {
            let im = indecomposables_with(n, &ctx.sweep)?;
            let elements = match degree {
                Some(k) => im.degree_slice(k as u64),
                None => im.elements(),
            };
            print_solutions(ctx, out, n, elements)?;
            if seed_check {
                let oracle = brute_force_im(n)?;
                if oracle != im {
                    eprintln!(
                        "seed-check: sweep found {} generators, oracle {}",
                        im.len(),
                        oracle.len()
                    );
                    return Ok(Done::CheckFailed);
                }
                ctx.note(&format!(
                    "seed-check: {} generators match the oracle",
                    im.len()
                ));
            }
        }
        Command::Enumerate { n, degree } => {
            let members = enumerate_degree_with(n, degree, &ctx.sweep)?;
            print_solutions(ctx, out, n, &members)?;
        }
        Command::Orbits { n, degree } => {
            let im = indecomposables_with(n, &ctx.sweep)?;
            let elements = match degree {
                Some(k) => im.degree_slice(k as u64),
                None => im.elements(),
            };
            render::orbits(out, ctx.format, &orbit_decomposition(elements)?)?;
        }
        Command::Gen {
            n,
            degree,
            orbits,
            force,
        } => {
            let mode = if orbits {
                GeneratorMode::FullOrbits
            } else {
                GeneratorMode::Mult1Only
            };
            let req = GeneratorRequest::new(n, degree, mode)?;
            if force && !req.meets_threshold() {
                eprintln!("warning: mult1 subset, completeness not guaranteed");
            }
            let layer = if force {
                forced_layer(&req)?
            } else {
                level1_layer(&req)?
            };
            match layer {
                Layer::Mult1(list) => print_solutions(ctx, out, n, &list)?,
                Layer::Orbits(list) => render::orbits(out, ctx.format, &list)?,
            }
        }
        Command::Reduce { modulus, weights } => {
            let gc = GeneralCongruence::new(modulus, weights)?;
            let rm = reduce(&gc);
            let generators = general_indecomposables_with(&gc, &ctx.sweep)?;
            render::reduction(out, ctx.format, &rm, &generators)?;
        }
        Command::Verify(args) => {
            let moduli: Vec<u32> = match (args.n, args.n_max) {
                (Some(n), _) => vec![n],
                (None, Some(m)) if m >= 2 => (2..=m).collect(),
                (None, Some(m)) => bail!(Error::ModulusTooSmall(m)),
                (None, None) => unreachable!("clap requires one of --n, --n-max"),
            };
            let checks = if args.checks.is_empty() {
                Check::ALL.to_vec()
            } else {
                args.checks
            };
            let harness = harness(ctx);
            let reports = harness.run_many(&checks, &moduli)?;
            render::reports(out, ctx.format, &reports)?;
            if any_proved_failure(&reports) {
                eprintln!("error: a proved-tier check FAILED");
                return Ok(Done::CheckFailed);
            }
            for r in reports.iter().filter(|r| r.failed()) {
                ctx.note(&format!(
                    "note: open check {} fails at n={}",
                    r.check_name, r.modulus
                ));
            }
        }
        Command::Table { n_max } => {
            let rows = harness(ctx).summary_table(n_max)?;
            render::summary(out, ctx.format, &rows)?;
        }
    }
    Ok(Done::Ok)
}

fn harness(ctx: &Ctx) -> Harness {
    Harness::new(VerifyLimits {
        sweep: ctx.sweep,
        ..VerifyLimits::default()
    })
}

fn print_solutions(
    ctx: &Ctx,
    out: &mut dyn Write,
    n: u32,
    elements: &[Solution],
) -> anyhow::Result<()> {
    let group = UnitGroup::shared(n).context("building the unit group")?;
    let rows: Vec<SolutionRow<'_>> = elements
        .iter()
        .map(|a| SolutionRow::new(&group, a))
        .collect();
    render::solutions(out, ctx.format, n, &rows)
}
