use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use kconn::exact::{rooted_optimum, subset_optimum, SearchOrder};
use kconn::graph::EdgeSet;
use kconn::harness::experiment::{run_ratio_experiment, summarize, RatioConfig};
use kconn::harness::format::{FileFormat, InstanceFile, SolutionFile};
use kconn::harness::generate::{generate, CostModel, GenModel, GenSpec};
use kconn::harness::oracle::{brute_force_optimum, verify_solution};
use kconn::harness::report;
use kconn::reduction::rooted_to_subset;
use kconn::rooted::StrategyId;
use kconn::solver::{solve, DispatchCase, GuardLevel, SolverConfig};
use kconn::Error;

/// Minimum-cost subset k-connectivity solver.
#[derive(Parser)]
#[command(name = "kconn", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance and verify the result.
    Solve(SolveArgs),
    /// Check a solution file against an instance.
    Verify {
        instance: PathBuf,
        solution: PathBuf,
        #[arg(long, default_value = "text")]
        format: FileFormat,
    },
    /// Generate a seeded instance.
    Gen(GenArgs),
    /// Exact optimum by exhaustive search (tiny instances only).
    Oracle {
        instance: PathBuf,
        #[arg(long, default_value = "text")]
        format: FileFormat,
    },
    /// Reduce a rooted instance to a subset instance.
    Reduce {
        instance: PathBuf,
        /// Also compare exact optima on both sides.
        #[arg(long)]
        check: bool,
        #[arg(long, default_value = "text")]
        format: FileFormat,
    },
    /// Cost ratios against the exact optimum on random tiny instances.
    Bench {
        #[arg(long, default_value_t = 60)]
        count: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value = "text")]
        format: FileFormat,
    },
}

#[derive(Args)]
struct SolveArgs {
    instance: PathBuf,
    #[arg(long, default_value = "per-terminal")]
    strategy: StrategyId,
    #[arg(long = "assert-level", default_value = "always")]
    assert_level: GuardLevel,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Force a case instead of choosing by terminal count.
    #[arg(long)]
    dispatch: Option<DispatchCase>,
    #[arg(long, default_value = "text")]
    format: FileFormat,
    /// Write the solution edges here.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, default_value = "random-geometric")]
    model: GenModel,
    #[arg(long, default_value_t = 20)]
    n: usize,
    #[arg(long, default_value_t = 6)]
    terminals: usize,
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// `unit`, `uniform:MIN:MAX` or `distance:SCALE`.
    #[arg(long, default_value = "uniform:1:9")]
    costs: CostModel,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// The example tree; overrides the other shape flags.
    #[arg(long)]
    example_tree: bool,
    #[arg(long, default_value = "text")]
    format: FileFormat,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

fn read_instance(path: &Path) -> Result<InstanceFile> {
    let src = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    InstanceFile::parse(&src).with_context(|| format!("parsing {}", path.display()))
}

fn emit(text: &str, output: Option<&Path>) -> Result<()> {
    match output {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run_solve(args: &SolveArgs) -> Result<ExitCode> {
    let file = read_instance(&args.instance)?;
    let inst = file.to_instance()?;
    let config = SolverConfig {
        dispatch: args.dispatch,
        strategy: args.strategy,
        guard_level: args.assert_level,
        seed: args.seed,
        ..SolverConfig::default()
    };
    let report = match solve(&inst, &config) {
        Ok(r) => r,
        Err(
            e @ Error::Infeasible {
                source_vertex,
                target,
                ..
            },
        ) => {
            println!("infeasible");
            println!("witness {source_vertex} {target}");
            eprintln!("{e}");
            return Ok(ExitCode::from(1));
        }
        Err(e) => return Err(e.into()),
    };
    match args.format {
        FileFormat::Text => print!("{}", report::solve_text(&report, &inst.graph)),
        FileFormat::Json => print!("{}", report::json(&report)),
    }
    if let Some(out) = &args.output {
        let sol = SolutionFile::from_edges(&inst.graph, &report.solution);
        emit(&sol.render(Some(report.total_cost), args.format), Some(out))?;
    }
    let ok = report.is_verified() && report.guards.all_pass();
    Ok(if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn run_gen(args: &GenArgs) -> Result<ExitCode> {
    let spec = if args.example_tree {
        GenSpec::example_tree()
    } else {
        GenSpec {
            costs: args.costs,
            ..GenSpec::new(args.model, args.n, args.terminals, args.k, args.seed)
        }
    };
    let generated = generate(&spec)?;
    emit(&generated.file.render(args.format), args.output.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn run(cli: &Cli) -> Result<ExitCode> {
    match &cli.command {
        Command::Solve(args) => run_solve(args),
        Command::Verify {
            instance,
            solution,
            format,
        } => {
            let file = read_instance(instance)?;
            let src = fs::read_to_string(solution)
                .with_context(|| format!("reading {}", solution.display()))?;
            let sol = SolutionFile::parse(&src)
                .with_context(|| format!("parsing {}", solution.display()))?;
            let cert = verify_solution(&file, &sol)?;
            match format {
                FileFormat::Text => print!("{}", report::certificate_text(&cert)),
                FileFormat::Json => print!("{}", report::json(&cert)),
            }
            Ok(if cert.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Gen(args) => run_gen(args),
        Command::Oracle { instance, format } => {
            let inst = read_instance(instance)?.to_instance()?;
            let opt = brute_force_optimum(&inst, SearchOrder::CheapestFirst)?;
            match format {
                FileFormat::Text => {
                    println!("optimum {}", opt.cost);
                    let sol = SolutionFile::from_edges(&inst.graph, &opt.edges);
                    print!("{}", sol.render(None, FileFormat::Text));
                }
                FileFormat::Json => print!("{}", report::json(&opt)),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Reduce {
            instance,
            check,
            format,
        } => {
            let rooted = read_instance(instance)?.to_rooted()?;
            let (subset, map) = rooted_to_subset(&rooted)?;
            print!("{}", InstanceFile::from_instance(&subset).render(*format));
            if *check {
                let none = EdgeSet::new();
                let order = SearchOrder::CheapestFirst;
                let a = rooted_optimum(
                    &rooted.graph,
                    rooted.root,
                    &rooted.terminals,
                    rooted.k,
                    &none,
                    order,
                )?;
                let b = subset_optimum(
                    &subset.graph,
                    &subset.terminals,
                    subset.k,
                    &map.clique_edges,
                    order,
                )?;
                let show = |o: &Option<kconn::exact::ExactOptimum>| {
                    o.as_ref()
                        .map_or("infeasible".to_string(), |o| o.cost.to_string())
                };
                eprintln!("rooted-optimum {}", show(&a));
                eprintln!("subset-optimum {}", show(&b));
                if a.map(|o| o.cost) != b.map(|o| o.cost) {
                    return Ok(ExitCode::from(1));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Bench {
            count,
            seed,
            format,
        } => {
            let cfg = RatioConfig {
                count: *count,
                seed: *seed,
                ..RatioConfig::default()
            };
            let records = run_ratio_experiment(&cfg)?;
            let summary = summarize(&records);
            match format {
                FileFormat::Text => print!("{}", report::ratio_table(&records, &summary)),
                FileFormat::Json => {
                    print!("{}", report::json_lines(&records));
                    print!("{}", report::json_lines(std::slice::from_ref(&summary)));
                }
            }
            let ok = summary.pairwise_bound_violations == 0 && summary.order_mismatches == 0;
            Ok(if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            let parse = err
                .chain()
                .any(|e| matches!(e.downcast_ref::<Error>(), Some(Error::Parse { .. })));
            ExitCode::from(if parse { 2 } else { 1 })
        }
    }
}
