use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use qspp::aqspp::solve_aqspp;
use qspp::bench::{bench_grid, format_table};
use qspp::generate::{generate, Family, QFill};
use qspp::io::{emit_instance, parse_instance};
use qspp::linearization::{
    k4_linearize, linearize_by_paths, linearize_grid, tournament4_linearize, LinearizationResult, Witness,
};
use qspp::rational::{format_rational, parse_rational};
use qspp::reductions::parse_qaplib;
use qspp::solve::{brute_force_solve, spp_solve};
use qspp::special::solve_product_case;
use qspp::{Execution, Path, QsppInstance, Rational};

const EXIT_NOT_LINEARIZABLE: u8 = 3;
const EXIT_MISUSE: u8 = 2;

/// Exact tools for the quadratic shortest path problem.
#[derive(Parser)]
#[command(name = "qspp", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated instance file.
    Generate(GenerateArgs),
    /// Solve an instance file.
    Solve {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Brute)]
        method: Method,
        /// Path enumeration limit for brute force.
        #[arg(long, default_value_t = qspp::graph::DEFAULT_PATH_LIMIT)]
        limit: usize,
    },
    /// Decide whether an instance is linearizable.
    Linearize {
        file: PathBuf,
        #[arg(long, value_enum)]
        mode: Mode,
    },
    /// Time the grid linearization over a range of grid sizes.
    Bench {
        #[arg(long, default_value_t = 8)]
        max_p: usize,
        #[arg(long, default_value_t = 8)]
        max_q: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Run on one thread.
        #[arg(long)]
        sequential: bool,
    },
}

#[derive(Args)]
struct GenerateArgs {
    #[command(subcommand)]
    family: FamilyArg,
    /// Interaction matrix fill.
    #[arg(long = "q", value_enum, default_value_t = Fill::Zero, global = true)]
    fill: Fill,
    /// Largest random entry.
    #[arg(long, default_value_t = 9, global = true)]
    max: u32,
    /// Seed for every random choice; required when anything is random.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output file (stdout if absent).
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum FamilyArg {
    /// p x q directed grid, corner to corner.
    Grid { p: usize, q: usize },
    /// Simplified complete symmetric digraph from 0 to n-1.
    Complete {
        n: usize,
        /// The fixed K4* (n = 4) or K5* (n = 5) example.
        #[arg(long)]
        example: bool,
    },
    /// Directed cycle from 0 to TARGET (default n-1).
    Cycle {
        n: usize,
        #[arg(long)]
        target: Option<usize>,
    },
    /// Hypercube of dimension d.
    Hypercube { d: usize },
    /// Tournament from 0 to n-1.
    Tournament {
        n: usize,
        /// Orientation bits; drawn from the seed when absent.
        #[arg(long)]
        bits: Option<u64>,
    },
    /// Reduction of a QAP given as a QAPLIB file, or of a random one.
    QapReduce {
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
    /// Reduction of two arc-disjoint paths on a random digraph.
    DisjointReduce {
        n: usize,
        #[arg(long, default_value_t = 0.4)]
        density: f64,
    },
    /// Five-vertex cyclic instance where the auxiliary graph fails.
    Counterexample {
        #[arg(long, default_value = "1/2")]
        epsilon: String,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Fill {
    Zero,
    Random,
    WeakSum,
    Product,
    Adjacent,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Brute,
    Aqspp,
    Product,
    Spp,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Grid,
    K4,
    T4,
    Oracle,
    OracleNonneg,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(EXIT_MISUSE)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Generate(args) => cmd_generate(args),
        Command::Solve { file, method, limit } => cmd_solve(&read_instance(&file)?, method, limit),
        Command::Linearize { file, mode } => cmd_linearize(&read_instance(&file)?, mode),
        Command::Bench { max_p, max_q, seed, sequential } => {
            let exec = if sequential { Execution::Sequential } else { Execution::Parallel };
            print!("{}", format_table(&bench_grid(max_p, max_q, seed, exec)?));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn read_text(file: &PathBuf) -> Result<String> {
    if file.as_os_str() == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text)?;
        return Ok(text);
    }
    fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))
}

fn read_instance(file: &PathBuf) -> Result<QsppInstance> {
    let text = read_text(file)?;
    parse_instance(&text).with_context(|| format!("parsing {}", file.display()))
}

fn cmd_generate(args: GenerateArgs) -> Result<ExitCode> {
    let fill = match args.fill {
        Fill::Zero => QFill::Zero,
        Fill::Random => QFill::Random { max: args.max },
        Fill::WeakSum => QFill::WeakSum { max: args.max },
        Fill::Product => QFill::Product { max: args.max },
        Fill::Adjacent => QFill::Adjacent { max: args.max },
    };
    let mut random = args.fill != Fill::Zero;
    let family = match args.family {
        FamilyArg::Grid { p, q } => Family::Grid { p, q },
        FamilyArg::Complete { n, example } => Family::Complete { n, example },
        FamilyArg::Cycle { n, target } => Family::Cycle { n, t: target.unwrap_or(n.saturating_sub(1)) },
        FamilyArg::Hypercube { d } => Family::Hypercube { d },
        FamilyArg::Tournament { n, bits } => {
            random |= bits.is_none();
            Family::Tournament { n, bits }
        }
        FamilyArg::QapReduce { file, n } => {
            let qap = match file {
                Some(path) => {
                    let parsed = parse_qaplib(&read_text(&path)?).with_context(|| format!("parsing {}", path.display()))?;
                    if parsed.symmetrized {
                        eprintln!("warning: asymmetric QAP matrices were replaced by (M + M^T) / 2");
                    }
                    Some(parsed.qap)
                }
                None => {
                    random = true;
                    None
                }
            };
            Family::QapReduce { qap, n }
        }
        FamilyArg::DisjointReduce { n, density } => {
            random = true;
            Family::DisjointReduce { n, density }
        }
        FamilyArg::Counterexample { epsilon } => {
            let epsilon = parse_rational(&epsilon).with_context(|| format!("invalid rational {epsilon:?}"))?;
            Family::Counterexample { epsilon }
        }
    };
    if random && args.seed.is_none() {
        bail!("this instance is random: pass --seed");
    }
    let inst = generate(&family, fill, args.seed.unwrap_or(0))?;
    let text = emit_instance(&inst);
    match args.output {
        Some(path) => fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn print_solution(path: &Path, cost: &Rational) {
    println!("path: {path}");
    println!("cost: {}", format_rational(cost));
}

fn cmd_solve(inst: &QsppInstance, method: Method, limit: usize) -> Result<ExitCode> {
    let (path, cost) = match method {
        Method::Brute => brute_force_solve(inst, Some(limit))?,
        Method::Aqspp => solve_aqspp(inst)?,
        Method::Product => solve_product_case(inst)?,
        Method::Spp => {
            if !inst.q.is_zero() {
                bail!("method spp needs an instance without interaction costs");
            }
            spp_solve(&inst.linear_part())?
        }
    };
    print_solution(&path, &cost);
    Ok(ExitCode::SUCCESS)
}

fn cmd_linearize(inst: &QsppInstance, mode: Mode) -> Result<ExitCode> {
    let (res, notion) = match mode {
        Mode::Grid => (linearize_grid(inst)?, "sign-unrestricted"),
        Mode::K4 => (k4_linearize(inst)?, "nonnegative"),
        Mode::T4 => (tournament4_linearize(inst)?, "nonnegative"),
        Mode::Oracle => (linearize_by_paths(inst, false, None)?, "sign-unrestricted"),
        Mode::OracleNonneg => (linearize_by_paths(inst, true, None)?, "nonnegative"),
    };
    report(&res, notion);
    Ok(if res.is_linearizable() { ExitCode::SUCCESS } else { ExitCode::from(EXIT_NOT_LINEARIZABLE) })
}

fn join(values: &[Rational]) -> String {
    values.iter().map(format_rational).collect::<Vec<_>>().join(" ")
}

fn report(res: &LinearizationResult, notion: &str) {
    if let Some(v) = &res.vector {
        println!("verdict: linearizable ({notion})");
        println!("c");
        println!("{}", v.to_line());
        return;
    }
    println!("verdict: not linearizable ({notion})");
    match &res.witness {
        Some(Witness::Path { path, expected, got }) => {
            println!("witness path: {path}");
            println!("quadratic cost: {}", format_rational(expected));
            println!("linear cost: {}", format_rational(got));
        }
        Some(Witness::Certificate { y, b_dot_y, path_costs }) => {
            println!("path costs: {}", join(path_costs));
            println!("certificate y: {}", join(y));
            println!("b^T y: {}", format_rational(b_dot_y));
        }
        None => {}
    }
}
