//! `gourds`: validate boards, solve, run the oracle, and build placement instances.

use clap::{Parser, Subcommand, ValueEnum};
use gourds_core::board::{parse_board, validate_proper, Board};
use gourds_core::fixtures::two_lobe;
use gourds_core::hamilton::{dual_tree, find_hamiltonian_seeded, repair_seven_runs};
use gourds_core::placement::{
    enumerate_placements, parse_formula, parse_instance, reduce_1in3sat, solve_placement, verify_reduction,
};
use gourds_core::puzzle::{
    assigned_target, gourd_positions, parse_config, reach_count, same_labels, scramble, serialize_config,
    verify_sequence, Configuration, Equivalence,
};
use gourds_core::solver::{displacement_lower_bound, parse_plan, Solver, Strategy};
use gourds_core::OracleMode;
use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "gourds", version, about = "Gourds puzzle toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Cubic,
    Quadratic,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Strategy {
        match s {
            StrategyArg::Cubic => Strategy::Cubic,
            StrategyArg::Quadratic => Strategy::Quadratic,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Pivot,
    Sharp,
}

impl From<ModeArg> for OracleMode {
    fn from(m: ModeArg) -> OracleMode {
        match m {
            ModeArg::Pivot => OracleMode::PivotRules,
            ModeArg::Sharp => OracleMode::SharpTurnRules,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check whether a board is proper; exits 1 when it is not.
    Validate {
        #[arg(long)]
        board: PathBuf,
    },
    /// Print the Hamiltonian cycle decomposition of a proper board.
    Decompose {
        #[arg(long)]
        board: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute a plan from start to target.
    Solve {
        #[arg(long)]
        board: PathBuf,
        #[arg(long)]
        start: PathBuf,
        #[arg(long)]
        target: PathBuf,
        #[arg(long, value_enum, default_value = "quadratic")]
        strategy: StrategyArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count reachable states by breadth-first search.
    Oracle {
        #[arg(long)]
        board: PathBuf,
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_enum, default_value = "pivot")]
        mode: ModeArg,
    },
    /// Apply a seeded random walk of legal moves.
    Scramble {
        #[arg(long)]
        board: PathBuf,
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        steps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Replay a plan or move list; with a target, check that it is reached.
    Verify {
        #[arg(long)]
        board: PathBuf,
        #[arg(long)]
        start: PathBuf,
        #[arg(long)]
        target: Option<PathBuf>,
        /// Plan or move list to replay.
        plan: PathBuf,
    },
    /// Solve a colored placement instance; exits 1 when none exists.
    Place {
        #[arg(long)]
        board: PathBuf,
        /// Enumerate up to this many placements instead of finding one.
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the placement instance for a 1-in-3SAT formula.
    Reduce {
        #[arg(long)]
        formula: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the two-lobe benchmark family and write CSV rows.
    Bench {
        #[arg(long, value_enum, default_value = "quadratic")]
        strategy: StrategyArg,
        /// Largest gourd count; the family runs n = 8, 12, ... up to it.
        #[arg(long, default_value_t = 40)]
        limit: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    /// Unreadable or malformed input.
    Usage(String),
    /// A well-formed question with a negative answer.
    Domain(String),
}

type Run = Result<(), Failure>;

fn usage(e: impl Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn domain(e: impl Display) -> Failure {
    Failure::Domain(e.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_board(path: &Path) -> Result<Board, Failure> {
    parse_board(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_config(path: &Path) -> Result<Configuration, Failure> {
    parse_config(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn emit(out: &Option<PathBuf>, text: &str) -> Run {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cmd: Command) -> Run {
    match cmd {
        Command::Validate { board } => {
            let b = load_board(&board)?;
            let rep = validate_proper(&b);
            println!("cells: {}\n{rep}", b.len());
            if rep.proper {
                Ok(())
            } else {
                Err(domain("board is not proper"))
            }
        }
        Command::Decompose { board, seed, out } => {
            let b = load_board(&board)?;
            let h = find_hamiltonian_seeded(&b, seed).map_err(domain)?;
            let h = repair_seven_runs(&b, &h);
            emit(&out, &dual_tree(&h).dump())
        }
        Command::Solve { board, start, target, strategy, out } => {
            let b = load_board(&board)?;
            let (s, t) = (load_config(&start)?, load_config(&target)?);
            let plan = Solver::new(&b).and_then(|sv| sv.solve(&s, &t, strategy.into())).map_err(domain)?;
            eprintln!(
                "moves: {} (s1={} s2={} s3={})",
                plan.len(),
                plan.stats.s1,
                plan.stats.s2,
                plan.stats.s3
            );
            emit(&out, &plan.to_text())
        }
        Command::Oracle { board, config, mode } => {
            let b = load_board(&board)?;
            let c = load_config(&config)?;
            let mode = mode.into();
            let n = reach_count(&b, &c, mode, Equivalence::Identity).map_err(domain)?;
            println!("states: {n}");
            for (g, (oriented, unordered)) in gourd_positions(&b, &c, mode).map_err(domain)?.iter().enumerate() {
                println!("gourd {g}: oriented {oriented} unordered {unordered}");
            }
            Ok(())
        }
        Command::Scramble { board, config, steps, seed, out } => {
            let b = load_board(&board)?;
            let c = load_config(&config)?;
            let (end, _) = scramble(&b, &c, steps, seed).map_err(domain)?;
            emit(&out, &serialize_config(&end))
        }
        Command::Verify { board, start, target, plan } => {
            let b = load_board(&board)?;
            let s = load_config(&start)?;
            let moves = parse_plan(&read(&plan)?).map_err(usage)?.moves();
            let end = verify_sequence(&b, &s, &moves).map_err(domain)?;
            println!("replayed {} moves", moves.len());
            if let Some(t) = target {
                let t = load_config(&t)?;
                if !same_labels(&end, &t) {
                    return Err(domain("the final configuration differs from the target"));
                }
                println!("target reached");
            } else {
                print!("{}", serialize_config(&end));
            }
            Ok(())
        }
        Command::Place { board, limit, out } => {
            let inst = parse_instance(&read(&board)?).map_err(usage)?;
            inst.validate().map_err(usage)?;
            match limit {
                Some(limit) => {
                    let all = enumerate_placements(&inst, limit).map_err(domain)?;
                    println!("placements: {}", all.len());
                    let text: String = all.iter().map(serialize_config).collect::<Vec<_>>().join("\n");
                    emit(&out, &text)?;
                    if all.is_empty() {
                        return Err(domain("no placement"));
                    }
                    Ok(())
                }
                None => match solve_placement(&inst).map_err(domain)? {
                    Some(c) => emit(&out, &serialize_config(&c)),
                    None => {
                        println!("UNSAT");
                        Err(domain("no placement"))
                    }
                },
            }
        }
        Command::Reduce { formula, out } => {
            let f = parse_formula(&read(&formula)?).map_err(usage)?;
            let inst = reduce_1in3sat(&f).map_err(usage)?;
            let rep = verify_reduction(&inst, &f);
            eprintln!("{rep}");
            emit(&out, &inst.to_text())?;
            if rep.ok() {
                Ok(())
            } else {
                Err(domain("generated instance failed its checks"))
            }
        }
        Command::Bench { strategy, limit, out } => {
            let strategy: Strategy = strategy.into();
            let mut csv = String::from("n,strategy,moves_s1,moves_s2,moves_s3,lower_bound,wall_time\n");
            for n in (8..=limit.max(8)).step_by(4) {
                let (b, s, t) = two_lobe(n as i32);
                let lb = displacement_lower_bound(&b, &s, &assigned_target(&s, &t).map_err(domain)?).map_err(domain)?;
                let clock = Instant::now();
                let plan = Solver::new(&b).and_then(|sv| sv.solve(&s, &t, strategy)).map_err(domain)?;
                let secs = clock.elapsed().as_secs_f64();
                csv.push_str(&format!(
                    "{n},{strategy},{},{},{},{lb},{secs:.6}\n",
                    plan.stats.s1, plan.stats.s2, plan.stats.s3
                ));
            }
            emit(&out, &csv)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(m)) => {
            eprintln!("gourds: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("gourds: {m}");
            ExitCode::from(2)
        }
    }
}
