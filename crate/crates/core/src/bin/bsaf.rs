use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use bsaf::combined_split::derive_splitting;
use bsaf::harness::{self, bench, campaign, gen_random, CampaignConfig, GenConfig};
use bsaf::io::{self, format_extension};
use bsaf::split_finder::{enumerate_cuts_for, SplitMode};
use bsaf::{enumerate, Framework, Semantics};

const INCOMPLETE_WARNING: &str = "# warning: sound but possibly incomplete under this semantics";

#[derive(Parser)]
#[command(
    name = "bsaf",
    version,
    about = "Bipolar set-based argumentation: extensions and splitting"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List every extension of a framework.
    Enumerate {
        #[arg(long, short)]
        semantics: Semantics,
        file: PathBuf,
    },
    /// Find cuts and solve through them.
    #[command(subcommand)]
    Split(SplitCommand),
    /// Validate a framework, and optionally a cut of it.
    Check {
        #[arg(long)]
        cut: Option<PathBuf>,
        #[arg(long, default_value = "combined")]
        mode: SplitMode,
        file: PathBuf,
    },
    /// Print a seeded random framework.
    Gen(GenArgs),
    /// Differential campaign against the oracle on random frameworks.
    Diff {
        #[arg(long, short)]
        semantics: Semantics,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 7)]
        max_args: usize,
        /// Restrict to one procedure; all three by default.
        #[arg(long)]
        mode: Option<SplitMode>,
    },
    /// Time the oracle against a split solve and print a CSV row.
    Bench {
        #[arg(long, short)]
        semantics: Semantics,
        #[arg(long)]
        cut: PathBuf,
        #[arg(long, default_value = "combined")]
        mode: SplitMode,
        /// Omit the CSV header line.
        #[arg(long)]
        no_header: bool,
        file: PathBuf,
    },
}

#[derive(Subcommand)]
enum SplitCommand {
    /// Print candidate cuts, one per line.
    Find {
        #[arg(long, default_value = "combined")]
        mode: SplitMode,
        file: PathBuf,
    },
    /// Compute extensions through a cut.
    Solve {
        #[arg(long, short)]
        semantics: Semantics,
        #[arg(long)]
        cut: PathBuf,
        #[arg(long, default_value = "combined")]
        mode: SplitMode,
        file: PathBuf,
    },
    /// Print every stage of the combined procedure for one extension of F1.
    Trace {
        #[arg(long)]
        cut: PathBuf,
        #[arg(long)]
        extension: String,
        file: PathBuf,
    },
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long = "args", default_value_t = 6)]
    n_args: usize,
    #[arg(long = "p-att", default_value_t = 0.2)]
    p_attack: f64,
    #[arg(long = "p-sup", default_value_t = 0.1)]
    p_support: f64,
    #[arg(long, default_value_t = 2)]
    max_tail: usize,
    #[arg(long)]
    cyclic_supports: bool,
}

type CliResult = Result<ExitCode, Box<dyn std::error::Error>>;

fn read_framework(path: &Path) -> Result<Framework, Box<dyn std::error::Error>> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    io::parse_framework(&text).map_err(|e| located(path, e))
}

fn read_cut(path: &Path, f: &Framework) -> Result<bsaf::ArgSet, Box<dyn std::error::Error>> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    io::parse_cut(&text, f).map_err(|e| located(path, e))
}

fn located(path: &Path, e: bsaf::Error) -> Box<dyn std::error::Error> {
    match e.span() {
        Some(_) => format!("{}:{e}", path.display()).into(),
        None => format!("{}: {e}", path.display()).into(),
    }
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Enumerate { semantics, file } => {
            let f = read_framework(&file)?;
            print!(
                "{}",
                io::serialize_extensions(&f, &enumerate(&f, semantics)?)
            );
        }
        Command::Split(SplitCommand::Find { mode, file }) => {
            let f = read_framework(&file)?;
            print!(
                "{}",
                io::serialize_cut_list(&f, &enumerate_cuts_for(&f, mode))
            );
        }
        Command::Split(SplitCommand::Solve {
            semantics,
            cut,
            mode,
            file,
        }) => {
            let f = read_framework(&file)?;
            let a1 = read_cut(&cut, &f)?;
            let solution = harness::solve_with_mode(&f, &a1, semantics, mode)?;
            if solution.possibly_incomplete {
                println!("{INCOMPLETE_WARNING}");
            }
            print!("{}", io::serialize_extensions(&f, &solution.extensions));
        }
        Command::Split(SplitCommand::Trace {
            cut,
            extension,
            file,
        }) => {
            let f = read_framework(&file)?;
            let a1 = read_cut(&cut, &f)?;
            let e1 = io::parse_extension(&extension, &f)?;
            let trace = derive_splitting(&f, &a1)?.build_reduced(&e1)?;
            print!("{}", io::serialize_trace(&trace));
        }
        Command::Check { cut, mode, file } => {
            let f = read_framework(&file)?;
            match cut {
                None => println!(
                    "ok: {} arguments, {} attacks, {} supports",
                    f.len(),
                    f.attacks().len(),
                    f.supports().len()
                ),
                Some(path) => {
                    let a1 = read_cut(&path, &f)?;
                    harness::validate_cut(&f, &a1, mode)?;
                    println!("ok: valid {mode} cut {}", format_extension(&f, &a1));
                }
            }
        }
        Command::Gen(g) => {
            let f = gen_random(&GenConfig {
                seed: g.seed,
                n_args: g.n_args,
                p_attack: g.p_attack,
                p_support: g.p_support,
                max_tail: g.max_tail,
                support_dag: !g.cyclic_supports,
            })?;
            print!("{}", io::serialize_framework(&f));
        }
        Command::Diff {
            semantics,
            seed,
            count,
            max_args,
            mode,
        } => {
            let cfg = CampaignConfig {
                seed,
                count,
                max_args,
                semantics: vec![semantics],
                modes: mode.map_or_else(|| SplitMode::ALL.to_vec(), |m| vec![m]),
                ..CampaignConfig::default()
            };
            let summary = campaign(&cfg)?;
            println!(
                "cases={} checks={} equal={} sound_subset={} failures={}",
                summary.cases,
                summary.checks,
                summary.equal,
                summary.sound_subset,
                summary.failures.len()
            );
            for fail in &summary.failures {
                println!(
                    "# case {} seed {} {} cut {}: {:?}",
                    fail.case,
                    fail.config.seed,
                    fail.report.mode,
                    fail.cut_names,
                    fail.report.verdict
                );
                print!("{}", fail.framework);
            }
            if !summary.passed() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Bench {
            semantics,
            cut,
            mode,
            no_header,
            file,
        } => {
            let f = read_framework(&file)?;
            let a1 = read_cut(&cut, &f)?;
            let record = bench(&f, &a1, semantics, mode)?;
            if !no_header {
                println!("{}", harness::BENCH_CSV_HEADER);
            }
            println!("{}", record.csv_row());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
