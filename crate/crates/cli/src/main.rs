//! `figbench` — build figurative-language narrative benchmarks, generate
//! knowledge bundles, score and generate continuations, and evaluate.

mod commands;
mod config;
mod io;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "figbench", version, about = "Figurative-language narrative benchmark pipeline")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Mine narratives from a corpus and emit dataset instances with
    /// expression-disjoint splits.
    BuildDataset(commands::build_dataset::Args),
    /// Produce inference bundles for dataset instances via a knowledge
    /// backend.
    GenKnowledge(commands::gen_knowledge::Args),
    /// Score candidate continuations (discriminative task).
    Score(commands::score::Args),
    /// Generate continuations (generative task).
    Generate(commands::generate::Args),
    /// Compute metrics over predictions, generations, or human judgments.
    Evaluate(commands::evaluate::Args),
}

fn main() {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::BuildDataset(args) => commands::build_dataset::run(args),
        Command::GenKnowledge(args) => commands::gen_knowledge::run(args),
        Command::Score(args) => commands::score::run(args),
        Command::Generate(args) => commands::generate::run(args),
        Command::Evaluate(args) => commands::evaluate::run(args),
    };
    match result {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(1);
        }
    }
}
