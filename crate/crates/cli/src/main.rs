mod commands;
mod config;
mod error;
mod manifest;

use clap::{Parser, Subcommand};

use commands::{capture, plateau, probe, scaling, simulate, solve, turns, zipf};

/// Self-play state-frequency statistics for board games.
#[derive(Parser, Debug)]
#[command(name = "gzl", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Play games and count every state visited.
    Simulate(simulate::SimulateArgs),
    /// Rank curve and power-law fit of a frequency table.
    Zipf(zipf::ZipfArgs),
    /// Exact rank distribution of the ideal branching game and its bounds.
    Plateau(plateau::PlateauArgs),
    /// Solve Connect Four positions, or time the solver by state rank.
    Solve(solve::SolveArgs),
    /// Mean turn of states by rank.
    Turns(turns::TurnsArgs),
    /// Histogram of capture differences among frequent states.
    Capture(capture::CaptureArgs),
    /// Quantization-model loss curves and exponent tables.
    Scaling(scaling::ScalingArgs),
    /// Probability that search picks an optimal move, across temperatures.
    #[command(name = "mcts-probe")]
    MctsProbe(probe::ProbeArgs),
}

fn main() {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Simulate(a) => simulate::run(a),
        Command::Zipf(a) => zipf::run(a),
        Command::Plateau(a) => plateau::run(a),
        Command::Solve(a) => solve::run(a),
        Command::Turns(a) => turns::run(a),
        Command::Capture(a) => capture::run(a),
        Command::Scaling(a) => scaling::run(a),
        Command::MctsProbe(a) => probe::run(a),
    };
    if let Err(e) = result {
        eprintln!("gzl: {e}");
        std::process::exit(e.exit_code());
    }
}
