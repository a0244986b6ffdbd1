use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use lkb_cli::commands::{self, OutputFormat, Outcome, Preset, RingChoice, UsageError};

/// Exact three-variable LKB matrices, their nilpotent tower, and related checks.
#[derive(Parser)]
#[command(name = "lkb", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the matrix of the generator σ_i.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        i: usize,
        #[arg(long, default_value = "theta")]
        ring: RingChoice,
        #[arg(long, default_value = "json")]
        format: OutputFormat,
    },
    /// Print the matrix of a braid word such as "1 -2 3".
    Word {
        #[arg(long)]
        n: usize,
        #[arg(allow_hyphen_values = true)]
        word: String,
        #[arg(long, default_value = "theta")]
        ring: RingChoice,
        #[arg(long, default_value = "json")]
        format: OutputFormat,
    },
    /// Check the braid relations and generator inverses.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "theta")]
        ring: RingChoice,
    },
    /// Decide whether two braid words are equal; exits 1 when they differ.
    Eq {
        #[arg(long)]
        n: usize,
        #[arg(allow_hyphen_values = true)]
        w1: String,
        #[arg(allow_hyphen_values = true)]
        w2: String,
    },
    /// Rank and basis of the module spanned by tuples of weight k.
    Rank {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: u32,
    },
    /// Check nilpotency classes, relations and reductions for layers 2..=rmax.
    TowerCheck {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        rmax: usize,
    },
    /// Lower central series of a preset group.
    Lcs {
        #[arg(long)]
        preset: Preset,
        #[arg(long)]
        depth: usize,
    },
    /// Compatible sequence in the Z/2^(r-1) ⋊ Z tower with growing support.
    Counterexample {
        #[arg(long)]
        rmax: usize,
    },
}

fn run(command: Command) -> Result<Outcome, UsageError> {
    match command {
        Command::Gen { n, i, ring, format } => commands::gen(n, i, ring, format),
        Command::Word { n, word, ring, format } => commands::word(n, &word, ring, format),
        Command::Verify { n, ring } => commands::verify(n, ring),
        Command::Eq { n, w1, w2 } => commands::eq(n, &w1, &w2),
        Command::Rank { n, k } => commands::rank(n, k),
        Command::TowerCheck { n, rmax } => commands::tower_check(n, rmax),
        Command::Lcs { preset, depth } => commands::lcs(preset, depth),
        Command::Counterexample { rmax } => commands::counterexample(rmax),
    }
}

fn main() -> ExitCode {
    // clap exits with status 2 on usage errors
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(outcome) => {
            let mut out = std::io::stdout().lock();
            if out.write_all(outcome.stdout.as_bytes()).and_then(|()| out.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::from(if outcome.passed { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
