//! `locproj`: command-line front end for the projection-formula checks.

mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

/// Exit status: the report matched.
pub const EXIT_MATCH: u8 = 0;
pub const EXIT_ERROR: u8 = 1;
/// The report shows a mismatch or a failed check.
pub const EXIT_MISMATCH: u8 = 2;
pub const EXIT_NO_STABILIZATION: u8 = 3;
/// Bad flags, unreadable or invalid spec, or an unusable grading.
pub const EXIT_CONFIG: u8 = 64;

#[derive(Parser, Debug)]
#[command(name = "locproj", version, about = "Exact checks of projection formulas on ind-Grassmannians")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compare both sides of the projection formula for an example or spec.
    Verify {
        #[command(flatten)]
        run: RunArgs,
        /// Run one extra escalation round after stabilization.
        #[arg(long)]
        confirm: bool,
    },
    /// Euler characteristic of γ = det(U)^m f(U) on a finite Grassmannian.
    Euler {
        #[command(flatten)]
        run: RunArgs,
        /// Univariate weights, e.g. `0,1` for the projective line.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        weights: Option<Vec<i64>>,
        /// Also run both constant-term operators and compare.
        #[arg(long)]
        cross_check: bool,
    },
    /// Exhaustive vanishing-lemma classification on the plane.
    Lemma {
        #[command(flatten)]
        run: RunArgs,
        /// Largest total degree of the lattice window.
        #[arg(long, default_value_t = 4)]
        k: i64,
        /// Build conjugate diagrams with the wrong box convention.
        #[arg(long)]
        inject_transpose: bool,
    },
    /// Check hypotheses (a)-(e) on the example data.
    Conditions {
        #[command(flatten)]
        run: RunArgs,
    },
    /// Theta-sum identity against θ(z²; q), coefficient by coefficient.
    Jtp {
        #[command(flatten)]
        run: RunArgs,
        /// Sum over |k| <= range.
        #[arg(long, default_value_t = 4)]
        range: i64,
    },
}

/// Flags shared by every command.
#[derive(Args, Debug, Clone)]
pub struct RunArgs {
    /// Built-in example: hilbert-plane, cusp-curve, affine-sl2.
    #[arg(long, conflicts_with = "spec")]
    pub example: Option<String>,
    /// JSON spec file (an example spec, or a weight list for `euler`).
    #[arg(long)]
    pub spec: Option<std::path::PathBuf>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub m: Option<i64>,
    /// Symmetric function in the elementary basis, as JSON.
    #[arg(long)]
    pub f: Option<String>,
    /// One-parameter subgroup, e.g. `1,13`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub grading: Option<Vec<i64>>,
    /// Series order N (in q-degrees for affine-sl2).
    #[arg(long, default_value_t = 10)]
    pub order: i64,
    /// Window W for the condition checks.
    #[arg(long, default_value_t = 40)]
    pub window: i64,
    /// Maximum number of escalation rounds.
    #[arg(long, default_value_t = 8)]
    pub budget: usize,
    /// Print JSON instead of text.
    #[arg(long)]
    pub json: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_MATCH };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    locproj::parallel::configure_from_env();
    let result = match cli.command {
        Command::Verify { run, confirm } => commands::verify(&run, confirm),
        Command::Euler { run, weights, cross_check } => commands::euler(&run, weights.as_deref(), cross_check),
        Command::Lemma { run, k, inject_transpose } => commands::lemma(&run, k, inject_transpose),
        Command::Conditions { run } => commands::conditions(&run),
        Command::Jtp { run, range } => commands::jtp(&run, range),
    };
    match result {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}
