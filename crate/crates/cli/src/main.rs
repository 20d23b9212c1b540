//! `cartan`: exterior calculus on Lie algebroids from the command line.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use cartan_cli::commands::{Command, Context, EXIT_FAILED, EXIT_USAGE};
use cartan_cli::model;

#[derive(Parser)]
#[command(
    name = "cartan",
    version,
    about = "Exact exterior calculus on Lie algebroids"
)]
struct Cli {
    /// Model file with the algebroid, Poisson structure and named elements
    #[arg(long, global = true, value_name = "PATH")]
    model: Option<PathBuf>,

    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,

    /// Skip the axiom and Poisson checks that guard derived operations
    #[arg(long, global = true)]
    force: bool,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Verify the anchor and Jacobi axioms of the algebroid
    Check,
    /// Bracket of two sections
    Bracket {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// Exterior derivative of a form
    D {
        #[arg(allow_hyphen_values = true)]
        eta: String,
    },
    /// Lie derivative of a form or multivector along a multivector
    Lie {
        #[arg(allow_hyphen_values = true)]
        p: String,
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// Interior product i(P) of a form
    Interior {
        #[arg(allow_hyphen_values = true)]
        p: String,
        #[arg(allow_hyphen_values = true)]
        eta: String,
    },
    /// Pairing of a form with a multivector
    Pair {
        #[arg(allow_hyphen_values = true)]
        eta: String,
        #[arg(allow_hyphen_values = true)]
        p: String,
    },
    /// Wedge product of two forms or two multivectors
    Wedge {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// Schouten–Nijenhuis bracket of two multivectors
    Schouten {
        #[arg(allow_hyphen_values = true)]
        p: String,
        #[arg(allow_hyphen_values = true)]
        q: String,
    },
    /// Check that the [poisson] bivector is Poisson
    PoissonCheck,
    /// Push a form forward by the Poisson bivector
    Sharp {
        #[arg(allow_hyphen_values = true)]
        eta: String,
    },
    /// Cotangent algebroid of the Poisson structure
    Cotangent,
    /// Koszul bracket of two forms
    Koszul {
        #[arg(allow_hyphen_values = true)]
        eta: String,
        #[arg(allow_hyphen_values = true)]
        zeta: String,
    },
    /// Lichnerowicz differential of a multivector
    Lichnerowicz {
        #[arg(allow_hyphen_values = true)]
        p: String,
    },
    /// Linear Poisson structure on the dual bundle
    Dual,
    /// Check the dual structure: Poisson, homogeneous, transpose anchor
    DualVerify,
    /// Rebuild the algebroid from its exterior derivative
    Reconstruct,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Command {
        match c {
            Cmd::Check => Command::Check,
            Cmd::Bracket { x, y } => Command::Bracket(x, y),
            Cmd::D { eta } => Command::D(eta),
            Cmd::Lie { p, x } => Command::Lie(p, x),
            Cmd::Interior { p, eta } => Command::Interior(p, eta),
            Cmd::Pair { eta, p } => Command::Pair(eta, p),
            Cmd::Wedge { x, y } => Command::Wedge(x, y),
            Cmd::Schouten { p, q } => Command::Schouten(p, q),
            Cmd::PoissonCheck => Command::PoissonCheck,
            Cmd::Sharp { eta } => Command::Sharp(eta),
            Cmd::Cotangent => Command::Cotangent,
            Cmd::Koszul { eta, zeta } => Command::Koszul(eta, zeta),
            Cmd::Lichnerowicz { p } => Command::Lichnerowicz(p),
            Cmd::Dual => Command::Dual,
            Cmd::DualVerify => Command::DualVerify,
            Cmd::Reconstruct => Command::Reconstruct,
        }
    }
}

fn fail(code: u8, message: &str) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Some(path) = cli.model else {
        return fail(EXIT_USAGE, "missing --model <PATH>");
    };
    let model = match model::load(&path) {
        Ok(m) => m,
        Err(e) => return fail(EXIT_USAGE, &e),
    };
    let outcome = match Context::new(&model, cli.force).run(&cli.command.into()) {
        Ok(o) => o,
        Err(f) => return fail(f.code, &f.message),
    };
    let text = if cli.json {
        format!(
            "{}\n",
            serde_json::to_string_pretty(&outcome.report.json).expect("JSON values serialize")
        )
    } else {
        outcome.report.text
    };
    let mut stdout = std::io::stdout().lock();
    if stdout
        .write_all(text.as_bytes())
        .and_then(|_| stdout.flush())
        .is_err()
    {
        return ExitCode::from(EXIT_USAGE);
    }
    if outcome.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAILED)
    }
}
