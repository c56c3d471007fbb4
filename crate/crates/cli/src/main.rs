//! `qwitt`: batch checks for the q-deformed Witt Hom-Lie superalgebra.
//!
//! Exit codes: 0 success, 2 a mathematical check failed, 3 configuration
//! error, 4 I/O or parse error. Errors are also written to stderr as a JSON
//! record `{"error", "message", "exit_code"}`.

mod commands;
mod config;
mod error;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{CommonArgs, Defaults, RunConfig};
use error::{CliError, CliResult};

#[derive(Parser)]
#[command(name = "qwitt", version, about = "Cohomology and deformation checks for the q-deformed Witt superalgebra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Hom-Jacobi identity and σ-derivation property on the window.
    VerifyAlgebra {
        #[command(flatten)]
        common: CommonArgs,
        /// Corrupt one structure constant to exercise failure reporting.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// δ²∘δ¹ on random 1-cochains in every selected sector.
    VerifyComplex {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Core second-cohomology dimension for every selected sector.
    H2Sweep {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Reduce a 2-cocycle to a coboundary on the core and emit a certificate.
    Reduce {
        /// Cochain file (text or JSON).
        input: PathBuf,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// First-order cocycle check and trivialization of a truncated deformation.
    DeformCheck {
        /// Deformation file (text or JSON).
        input: PathBuf,
        #[command(flatten)]
        common: CommonArgs,
    },
}

fn install_threads(cfg: &RunConfig) -> CliResult<()> {
    if let Some(n) = cfg.threads {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| CliError::Config(e.to_string()))?;
    }
    Ok(())
}

fn run(cli: Cli) -> CliResult<(commands::Outcome, Option<PathBuf>)> {
    let (cfg, outcome) = match cli.command {
        Command::VerifyAlgebra { common, inject_fault } => {
            let cfg = RunConfig::resolve("verify-algebra", &common, Defaults { window: 10, core: None }, None)?;
            install_threads(&cfg)?;
            let o = commands::verify_algebra(&cfg, inject_fault)?;
            (cfg, o)
        }
        Command::VerifyComplex { common } => {
            let cfg = RunConfig::resolve("verify-complex", &common, Defaults { window: 8, core: None }, None)?;
            install_threads(&cfg)?;
            let o = commands::verify_complex(&cfg)?;
            (cfg, o)
        }
        Command::H2Sweep { common } => {
            let cfg = RunConfig::resolve("h2-sweep", &common, Defaults { window: 12, core: None }, None)?;
            install_threads(&cfg)?;
            let o = commands::h2_sweep(&cfg)?;
            (cfg, o)
        }
        Command::Reduce { input, common } => {
            let c = commands::read_cochain(&input)?;
            let cfg = RunConfig::resolve("reduce", &common, Defaults { window: c.bound, core: None }, Some(input))?;
            install_threads(&cfg)?;
            let o = commands::reduce_cmd(&cfg, &c)?;
            (cfg, o)
        }
        Command::DeformCheck { input, common } => {
            let d = commands::read_deformation(&input)?;
            let cfg = RunConfig::resolve("deform-check", &common, Defaults { window: d.window.n(), core: None }, Some(input))?;
            install_threads(&cfg)?;
            let o = commands::deform_check(&cfg, &d)?;
            (cfg, o)
        }
    };
    Ok((outcome, cfg.out))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(cli).and_then(|(o, out)| {
        match &out {
            Some(p) => std::fs::write(p, &o.text).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?,
            None => std::io::stdout().write_all(o.text.as_bytes())?,
        }
        eprintln!("{}", o.summary);
        Ok(o.ok)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
