//! `thh-engine`: run the verification scenarios and the underlying
//! computations from the command line.
//!
//! Exit status is 0 when every checked claim holds, 1 when one fails and 2
//! on a usage error or invalid input.

mod commands;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thh_engine::EngineError;

use output::Format;

#[derive(Parser)]
#[command(name = "thh-engine", version, about = "Exact F_p verification of V(1)_*THH(K(F_q)) algebra")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
pub struct Common {
    /// The prime p ≥ 5.
    #[arg(long, default_value_t = 5, global = true)]
    pub p: u32,
    /// The prime power q, required by K(F_q)-dependent inputs.
    #[arg(long, global = true)]
    pub q: Option<u64>,
    /// Degree bound for all computations.
    #[arg(long, env = "THH_ENGINE_MAX_DEGREE", default_value_t = 60, global = true)]
    pub max_degree: u32,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub output: Format,
}

#[derive(Args, Clone)]
pub struct Source {
    /// A named presentation; see `thh-engine poincare --list`.
    #[arg(long)]
    pub preset: Option<String>,
    /// A presentation in JSON.
    #[arg(long)]
    pub input_file: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum TorMethod {
    Resolution,
    Bar,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum ComoduleKind {
    /// A_* coacting on itself.
    DualSteenrod,
    /// The case-1 V(1)-homology of THH(K).
    V1Thh,
    /// (HF_p)_*K for the case of (q, p); cases 1 to 3.
    Hk,
}

#[derive(Subcommand)]
enum Command {
    /// Case parameters (r, v) and the case number of (q, p).
    Classify,
    /// Poincaré series of a presentation.
    Poincare {
        #[command(flatten)]
        source: Source,
        /// List the presets instead.
        #[arg(long)]
        list: bool,
    },
    /// Hochschild homology HH_*(A) by the normalized Hochschild complex.
    Hh {
        #[command(flatten)]
        source: Source,
    },
    /// Tor^A(F_p, F_p), bigraded.
    Tor {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value_t = TorMethod::Resolution)]
        method: TorMethod,
    },
    /// A free resolution of F_p with its d∘d and exactness checks.
    Resolution {
        #[command(flatten)]
        source: Source,
        /// The explicit case-4 resolution over E(x) ⊗ P_k(y)/(xy^{k−1}).
        #[arg(long)]
        explicit: bool,
    },
    /// Comodule primitives degree by degree.
    Primitives {
        #[arg(long, value_enum, default_value_t = ComoduleKind::V1Thh)]
        comodule: ComoduleKind,
        /// The free coefficient a in the coaction on (HF_p)_*K.
        #[arg(long, default_value_t = 0)]
        a: u32,
    },
    /// Run a spectral sequence from a page description in JSON.
    Page {
        /// A page description: presentation or preset, start page,
        /// convention and differentials.
        input_file: PathBuf,
        /// Overrides the presentation in the file.
        #[arg(long)]
        preset: Option<String>,
    },
    /// Run one verification scenario.
    Scenario {
        /// Scenario id; omit to list them.
        #[arg(long)]
        id: Option<String>,
    },
    /// Every applicable scenario over the four reference pairs.
    Suite,
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<EngineError>() {
        Some(EngineError::NotSquareZero(_) | EngineError::IllDefined(_) | EngineError::Bidegree(_)) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let Cli { common, command } = Cli::parse();
    let result = match command {
        Command::Classify => commands::classify(&common),
        Command::Poincare { source, list } => commands::poincare(&common, &source, list),
        Command::Hh { source } => commands::hh(&common, &source),
        Command::Tor { source, method } => commands::tor(&common, &source, method),
        Command::Resolution { source, explicit } => commands::resolution(&common, &source, explicit),
        Command::Primitives { comodule, a } => commands::primitives(&common, comodule, a),
        Command::Page { input_file, preset } => commands::page(&common, &input_file, preset.as_deref()),
        Command::Scenario { id } => commands::scenario(&common, id.as_deref()),
        Command::Suite => commands::suite(&common),
    };
    match result {
        Ok(out) => {
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let _ = writeln!(std::io::stdout().lock(), "{}", out.render(common.output));
            if out.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
