//! `hessweave`: construct patchworked polynomials and audit their Hessian
//! curves from the command line.

mod commands;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hessweave::patchwork::Mode;
use hessweave::ratpoly::{parse_rational, Rational};

pub const SCHEMA: &str = "hessweave/1";

/// Exit codes shared by every command.
pub mod exit {
    pub const OK: u8 = 0;
    pub const USAGE: u8 = 2;
    pub const INFEASIBLE: u8 = 3;
    pub const VERIFICATION: u8 = 4;
}

#[derive(Debug, Parser)]
#[command(name = "hessweave", version, about = "Patchworked Hessian curves with exact verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Directory receiving report and SVG files.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write SVG renders into the output directory.
    #[arg(long)]
    pub svg: bool,
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|_| format!("{s:?} is not a rational number num/den"))
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the Hessian of a polynomial JSON file.
    Hessian { input: PathBuf },
    /// Build the layout, heights and Q_t for degree d.
    Construct {
        #[arg(long, required_unless_present = "layout")]
        degree: Option<u32>,
        #[arg(long, default_value = "literal")]
        mode: Mode,
        /// Use a layout JSON file instead of the built-in families.
        #[arg(long)]
        layout: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run every verification stage and write a report.
    Verify {
        #[arg(long)]
        degree: u32,
        #[arg(long, default_value = "literal")]
        mode: Mode,
        /// Fixed deformation parameter instead of the automatic choice.
        #[arg(long, value_parser = rational_arg)]
        t: Option<Rational>,
        #[arg(long, default_value_t = 512)]
        resolution: usize,
        #[arg(long = "window-k", value_parser = rational_arg)]
        window_k: Option<Rational>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Census of the real zero set of a polynomial JSON file.
    Count {
        input: PathBuf,
        #[arg(long = "window-k", value_parser = rational_arg, default_value = "6")]
        window_k: Rational,
        #[arg(long, default_value_t = 512)]
        resolution: usize,
        /// Specializes a t-dependent input first.
        #[arg(long, value_parser = rational_arg)]
        t: Option<Rational>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

/// Everything one invocation needs.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub degree: Option<u32>,
    pub mode: Mode,
    pub t: Option<Rational>,
    pub resolution: usize,
    pub window_k: Option<Rational>,
    pub seed: u64,
    pub output: OutputArgs,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Hessian { input } => commands::hessian(&input),
        Command::Construct { degree, mode, layout, output } => {
            let cfg = RunConfig { degree, mode, t: None, resolution: 512, window_k: None, seed: 0, output };
            commands::construct(&cfg, layout.as_deref())
        }
        Command::Verify { degree, mode, t, resolution, window_k, seed, output } => {
            let cfg = RunConfig { degree: Some(degree), mode, t, resolution, window_k, seed, output };
            verify::run(&cfg)
        }
        Command::Count { input, window_k, resolution, t, output } => {
            let cfg = RunConfig {
                degree: None,
                mode: Mode::Literal,
                t,
                resolution,
                window_k: Some(window_k),
                seed: 0,
                output,
            };
            commands::count(&cfg, &input)
        }
    };
    ExitCode::from(code)
}
