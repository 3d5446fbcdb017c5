//! `mtau`: generate metrized graph families, compute tau constants and
//! Kirchhoff indices, reproduce the published tables and run the invariant
//! suites.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error.

mod compute;
mod error;
mod output;
mod source;
mod table;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::compute::{Method, RouteOptions};
use crate::error::CliError;
use crate::source::GraphSource;

#[derive(Parser)]
#[command(name = "mtau", version, about = "Tau constants of metrized graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a family member as a CSV edge list.
    Generate {
        #[command(flatten)]
        source: GraphSource,
        /// Scale to total length 1 before writing.
        #[arg(long)]
        normalized: bool,
        /// Destination file; standard output when omitted.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Tau constant of a family member or an edge-list file.
    Tau {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long)]
        normalized: bool,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
        #[command(flatten)]
        route: RouteOptions,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Kirchhoff index `½Σ r(p,q)` over the vertices of the input.
    Kirchhoff {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long)]
        normalized: bool,
        #[command(flatten)]
        route: RouteOptions,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Laplacian eigenvalues; hexagonal tori are compared with the closed form.
    Spectrum {
        #[command(flatten)]
        source: GraphSource,
        #[command(flatten)]
        route: RouteOptions,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Grid of normalized tau values in the published layout.
    Table(table::TableArgs),
    /// Run invariant suites; exits with status 1 on any failure.
    Verify(verify::VerifyArgs),
}

#[derive(Args, Clone)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Destination file; standard output when omitted.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Generate {
            source,
            normalized,
            output,
        } => {
            let (label, g) = source.resolve()?;
            let g = if normalized { g.normalize()? } else { g };
            let header = format!("{label} v={} e={} genus={}", g.vertex_count(), g.edge_count(), g.genus());
            match &output {
                Some(path) => metrized_tau::graph::write_edge_list_file(&g, Some(&header), path)?,
                None => metrized_tau::graph::write_edge_list(&g, Some(&header), std::io::stdout().lock())?,
            }
            eprintln!("{header}");
            Ok(())
        }
        Command::Tau {
            source,
            normalized,
            method,
            route,
            out,
        } => {
            let result = compute::tau(&source, normalized, method, &route)?;
            output::emit(
                &out,
                &output::TauReport {
                    graph: source.label(),
                    result,
                },
            )
        }
        Command::Kirchhoff {
            source,
            normalized,
            route,
            out,
        } => {
            let report = compute::kirchhoff(&source, normalized, &route)?;
            output::emit(&out, &report)
        }
        Command::Spectrum { source, route, out } => {
            let report = compute::spectrum(&source, &route)?;
            output::emit(&out, &report)
        }
        Command::Table(args) => table::run(&args),
        Command::Verify(args) => verify::run(&args),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .format_timestamp(None)
        .init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
