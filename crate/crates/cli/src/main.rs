//! `nutaut`: certify, construct and enumerate nut graphs.
//!
//! Every command prints a `key: value` report on stdout (or to `--out`) and
//! a one-line summary on stderr. Exit status is 0 on success, 1 when a
//! certification fails and 2 on usage or input errors.

mod commands;
mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "nutaut", version, about = "Nut graphs with prescribed automorphism groups")]
struct Cli {
    /// Worker threads for census and search commands (0 = all cores).
    /// Output does not depend on this value.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Certify graphs (nut test with kernel vector, group order), or
    /// re-verify a pipeline report.
    Verify {
        /// Graph file: graph6/sparse6 lines or an edge list.
        #[arg(long = "in", value_name = "FILE", required_unless_present = "report", conflicts_with = "report")]
        input: Option<PathBuf>,
        /// Pipeline report to rebuild and re-check.
        #[arg(long, value_name = "FILE")]
        report: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Automorphism group: order, generators and orbits (1-based).
    Aut {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Quartic pipeline: triangle multiplier plus the order-8 gadget.
    ConstructThm1 {
        /// Connected 4-regular base graph.
        #[arg(long = "H", value_name = "FILE")]
        h: PathBuf,
        /// Each edge h_i t_i^(1,2) gets 4*sigma subdivision vertices.
        #[arg(long, default_value_t = 0)]
        sigma: usize,
        #[command(flatten)]
        common: BuildArgs,
    },
    /// Degree-d pipeline: triangle multiplier plus apex gadgets.
    ConstructThm2 {
        /// Connected (d/2)-regular base graph.
        #[arg(long = "H", value_name = "FILE")]
        h: PathBuf,
        /// Output degree: 8, 12, 16, 20 or 24.
        #[arg(long)]
        degree: usize,
        #[command(flatten)]
        common: BuildArgs,
    },
    /// Triangle multiplier M3(H) of a connected even-regular graph.
    Multiplier {
        #[arg(long = "H", value_name = "FILE")]
        h: PathBuf,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Search for gadgets and append them to a library directory.
    SearchGadgets {
        #[arg(long, value_enum)]
        kind: GadgetChoice,
        /// Output degree for apex gadgets.
        #[arg(long, required_if_eq("kind", "proto"))]
        degree: Option<usize>,
        /// Number of apex gadgets (default: what the pairing schedule needs).
        #[arg(long)]
        count: Option<usize>,
        /// Seed for the randomised apex-gadget search.
        #[arg(long, required_if_eq("kind", "proto"))]
        seed: Option<u64>,
        /// Largest order for the exhaustive order-2 breaker search.
        #[arg(long, default_value_t = 8)]
        max_order: usize,
        /// Library directory to create or extend.
        #[arg(long, value_name = "DIR")]
        out: PathBuf,
    },
    /// Count (and optionally list) graphs of one order.
    Census {
        #[arg(long)]
        n: usize,
        /// all, connected, <d>-regular or nut.
        #[arg(long, default_value = "nut")]
        filter: String,
        /// Also list canonical graph6 codes.
        #[arg(long)]
        witnesses: bool,
        /// Allow order 11 for general and nut censuses (hours).
        #[arg(long)]
        stretch: bool,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Smallest order of a graph with a given property and group.
    Minimal {
        /// Generators in 1-based cycle notation, separated by `;`.
        #[arg(long)]
        gens: String,
        /// Number of points the generators act on.
        #[arg(long)]
        degree: usize,
        /// nut, <d>-regular or <d>-regular-nut.
        #[arg(long, default_value = "nut")]
        predicate: String,
        #[arg(long)]
        max_n: usize,
        /// Allow order 11 for nut scans (hours).
        #[arg(long)]
        stretch: bool,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Order of the permutation group generated by `--gens`.
    GroupOrder {
        #[arg(long)]
        gens: String,
        #[arg(long)]
        degree: usize,
    },
}

#[derive(clap::Args, Debug)]
struct BuildArgs {
    /// Library directory with thm1-q0.g6lib / thm2-d<d>.g6lib (default:
    /// the pinned gadgets).
    #[arg(long, value_name = "DIR")]
    gadget_lib: Option<PathBuf>,
    /// Target group (1-based cycles on |V(H)| points); default Aut(H).
    #[arg(long)]
    gens: Option<String>,
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum GadgetChoice {
    /// Order-2 symmetry breaker for the quartic pipeline.
    Q0,
    /// Apex gadgets for the degree-d pipeline.
    Proto,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let jobs = cli.jobs;
    match nutaut::exec::with_jobs(jobs, move || commands::run(cli.command)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
