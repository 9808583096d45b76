use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use gfix::cli::{run, CommandKind, RunConfig};

#[derive(Parser)]
#[command(name = "gfix", version, about = "Fixed-point certification toolkit for G-metric type spaces")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args, Clone)]
struct Common {
    /// Space description file (JSON).
    #[arg(long)]
    space: PathBuf,
    /// Self-map or map-family description file (JSON).
    #[arg(long)]
    map: Option<PathBuf>,
    /// Coefficient sequence file (JSON).
    #[arg(long)]
    coeffs: Option<PathBuf>,
    /// Tensor bundle file (JSON).
    #[arg(long)]
    tensors: Option<PathBuf>,
    /// Start point (label on finite spaces, number on intervals).
    #[arg(long)]
    x0: Option<String>,
    /// Stopping tolerance.
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    /// Iteration budget.
    #[arg(long, default_value_t = 1000)]
    max_iter: usize,
    /// Coefficient / tensor horizon.
    #[arg(long, default_value_t = 16)]
    horizon: usize,
    /// N for the per-iterate conditions.
    #[arg(long, default_value_t = 8)]
    n_check: usize,
    /// Index bound for tensor conditions.
    #[arg(long, default_value_t = 4)]
    idx_n: usize,
    /// Phi degree s in (0, 1].
    #[arg(long)]
    phi_s: Option<f64>,
    /// Phi scale c > 0.
    #[arg(long)]
    phi_c: Option<f64>,
    /// Write the report to this path as well as stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the ternary distance axioms of a space.
    Validate {
        #[command(flatten)]
        common: Common,
        /// Maximum chain length for the polygon-inequality check.
        #[arg(long)]
        cutoff: Option<usize>,
        /// Grid cap when validating an analytic space.
        #[arg(long)]
        grid: Option<usize>,
    },
    /// Chainability verdicts, minimal thresholds and witness chains.
    Chains {
        #[command(flatten)]
        common: Common,
        /// Link threshold; defaults to the minimal chainability threshold.
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long)]
        grid: Option<usize>,
    },
    /// Run one analysis check and report its verdict.
    Analyze {
        #[command(flatten)]
        common: Common,
        /// One of: lipschitz, iterated-lipschitz, series, local-contractive,
        /// min-lambda, sequential, phi, lambda-seq, product-series,
        /// common-coeffs, cauchy.
        #[arg(long)]
        check: String,
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long)]
        lambda: Option<f64>,
        /// Comma-separated epsilon grid for the Cauchy check.
        #[arg(long)]
        eps_grid: Option<String>,
    },
    /// Assemble a theorem certificate.
    Certify {
        #[command(flatten)]
        common: Common,
        /// Theorem identifier, e.g. ULC_CHAINABLE or SEQ_AN.
        #[arg(long)]
        theorem: String,
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long)]
        lambda: Option<f64>,
        /// Replace series convergence by the relaxed vanishing hypothesis.
        #[arg(long, default_value_t = false)]
        relaxed: bool,
    },
    /// Run fixed-point iteration and report the trace.
    Solve {
        #[command(flatten)]
        common: Common,
    },
    /// Exhaustive fixed-point enumeration on a finite space.
    Oracle {
        #[command(flatten)]
        common: Common,
    },
}

fn base_config(kind: CommandKind, common: &Common) -> RunConfig {
    let mut config = RunConfig::new(kind, &common.space);
    config.map = common.map.clone();
    config.coeffs = common.coeffs.clone();
    config.tensors = common.tensors.clone();
    config.x0 = common.x0.clone();
    config.tol = common.tol;
    config.max_iter = common.max_iter;
    config.horizon = common.horizon;
    config.n_check = common.n_check;
    config.idx_n = common.idx_n;
    config.phi_s = common.phi_s;
    config.phi_c = common.phi_c;
    config.out = common.out.clone();
    config
}

fn into_config(cmd: Cmd) -> Result<RunConfig, String> {
    Ok(match cmd {
        Cmd::Validate { common, cutoff, grid } => {
            let mut c = base_config(CommandKind::Validate, &common);
            c.cutoff = cutoff;
            c.grid = grid;
            c
        }
        Cmd::Chains { common, eps, grid } => {
            let mut c = base_config(CommandKind::Chains, &common);
            c.eps = eps;
            c.grid = grid;
            c
        }
        Cmd::Analyze {
            common,
            check,
            eps,
            lambda,
            eps_grid,
        } => {
            let mut c = base_config(CommandKind::Analyze, &common);
            c.check = Some(check);
            c.eps = eps;
            c.lambda = lambda;
            if let Some(grid) = eps_grid {
                let parsed: Result<Vec<f64>, _> =
                    grid.split(',').map(|t| t.trim().parse::<f64>()).collect();
                c.eps_grid = parsed.map_err(|e| format!("bad --eps-grid: {e}"))?;
            }
            c
        }
        Cmd::Certify {
            common,
            theorem,
            eps,
            lambda,
            relaxed,
        } => {
            let mut c = base_config(CommandKind::Certify, &common);
            c.theorem = Some(theorem);
            c.eps = eps;
            c.lambda = lambda;
            c.relaxed = relaxed;
            c
        }
        Cmd::Solve { common } => base_config(CommandKind::Solve, &common),
        Cmd::Oracle { common } => base_config(CommandKind::Oracle, &common),
    })
}

fn main() {
    let cli = Cli::parse();
    let config = match into_config(cli.command) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            std::process::exit(1);
        }
    };
    match run(&config) {
        Ok(outcome) => {
            match serde_json::to_string_pretty(&outcome.report) {
                Ok(text) => println!("{text}"),
                Err(e) => {
                    eprintln!("error: failed to serialize report: {e}");
                    std::process::exit(1);
                }
            }
            std::process::exit(outcome.code);
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(1);
        }
    }
}
