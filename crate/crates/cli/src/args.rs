use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use jscc_bounds::oracles::{parse_rational, rational_to_f64, BigRational, DEFAULT_BUDGET, SUITES};

/// Finite-blocklength joint source-channel coding bounds and exact oracles.
#[derive(Debug, Parser)]
#[command(name = "jscc", version)]
pub struct Cli {
    /// Output encoding.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Write records to this file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Print information quantities in bits instead of nats.
    #[arg(long, global = true)]
    pub bits: bool,

    /// Also write a two-column whitespace-separated file for plotting.
    #[arg(long, global = true, value_name = "PATH")]
    pub plot_data: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a scalar function at one or more points.
    Eval(EvalArgs),
    /// Evaluate a bound.
    #[command(subcommand)]
    Bound(BoundCmd),
    /// Scan the analytic inequalities on a grid.
    Verify(VerifyArgs),
    /// Run an exact or randomized oracle.
    #[command(subcommand)]
    Oracle(OracleCmd),
}

pub const EVAL_FNS: [&str; 14] = [
    "h_b",
    "h_b_inv",
    "conv",
    "g",
    "kappa",
    "Phi",
    "beta",
    "phi",
    "nu",
    "psi",
    "vartheta",
    "R",
    "mgl",
    "mgl_deriv",
];

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long = "fn", value_name = "NAME", value_parser = clap::builder::PossibleValuesParser::new(EVAL_FNS))]
    pub func: String,
    /// Points, comma separated.
    #[arg(long, required = true, value_delimiter = ',', value_parser = real, allow_hyphen_values = true)]
    pub x: Vec<f64>,
    /// Second argument of beta, phi and nu; second operand of conv.
    #[arg(long, value_parser = real)]
    pub q: Option<f64>,
    /// Crossover of mgl and mgl_deriv; second operand of conv.
    #[arg(long, value_parser = real)]
    pub delta: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum BoundCmd {
    /// Leading-term lower bound on the excess distortion.
    Lower {
        #[arg(long)]
        n: u64,
        #[arg(long, value_parser = real)]
        rho: f64,
        #[arg(long, value_parser = real)]
        delta: f64,
    },
    /// Lower bound on the distortion under noise of weight `n delta + k`.
    Psi {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: u64,
        #[arg(long, value_parser = real)]
        delta: f64,
        /// Offsets, comma separated.
        #[arg(
            long,
            required = true,
            value_delimiter = ',',
            allow_hyphen_values = true
        )]
        k: Vec<i64>,
    },
    /// Lower bound on the sum of two distortions.
    Sum {
        #[arg(long)]
        n: u64,
        #[arg(long, value_parser = real)]
        rho: f64,
        #[arg(long, value_parser = real)]
        delta: f64,
        #[arg(long, value_parser = real)]
        a: f64,
        /// A positive number or `auto` for the optimizing value.
        #[arg(long, default_value = "auto", value_parser = tau)]
        tau: Tau,
    },
    /// Upper bound on `D2 - D1` for the broadcast pair.
    Gap {
        #[arg(long, value_parser = real)]
        rho: f64,
        #[arg(long, value_parser = real)]
        delta1: f64,
        #[arg(long, value_parser = real)]
        delta2: f64,
        #[arg(long, value_parser = real)]
        d1: f64,
        #[arg(long, value_parser = real)]
        d2: f64,
        #[arg(long, value_parser = real)]
        tau: f64,
        #[arg(long)]
        n: Option<u64>,
    },
    /// Trace the outer bound on the binary broadcast distortion region.
    Region {
        #[arg(long, value_parser = real)]
        rho: f64,
        #[arg(long, value_parser = real)]
        delta1: f64,
        #[arg(long, value_parser = real)]
        delta2: f64,
        #[arg(long, default_value_t = 0.5, value_parser = real)]
        p: f64,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long, value_parser = real)]
        d1_min: f64,
        #[arg(long, value_parser = real)]
        d1_max: f64,
        #[arg(long, value_parser = real)]
        d1_step: f64,
    },
    /// Quadratic-Gaussian source over an AWGN broadcast channel.
    Gaussian {
        #[arg(long, value_parser = real)]
        sigma2: f64,
        #[arg(long, value_parser = real)]
        aux_var: f64,
        #[arg(long, value_parser = real)]
        power: f64,
        #[arg(long, value_parser = real)]
        n1: f64,
        #[arg(long, value_parser = real)]
        n2: f64,
        #[arg(long, value_parser = real)]
        rho: f64,
        #[arg(long, value_parser = real)]
        d1: f64,
    },
    /// Fair binary source over an erasure broadcast channel.
    Erasure {
        #[arg(long, value_parser = real)]
        eps1: f64,
        #[arg(long, value_parser = real)]
        eps2: f64,
        #[arg(long, value_parser = real)]
        rho: f64,
        #[arg(long, value_parser = real)]
        d1: f64,
        #[arg(long, value_parser = real)]
        q: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tau {
    Auto,
    Value(f64),
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Suites, comma separated; all of them by default.
    #[arg(long, value_delimiter = ',', value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
    pub suite: Vec<String>,
    #[arg(long, default_value_t = 1e-3, value_parser = real)]
    pub grid_step: f64,
    #[arg(long, default_value_t = 1e-9, value_parser = real)]
    pub tol: f64,
}

#[derive(Debug, Subcommand)]
pub enum OracleCmd {
    /// Optimal expected distortion over all block codes on a BSC.
    P2p {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, value_parser = rational)]
        delta: BigRational,
        /// Exact rational arithmetic.
        #[arg(long)]
        exact: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
    },
    /// Distortion under noise uniform on a Hamming sphere.
    Spherical {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        weight: u32,
        /// Fixed encoder as comma-separated codewords, e.g. `00,01`.
        #[arg(long)]
        encoder: Option<String>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
    },
    /// Pareto frontier of a two-user spherical broadcast instance.
    Frontier {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        w1: u32,
        #[arg(long)]
        w2: u32,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
    },
    /// Exact asymmetry of the centred binomial.
    Binomial {
        #[arg(long)]
        n: u64,
        #[arg(long, value_parser = rational)]
        delta: BigRational,
        #[arg(long)]
        k_max: u64,
        /// Print exact rationals instead of floats.
        #[arg(long)]
        exact: bool,
    },
    /// Exact coupling distance between two binomial noise weights.
    Coupling {
        #[arg(long)]
        n: u64,
        #[arg(long, value_parser = rational)]
        delta1: BigRational,
        #[arg(long, value_parser = rational)]
        delta2: BigRational,
        /// Print the exact rational instead of a float.
        #[arg(long)]
        exact: bool,
    },
    /// Randomized search for the broadcast channel function.
    GqSearch {
        #[arg(long, value_parser = real)]
        delta1: f64,
        #[arg(long, value_parser = real)]
        delta2: f64,
        #[arg(long, value_parser = real)]
        t: f64,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
    },
}

/// A float, or a rational written `a/b`.
fn real(s: &str) -> Result<f64, String> {
    if let Ok(x) = s.trim().parse::<f64>() {
        return Ok(x);
    }
    parse_rational(s)
        .map(|r| rational_to_f64(&r))
        .map_err(|_| format!("`{s}` is not a number"))
}

fn rational(s: &str) -> Result<BigRational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn tau(s: &str) -> Result<Tau, String> {
    if s == "auto" {
        Ok(Tau::Auto)
    } else {
        real(s).map(Tau::Value)
    }
}
