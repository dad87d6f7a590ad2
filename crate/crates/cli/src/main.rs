//! `starq`: command-line front end for exact star-product computations.
//!
//! Results go to stdout, diagnostics to stderr. Exit codes: 0 success,
//! 1 computation error, 2 usage error, 3 verification failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;

#[derive(Parser, Debug)]
#[command(name = "starq", version, about = "Exact formal star products, orderings, Gutt products and BCH")]
pub struct Cli {
    /// JSON session file (generators, truncation, lambda or lie, z, seminorm).
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    pub json: bool,
    /// Truncation order N in h (overrides the config).
    #[arg(long, global = true, value_name = "N")]
    pub truncation: Option<u32>,
    /// Seed for random sweeps.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Built-in Lie algebra for `gutt`, `bch` and `poisson`.
    #[arg(long, global = true, value_enum)]
    pub algebra: Option<Algebra>,
    /// Real value substituted for h in numeric evaluations.
    #[arg(long = "hbar-value", global = true, value_name = "H")]
    pub hbar_value: Option<f64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algebra {
    /// Heisenberg algebra, [X, Y] = Z.
    H3,
    /// sl(2), [H, E] = 2E, [H, F] = -2F, [E, F] = H.
    Sl2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Ordering {
    Std,
    Weyl,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// f ⋆ g for the session's constant form.
    Star { f: String, g: String },
    /// f ⋆ g - g ⋆ f.
    Commutator { f: String, g: String },
    /// Poisson bracket: constant form, or KKS for a Lie algebra.
    Poisson { f: String, g: String },
    /// Gutt product on the dual of a Lie algebra.
    Gutt { f: String, g: String },
    /// BCH(hX, hY) through h^order.
    Bch {
        x: String,
        y: String,
        #[arg(long, default_value_t = 4)]
        order: u32,
    },
    /// T⁻¹(T f ⋆ T g) with T = exp(z Δ_S); equals f ⋆ g for Λ - S.
    Equiv {
        /// JSON file holding the symmetric form S ({"matrix": [...]}).
        #[arg(long = "sym", value_name = "S-FILE")]
        sym: PathBuf,
        f: String,
        g: String,
    },
    /// Differential operator representing f on the position variables.
    Rep {
        #[arg(long, value_enum, default_value = "std")]
        ordering: Ordering,
        f: String,
    },
    /// Formal adjoint of an operator written as a symbol in q.., Dq...
    Adjoint { op: String },
    /// p_R seminorm of f, with h evaluated at --hbar-value.
    Seminorm {
        f: String,
        #[arg(long = "R", value_name = "R")]
        r: Option<f64>,
    },
    /// p_R partial sums of exp(alpha v) and a convergence verdict.
    Expcheck {
        /// Comma-separated real coefficients of v.
        #[arg(long, allow_hyphen_values = true)]
        v: String,
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long = "R", value_name = "R")]
        r: Option<f64>,
        /// Largest cutoff K considered.
        #[arg(long = "k-max", default_value_t = 200)]
        k_max: u32,
    },
    /// Defect of e^v ⋆ e^w = e^{zΛ(v,w)} e^{v+w} on a window.
    Weylrel {
        /// Comma-separated coefficients of v (scalars such as 1/2 or i).
        #[arg(long, allow_hyphen_values = true)]
        v: String,
        #[arg(long, allow_hyphen_values = true)]
        w: String,
        #[arg(long, default_value_t = 6)]
        degree: u32,
        #[arg(long, default_value_t = 4)]
        orders: u32,
    },
    /// Run a verification suite (or `all`).
    Verify { suite: String },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match commands::run(&cli) {
        Ok(out) => {
            for w in &out.warnings {
                eprintln!("warning: {w}");
            }
            print!("{}", out.stdout);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
