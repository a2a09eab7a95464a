mod commands;
mod literal;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "usl2",
    version,
    about = "Representations, Hopf links and logarithmic invariants of unrolled quantum sl2"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Order of the root of unity, q = exp(i*pi/r).
    #[arg(long, global = true, default_value_t = 3)]
    pub r: u32,
    /// Tolerance for all numerical assertions.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    /// Truncation order of the epsilon jets.
    #[arg(long, global = true, default_value_t = 6)]
    pub jet_order: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub output: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepKind {
    Relations,
    Dims,
    Hopf,
    Loghopf,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the algebra relations on a module.
    Repcheck {
        /// Module label: V(a), S(i,k), C(k), P(i,k), X(i,l,eps), E(lambda).
        #[arg(long)]
        label: String,
        /// Build the module over epsilon jets, shifting continuous parameters by epsilon.
        #[arg(long)]
        jet: bool,
        /// Include the generator matrices in the output.
        #[arg(long)]
        dump: bool,
    },
    /// Open Hopf link of a closed color around an open strand.
    Hopf {
        #[arg(long)]
        closed: String,
        #[arg(long)]
        open: String,
    },
    /// Hopf link around P(j,l) through the deformation, against the closed forms.
    Loghopf {
        #[arg(long = "Z")]
        z: String,
        #[arg(long)]
        j: u32,
        #[arg(long, allow_hyphen_values = true)]
        l: i64,
    },
    /// Evaluate a tangle expression.
    Tangle {
        /// For example "open P(1,0) | hopf S(1,0)".
        expr: String,
    },
    /// Regularized quantum dimension of a singlet module.
    Qdim {
        /// M(t,s) or F(lambda).
        #[arg(long)]
        label: String,
        #[arg(long, allow_hyphen_values = true)]
        eps: String,
    },
    /// Formal fusion product of two singlet modules.
    Fusion {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        /// Also test multiplicativity of qdim at this continuous-regime epsilon.
        #[arg(long, allow_hyphen_values = true)]
        eps: Option<String>,
    },
    /// Compare qdim of the image of a module with the Hopf trace ratio.
    Compare {
        #[arg(long)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        eps: String,
        /// Color of the open strand; chosen from the regime when omitted.
        #[arg(long)]
        color: Option<String>,
    },
    /// Run a check over a range of r in parallel.
    Sweep {
        #[arg(long, value_enum)]
        kind: SweepKind,
        /// Inclusive range such as 2..5 or a single value.
        #[arg(long, default_value = "2..5")]
        r_range: String,
    },
    /// Select the pivot and coproduct conventions that reproduce the Hopf link closed forms.
    Calibrate,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(report) => {
            report.emit(cli.global.output == Format::Csv);
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
