//! `xlag`: construct exceptional Laguerre polynomials, decide admissibility
//! and run the exact and numerical checks from the command line.

mod commands;
mod report;

use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::{Report, EXIT_USAGE};
use xlag::{Error, PairF};

#[derive(Parser)]
#[command(
    name = "xlag",
    version,
    about = "Exceptional Laguerre polynomials: construction, admissibility, orthogonality checks"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Omit the timestamp field so identical runs give identical bytes.
    #[arg(long, global = true)]
    no_timestamp: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// `α` and the pair. The pair is read from stdin when `--pair` is absent.
#[derive(Args, Clone)]
pub struct FamilyArgs {
    /// Rational parameter, e.g. `1/2`, `-3/4`, `2`.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: String,
    /// Pair as JSON, e.g. '{"f1":[1,2],"f2":[3]}'.
    #[arg(long)]
    pub pair: Option<String>,
}

#[derive(Args, Clone)]
pub struct IndexArgs {
    /// Explicit indices (repeat the flag or separate with commas).
    #[arg(long = "n", value_delimiter = ',')]
    pub n: Vec<usize>,
    /// Use the first COUNT indices instead.
    #[arg(long)]
    pub count: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Coefficients of L_n^{α;F} for n in σ_F.
    Construct {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        idx: IndexArgs,
    },
    /// Ω_F^α and its number of roots in [0, ∞).
    Omega {
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// Coefficients of the second-order operator D_F.
    Operator {
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// Decide admissibility of (c, F) by the sign scan and by segment parity.
    Admissible {
        /// The rational c.
        #[arg(long = "c", allow_hyphen_values = true)]
        c: String,
        /// Pair as JSON; read from stdin when absent.
        #[arg(long)]
        pair: Option<String>,
    },
    /// Exact check of D_F(L_n^{α;F}) = -n L_n^{α;F}.
    VerifyEigen {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        idx: IndexArgs,
    },
    /// Exact check of the Darboux factorization and ladder relations.
    VerifyLadder {
        #[command(flatten)]
        family: FamilyArgs,
        /// Component whose largest element is removed (1 or 2).
        #[arg(long)]
        component: u8,
        #[command(flatten)]
        idx: IndexArgs,
    },
    /// Real-axis Gram matrix by Gauss-Laguerre quadrature.
    VerifyOrthogonality {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        idx: IndexArgs,
        /// Acceptance threshold on normalized errors.
        #[arg(long, env = "XLAG_TOL", default_value_t = 1e-8)]
        tol: f64,
        /// Relative stopping tolerance of the quadrature.
        #[arg(long, default_value_t = 1e-11)]
        quad_tol: f64,
    },
    /// Gram matrix along the contour Λ_r.
    VerifyContour {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        idx: IndexArgs,
        /// Radius r of Λ_r; chosen automatically when absent.
        #[arg(long)]
        radius: Option<f64>,
        /// Truncation of the rays at Re z = R.
        #[arg(long)]
        truncation: Option<f64>,
        /// Acceptance threshold on normalized errors.
        #[arg(long, env = "XLAG_CONTOUR_TOL", default_value_t = 1e-6)]
        tol: f64,
    },
    /// Complex roots of Ω_F^α and its root count on [0, ∞).
    Roots {
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// The three worked segment examples with c = -17/4.
    ReproduceAppendix,
}

fn read_pair(arg: Option<&str>) -> xlag::Result<PairF> {
    let raw = match arg {
        Some(s) => s.to_string(),
        None => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Error::Parse(format!("reading pair from stdin: {e}")))?;
            s
        }
    };
    if raw.trim().is_empty() {
        return Err(Error::Parameter {
            name: "pair",
            reason: "no --pair given and stdin is empty".into(),
        });
    }
    serde_json::from_str(raw.trim()).map_err(|e| Error::Parameter {
        name: "pair",
        reason: e.to_string(),
    })
}

fn dispatch(cmd: Command) -> (&'static str, xlag::Result<Report>) {
    use commands as c;
    match cmd {
        Command::Construct { family, idx } => ("construct", c::construct(&family, &idx)),
        Command::Omega { family } => ("omega", c::omega(&family)),
        Command::Operator { family } => ("operator", c::operator(&family)),
        Command::Admissible { c: cv, pair } => ("admissible", c::admissible(&cv, pair.as_deref())),
        Command::VerifyEigen { family, idx } => ("verify-eigen", c::verify_eigen(&family, &idx)),
        Command::VerifyLadder {
            family,
            component,
            idx,
        } => ("verify-ladder", c::verify_ladder(&family, component, &idx)),
        Command::VerifyOrthogonality {
            family,
            idx,
            tol,
            quad_tol,
        } => (
            "verify-orthogonality",
            c::verify_orthogonality(&family, &idx, tol, quad_tol),
        ),
        Command::VerifyContour {
            family,
            idx,
            radius,
            truncation,
            tol,
        } => (
            "verify-contour",
            c::verify_contour(&family, &idx, radius, truncation, tol),
        ),
        Command::Roots { family } => ("roots", c::roots(&family)),
        Command::ReproduceAppendix => ("reproduce-appendix", Ok(c::reproduce_appendix())),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, result) = dispatch(cli.command);
    let report = result.unwrap_or_else(|e| Report::from_error(name, &e));
    match cli.format {
        Format::Json => println!("{}", report.render_json(!cli.no_timestamp)),
        Format::Text => println!("{}", report.render_text()),
    }
    if report.exit == EXIT_USAGE {
        if let Some(e) = report.body.get("error") {
            eprintln!("xlag {name}: {}", e["message"].as_str().unwrap_or(""));
        }
    }
    ExitCode::from(report.exit as u8)
}
