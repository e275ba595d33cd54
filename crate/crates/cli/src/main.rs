mod commands;
mod spec;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Peano-kernel error constants and certified integration for quadrature rules.
#[derive(Parser)]
#[command(name = "peanoq", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
pub struct RuleArgs {
    /// Catalogue rule name (see `peanoq catalog`)
    pub rule: Option<String>,
    /// Rule parameter as name=value; values accept p/q, decimals and sqrt(...)
    #[arg(short = 'p', long = "param", value_name = "NAME=VALUE")]
    pub params: Vec<String>,
    /// Read the rule from a JSON file instead
    #[arg(long, value_name = "PATH")]
    pub rule_file: Option<PathBuf>,
}

#[derive(Args, Clone)]
pub struct OutputArgs {
    /// Significant digits for decimal output
    #[arg(long, default_value_t = 17)]
    pub digits: usize,
    /// Write to this file instead of stdout (relative to PEANOQ_OUT_DIR if set)
    #[arg(long, short = 'o', value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Exit with status 3 when a numerical ambiguity is flagged
    #[arg(long)]
    pub strict: bool,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// List the rule catalogue
    Catalog {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Degree of exactness and every constant M_r, r <= d
    Analyze {
        #[command(flatten)]
        rule: RuleArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Largest monomial degree tested
        #[arg(long, default_value_t = 20)]
        k_max: usize,
        /// Certification tolerance for M_r
        #[arg(long, default_value = "1e-14")]
        tol: String,
        /// Also write the rule as JSON
        #[arg(long, value_name = "PATH")]
        rule_out: Option<PathBuf>,
    },
    /// Sample the kernel K_r on a uniform grid
    Kernel {
        #[command(flatten)]
        rule: RuleArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long = "r")]
        order: usize,
        #[arg(long, default_value_t = 2001)]
        grid: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Evaluate x -> M_r(x) over a one-parameter family
    Scan {
        /// Family name; fix every parameter except x with -p
        rule: String,
        #[arg(short = 'p', long = "param", value_name = "NAME=VALUE")]
        params: Vec<String>,
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long = "r")]
        order: usize,
        #[arg(long, default_value_t = 201)]
        grid: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Minimise x -> M_r(x) over a one-parameter family
    Minimize {
        rule: String,
        #[arg(short = 'p', long = "param", value_name = "NAME=VALUE")]
        params: Vec<String>,
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long = "r")]
        order: usize,
        /// Location tolerance
        #[arg(long, default_value = "1e-12")]
        tol: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Composite integration with an a-priori error certificate
    Integrate {
        #[command(flatten)]
        rule: RuleArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// exp, sin, cos or poly:c0,c1,...
        #[arg(long = "f")]
        integrand: String,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        /// Number of equal panels
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long = "r")]
        order: usize,
        /// Asserted sup-norm of f^(r+1) on [a, b]
        #[arg(long)]
        deriv_sup: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check the Peano identity on test polynomials
    Verify {
        #[command(flatten)]
        rule: RuleArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Only this order (default: every r <= d)
        #[arg(long = "r")]
        order: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

fn exit_code(err: &anyhow::Error) -> u8 {
    use peanoq_core::Error as E;
    if err.downcast_ref::<spec::InvalidSpec>().is_some() {
        return 2;
    }
    match err.downcast_ref::<E>() {
        Some(
            E::UnknownRule(_)
            | E::UnknownParameter { .. }
            | E::MissingParameter { .. }
            | E::ParamOutOfDomain { .. }
            | E::NoFreeParameter(_)
            | E::InvalidRule(_)
            | E::Format(_)
            | E::Numeric(peanoq_core::numeric::NumericError::Parse(_)),
        ) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (strict, result) = match cli.command {
        Command::Catalog { format } => (false, commands::catalog(format)),
        Command::Analyze { rule, output, format, k_max, tol, rule_out } => {
            (output.strict, commands::analyze(&rule, &output, format, k_max, &tol, rule_out.as_deref()))
        }
        Command::Kernel { rule, output, order, grid, format } => {
            (output.strict, commands::kernel(&rule, &output, order, grid, format))
        }
        Command::Scan { rule, params, output, order, grid, format } => {
            (output.strict, commands::scan(&rule, &params, &output, order, grid, format))
        }
        Command::Minimize { rule, params, output, order, tol, format } => {
            (output.strict, commands::minimize(&rule, &params, &output, order, &tol, format))
        }
        Command::Integrate { rule, output, integrand, a, b, n, order, deriv_sup, format } => {
            let job = commands::IntegrateJob { integrand, a, b, n, order, deriv_sup };
            (output.strict, commands::integrate(&rule, &output, &job, format))
        }
        Command::Verify { rule, output, order, format } => (output.strict, commands::verify(&rule, &output, order, format)),
    };
    match result {
        Ok(status) if status.ambiguous && strict => {
            eprintln!("peanoq: numerical ambiguity flagged (--strict)");
            ExitCode::from(3)
        }
        Ok(status) if status.failed => ExitCode::from(1),
        Ok(_) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("peanoq: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
