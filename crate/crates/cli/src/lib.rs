//! Command-line frontend for the `qmoyal` engine.

pub mod commands;
pub mod error;
pub mod parse;

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qmoyal_core::{OrderingScheme, QContext, QValue};

pub use error::CliError;
pub use parse::{parse_exponent, parse_operator_expr, parse_symbol_expr, ParseError};

/// Largest grid accepted without `--allow-large-grid`.
pub const GRID_GUARD: u32 = 6;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_HARD_FAILURE: i32 = 2;

/// Exit code of a run that produced `reports`: 2 on any hard failure.
pub fn exit_code_for(reports: &[qmoyal_core::conformance::ConformanceReport]) -> i32 {
    if reports.iter().any(|r| r.hard_failure()) {
        EXIT_HARD_FAILURE
    } else {
        EXIT_OK
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Ordering {
    Standard,
    Antistandard,
}

impl From<Ordering> for OrderingScheme {
    fn from(o: Ordering) -> Self {
        match o {
            Ordering::Standard => OrderingScheme::Standard,
            Ordering::Antistandard => OrderingScheme::Antistandard,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Product {
    HbarStandard,
    HbarAnti,
    HbarWeyl,
    ClassicalQStandard,
    ClassicalQAnti,
    ClassicalQWeyl,
    QStandard,
    QAnti,
    QWeylGf,
}

impl From<Product> for qmoyal_core::StarProductId {
    fn from(p: Product) -> Self {
        use qmoyal_core::StarProductId as S;
        match p {
            Product::HbarStandard => S::HbarStandard,
            Product::HbarAnti => S::HbarAnti,
            Product::HbarWeyl => S::HbarWeyl,
            Product::ClassicalQStandard => S::ClassicalQStandard,
            Product::ClassicalQAnti => S::ClassicalQAnti,
            Product::ClassicalQWeyl => S::ClassicalQWeyl,
            Product::QStandard => S::QStandard,
            Product::QAnti => S::QAnti,
            Product::QWeylGf => S::QWeylGF,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Assoc {
    Left,
    Right,
    Balanced,
}

impl From<Assoc> for qmoyal_core::Association {
    fn from(a: Assoc) -> Self {
        match a {
            Assoc::Left => qmoyal_core::Association::Left,
            Assoc::Right => qmoyal_core::Association::Right,
            Assoc::Balanced => qmoyal_core::Association::Balanced,
        }
    }
}

/// Exact q-deformed phase-space algebra: normal ordering, q-star products,
/// brackets and conformance checks.
#[derive(Debug, Parser)]
#[command(name = "qmoyal", version)]
pub struct Cli {
    #[command(flatten)]
    pub config: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Debug, Args)]
pub struct GlobalArgs {
    /// Grid bound for conformance sweeps.
    #[arg(long, global = true, env = "QMOYAL_GRID", default_value_t = 3)]
    pub grid: u32,
    /// Accept grids above the cost guard.
    #[arg(long, global = true)]
    pub allow_large_grid: bool,
    /// D such that every exponent of q lies in (1/D)Z.
    #[arg(long, global = true, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
    pub root_denominator: u32,
    /// Evaluate at q = 1 instead of generic q.
    #[arg(long, global = true)]
    pub q1: bool,
    /// Derivative-order cap for star-product sums that do not terminate.
    #[arg(long, global = true, default_value_t = 8)]
    pub max_h_order: u32,
    /// Series truncation order K for evolution operators.
    #[arg(long, global = true, default_value_t = 4)]
    pub truncation: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

/// Validated settings shared by every command.
#[derive(Clone, Debug, PartialEq)]
pub struct CliConfig {
    pub ctx: QContext,
    pub grid: u32,
    pub truncation: u32,
    pub format: Format,
}

impl GlobalArgs {
    pub fn validate(&self) -> Result<CliConfig, CliError> {
        if self.grid > GRID_GUARD && !self.allow_large_grid {
            return Err(CliError::Usage(format!(
                "grid {} exceeds the cost guard {GRID_GUARD}; pass --allow-large-grid to proceed",
                self.grid
            )));
        }
        let mut ctx = QContext::generic(self.root_denominator);
        ctx.max_h_order = self.max_h_order;
        if self.q1 {
            ctx.q = QValue::One;
        }
        Ok(CliConfig { ctx, grid: self.grid, truncation: self.truncation, format: self.format })
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normal-order an operator expression in P, X.
    NormalOrder {
        expr: String,
        #[arg(long, value_enum, default_value_t = Ordering::Standard)]
        ordering: Ordering,
    },
    /// Weighted q-commutator of two operator expressions.
    Qcomm {
        a: String,
        b: String,
        #[arg(long, value_enum, default_value_t = Ordering::Standard)]
        ordering: Ordering,
    },
    /// Star product of two symbols.
    Star {
        f: String,
        g: String,
        #[arg(long, value_enum, default_value_t = Product::QStandard)]
        product: Product,
    },
    /// q-Moyal bracket of two symbols.
    Moyal {
        f: String,
        g: String,
        #[arg(long, value_enum, default_value_t = Product::QStandard)]
        product: Product,
    },
    /// q-Poisson bracket of two symbols.
    Poisson { f: String, g: String },
    /// Run one conformance check group.
    Verify {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(qmoyal_core::conformance::CHECKS.iter().copied()))]
        check: String,
    },
    /// Run every conformance check.
    VerifyAll,
    /// Run a worked example.
    Demo {
        #[arg(value_enum)]
        name: Demo,
        /// Exponent a of the point transform u = x^a.
        #[arg(long)]
        exponent: Option<String>,
        #[arg(long, value_enum)]
        assoc: Option<Assoc>,
        /// Number of composed short-time steps.
        #[arg(long, default_value_t = 2)]
        steps: u32,
        /// Hamiltonian symbol.
        #[arg(long)]
        hamiltonian: Option<String>,
        #[arg(long, value_enum, default_value_t = Product::QStandard)]
        product: Product,
    },
    /// Structure constants of weighted commutators of basis monomials.
    Tabulate {
        #[arg(long, value_enum, default_value_t = Ordering::Standard)]
        ordering: Ordering,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Demo {
    PointTransform,
    Leibniz,
    Kinetic,
    PathIntegral,
    Obstruction,
}

/// Parse `args` (including the program name), run, and return the exit code.
pub fn run_to<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(rendered.as_bytes()) } else { out.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    let result = cli.config.validate().and_then(|config| commands::run(&cli.command, &config));
    match result {
        Ok(output) => {
            let _ = out.write_all(output.text.as_bytes());
            if !output.text.ends_with('\n') {
                let _ = out.write_all(b"\n");
            }
            output.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
