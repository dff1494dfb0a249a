//! `insdel-lab`: bounds, identities, code constructions and exhaustive
//! verification from the command line.
//!
//! Exit codes: 0 success, 1 a check failed (or an enumeration hit its cap),
//! 2 invalid input.

mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use insdel_core::Rational;

#[derive(Parser, Debug)]
#[command(name = "insdel-lab", version, about = "List decoding for insertion/deletion codes")]
pub struct Cli {
    /// Seed for randomized searches and random test codes.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Enumeration cap (channel outputs per codeword).
    #[arg(long, global = true, default_value_t = insdel_core::verify::DEFAULT_OUTPUT_CAP)]
    pub cap: u128,
    /// Worker threads; defaults to the number of CPUs.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate the list-decoding bounds.
    #[command(subcommand)]
    Bound(BoundCmd),
    /// Check the counting identities behind the bound.
    #[command(subcommand)]
    Identity(IdentityCmd),
    /// Build a code and write it in the code file format.
    #[command(subcommand)]
    Code(CodeCmd),
    /// Exhaustive checks on a code file.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Emit figure data as CSV.
    Figure(FigureArgs),
    /// Run the full acceptance suite.
    Regress(RegressArgs),
}

fn rational(text: &str) -> Result<Rational, String> {
    insdel_core::parse_rational(text).map_err(|e| e.to_string())
}

#[derive(Args, Debug)]
pub struct BoundArgs {
    /// Relative minimum distance, e.g. 0.9 or 9/10.
    #[arg(long, value_parser = rational)]
    pub delta: Rational,
    #[arg(long = "list-size", short = 'L')]
    pub list_size: u32,
    /// Deletion fraction; without it the whole curve is printed as CSV.
    #[arg(long = "tau-d", value_parser = rational)]
    pub tau_d: Option<Rational>,
    /// Write the curve CSV here instead of stdout.
    #[arg(long)]
    pub csv: Option<std::path::PathBuf>,
    #[arg(long, default_value_t = insdel_core::figures::DEFAULT_POINTS)]
    pub points: usize,
    /// Clip the curve to what an alphabet of this size allows.
    #[arg(long)]
    pub alphabet: Option<u16>,
}

#[derive(Subcommand, Debug)]
pub enum BoundCmd {
    /// The piecewise-linear bound.
    Rho(BoundArgs),
    /// The quadratic bounds and the list size they guarantee.
    Hy {
        #[command(flatten)]
        common: BoundArgs,
        /// Insertion fraction, for the guaranteed list size.
        #[arg(long = "tau-i", value_parser = rational)]
        tau_i: Option<Rational>,
    },
    /// Where the piecewise bound beats the quadratic one.
    Compare {
        #[arg(long, value_parser = rational)]
        delta: Rational,
        #[arg(long = "list-size", short = 'L')]
        list_size: u32,
    },
}

#[derive(Subcommand, Debug)]
pub enum IdentityCmd {
    /// Number of l-element families of v-subsets covering a j-set.
    Covers {
        #[arg(long)]
        j: u32,
        #[arg(long)]
        ell: u32,
        #[arg(long)]
        v: u32,
    },
    /// Inclusion-exclusion coefficient A_{j,v}.
    Ajv {
        #[arg(long)]
        j: u32,
        #[arg(long)]
        v: u32,
    },
    /// The alternating binomial sum that always equals one.
    Claim8 {
        #[arg(long)]
        j: u32,
        #[arg(long)]
        v: u32,
    },
    /// One row of combination coefficients.
    Phi {
        #[arg(long = "list-size", short = 'L')]
        list_size: u32,
        #[arg(long)]
        r: u32,
    },
}

#[derive(Args, Debug)]
pub struct OutArg {
    /// Output path; stdout when absent.
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum CodeCmd {
    /// Binary Varshamov-Tenengolts code.
    Vt {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        a: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// q-ary Varshamov-Tenengolts code.
    Vtq {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u16,
        #[arg(long, default_value_t = 0)]
        a: usize,
        #[arg(long, default_value_t = 0)]
        b: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Helberg code.
    Helberg {
        #[arg(long)]
        q: u16,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
        #[arg(long, default_value_t = 0)]
        a: u64,
        #[arg(long)]
        modulus: Option<u64>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Reed-Solomon code over a prime field.
    Rs {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Evaluation points, comma separated. Defaults to 0,1,..,n-1.
        #[arg(long, value_delimiter = ',', conflicts_with = "search")]
        alpha: Option<Vec<u32>>,
        /// Search evaluation points for a large Levenshtein distance.
        #[arg(long)]
        search: bool,
        /// Candidates examined by --search.
        #[arg(long, default_value_t = 10_000)]
        budget: u64,
        /// Where to write the search report (JSON); stderr when absent.
        #[arg(long)]
        report: Option<std::path::PathBuf>,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Args, Debug)]
pub struct CodeArg {
    /// Code file: `q=<q> n=<n>` then one codeword per line.
    #[arg(long)]
    pub code: std::path::PathBuf,
}

#[derive(Subcommand, Debug)]
pub enum VerifyCmd {
    /// Exact minimum Levenshtein distance.
    Mindist {
        #[command(flatten)]
        code: CodeArg,
    },
    /// Exhaustive list-decodability check.
    ListDecodable {
        #[command(flatten)]
        code: CodeArg,
        #[arg(long)]
        ti: usize,
        #[arg(long)]
        td: usize,
        #[arg(long = "list-size", short = 'L')]
        list_size: usize,
        /// Include the offending received word and codewords.
        #[arg(long)]
        witness: bool,
    },
    /// Check every radius pair promised by the bound.
    Theorem {
        #[command(flatten)]
        code: CodeArg,
        #[arg(long = "list-size", short = 'L')]
        list_size: usize,
    },
}

#[derive(clap::ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FigureId {
    Fig1,
    Fig2,
    Fig3,
}

#[derive(Args, Debug)]
pub struct FigureArgs {
    pub id: FigureId,
    /// Relative distance (fig1, fig2).
    #[arg(long, value_parser = rational)]
    pub delta: Option<Rational>,
    /// List size (fig1, fig3).
    #[arg(long = "list-size", short = 'L')]
    pub list_size: Option<u32>,
    /// Comma-separated list sizes (fig2).
    #[arg(long = "list-sizes", value_delimiter = ',')]
    pub list_sizes: Option<Vec<u32>>,
    /// Comma-separated code rates in (0, 1/2) (fig3).
    #[arg(long, value_delimiter = ',', value_parser = rational)]
    pub rates: Option<Vec<Rational>>,
    #[arg(long, default_value_t = insdel_core::figures::DEFAULT_POINTS)]
    pub points: usize,
    #[command(flatten)]
    pub out: OutArg,
}

#[derive(Args, Debug)]
pub struct RegressArgs {
    /// Run only these checks (comma-separated ids 1-11).
    #[arg(long, value_delimiter = ',')]
    pub only: Option<Vec<u32>>,
    /// Print one JSON object per check instead of text lines.
    #[arg(long)]
    pub json: bool,
    /// Add one to a combination coefficient before checking (L,r,j).
    #[arg(long = "inject-phi-fault", value_delimiter = ',', hide = true)]
    pub inject_phi_fault: Option<Vec<u32>>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(commands::exit_code_for(&err))
        }
    }
}
