mod commands;
mod report;
mod verify;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use skelcode::params::{DistanceOptions, Engine, DEFAULT_K_CAP};

use report::RunReport;

#[derive(Parser, Debug)]
#[command(
    name = "skelcode",
    version,
    about = "Evaluation codes of simplicial skeleta over GF(q)"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for distance searches (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Minimum-distance engine.
    #[arg(long, global = true, value_enum, default_value_t = MethodArg::Auto)]
    method: MethodArg,
    /// Largest k searched exhaustively.
    #[arg(long, global = true, default_value_t = DEFAULT_K_CAP)]
    k_cap: usize,
    /// Largest k handed to the information-set engine.
    #[arg(long, global = true)]
    is_cap: Option<usize>,
}

impl Global {
    pub fn distance_options(&self) -> DistanceOptions {
        DistanceOptions {
            engine: match self.method {
                MethodArg::Auto => Engine::Auto,
                MethodArg::Exhaustive => Engine::Exhaustive,
                MethodArg::Is => Engine::InformationSet,
            },
            k_cap: self.k_cap,
            is_k_cap: self.is_cap,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum MethodArg {
    Auto,
    Exhaustive,
    Is,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderArg {
    /// By point weight, then support-lex: rows and columns fall into blocks.
    Graded,
    /// Support-lex over all points.
    Lex,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Property {
    TheoremMain,
    PropSize,
    SRows,
    GLemma,
    IeCoeff,
    PropLast,
    Athanasiadis,
    ReedMuller,
    Engines,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Ranges {
    #[arg(long)]
    pub lmin: Option<usize>,
    #[arg(long)]
    pub lmax: Option<usize>,
    /// Largest family size.
    #[arg(long)]
    pub nmax: Option<usize>,
    #[arg(long)]
    pub smax: Option<usize>,
    #[arg(long)]
    pub tmax: Option<usize>,
    /// Random instances to draw.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Largest code dimension for sampled subcodes.
    #[arg(long)]
    pub kmax: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// [n,k,d] of K(L,H,J) next to the closed-form predictions.
    Params { l: usize, h: usize, j: usize },
    /// Generator matrix of K(L,H,J) in matrix text form.
    Matrix {
        l: usize,
        h: usize,
        j: usize,
        #[arg(long, value_enum, default_value_t = OrderArg::Graded)]
        order: OrderArg,
        /// Precede the matrix with row monomials and column points.
        #[arg(long)]
        header: bool,
    },
    /// Characteristic polynomial of a coordinate arrangement and its point count.
    CharPoly {
        /// Facets separated by commas, vertices by spaces: "1 2, 1 3, 2 3".
        #[arg(long, conflicts_with = "complex")]
        facets: Option<String>,
        /// Complex in text form: vertex count, then one facet per line.
        #[arg(long)]
        complex: Option<std::path::PathBuf>,
        #[arg(long = "l")]
        ell: Option<usize>,
        #[arg(long, default_value_t = 2)]
        q: u32,
    },
    /// Run a named property sweep.
    Verify {
        #[arg(value_enum)]
        name: Property,
        #[command(flatten)]
        ranges: Ranges,
    },
    /// Exact d for 2 <= j < h <= l against both conjectured sums.
    ScanConjecture {
        #[arg(long, default_value_t = 3)]
        lmin: usize,
        #[arg(long, default_value_t = 6)]
        lmax: usize,
    },
    /// Decide whether K(L,H,J) is a Hamming code up to column permutation.
    HammingCheck { l: usize, h: usize, j: usize },
}

fn emit(report: &mut RunReport, json: bool) {
    report.finish();
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(report).expect("report serializes")
        );
    } else {
        print!("{}", report.to_text());
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.global.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let g = &cli.global;
    let result = match &cli.command {
        Command::Params { l, h, j } => commands::params(*l, *h, *j, g),
        Command::Matrix {
            l,
            h,
            j,
            order,
            header,
        } => match commands::matrix(*l, *h, *j, *order, *header, g) {
            Ok(()) => return ExitCode::SUCCESS,
            Err(e) => Err(e),
        },
        Command::CharPoly {
            facets,
            complex,
            ell,
            q,
        } => commands::char_poly(facets.as_deref(), complex.as_deref(), *ell, *q),
        Command::Verify { name, ranges } => verify::run(*name, ranges, g),
        Command::ScanConjecture { lmin, lmax } => commands::scan_conjecture(*lmin, *lmax, g),
        Command::HammingCheck { l, h, j } => commands::hamming_check(*l, *h, *j, g),
    };
    match result {
        Ok(mut report) => {
            emit(&mut report, g.json);
            if report.has_mismatch() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
