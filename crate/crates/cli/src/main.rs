//! `spantree`: exact tree counting, spine codecs, spectra, spanning-tree
//! censuses, and uniform sampling, with reproducible machine-readable
//! output.
//!
//! Exit codes: 0 success, 1 domain error (structured JSON on stderr),
//! 2 usage error. All randomized outputs embed their seed and generator id;
//! all JSON integers that may exceed 53 bits are decimal strings.

mod errors;
mod graph_cmds;
mod tree_cmds;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::Ratio;

use errors::AppError;

type BigRational = Ratio<BigInt>;

/// Tree-count cap override honored by census and exact sampling.
const CAP_ENV: &str = "SFC_CAP_TREES";

#[derive(Parser)]
#[command(
    name = "spantree",
    version,
    about = "Exact counts, codecs, spectra, and censuses of spanning trees"
)]
struct Cli {
    /// Record pinned outputs on first run; verify byte-identity afterwards.
    #[arg(long, global = true, value_name = "DIR")]
    fixture_dir: Option<PathBuf>,
    /// Worker threads for subcommands whose results are schedule-independent.
    #[arg(long, global = true, default_value_t = 1, value_name = "T")]
    threads: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exact counts of unlabelled trees, one value per order
    Count {
        #[command(subcommand)]
        kind: CountKind,
    },
    /// Growth-constant estimate from the exact count table
    Alpha {
        /// Table size; the estimate uses a_k (and a_{k-1} for ratio)
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum)]
        method: MethodArg,
        /// Significant fractional digits in the decimal output
        #[arg(long, default_value_t = 12)]
        digits: u32,
        #[arg(long, value_enum, default_value_t = Fmt::Text)]
        format: Fmt,
    },
    /// Smallest block size k whose per-vertex yield clears the target
    #[command(name = "choose-k")]
    ChooseK {
        /// Slack as an exact rational P/Q (or integer P)
        #[arg(long, value_parser = parse_ratio)]
        epsilon: BigRational,
        /// Search ceiling on k
        #[arg(long, default_value_t = spantree::counting::DEFAULT_CHOOSE_K_CAP)]
        cap: usize,
        #[arg(long, value_enum, default_value_t = Fmt::Text)]
        format: Fmt,
    },
    /// Enumerate unlabelled trees, one per line
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Spine codec: pack tuples of small trees into marked large trees
    Spine {
        #[command(subcommand)]
        kind: SpineCmd,
    },
    /// Graph generation and spectral checks
    Graph {
        #[command(subcommand)]
        kind: GraphCmd,
    },
    /// Exhaustive unlabelled spanning-tree census of a graph file
    Census {
        file: PathBuf,
        /// Enumeration ceiling (overrides SFC_CAP_TREES and the default)
        #[arg(long)]
        cap: Option<u64>,
        /// Adds the informational exponential floor to the report
        #[arg(long, value_parser = parse_ratio)]
        epsilon: Option<BigRational>,
        #[arg(long)]
        json: bool,
        #[arg(long, conflicts_with = "json")]
        csv: bool,
    },
    /// Uniform spanning-tree sampling and shape distributions
    Sample {
        file: PathBuf,
        #[arg(long)]
        samples: u64,
        #[arg(long)]
        seed: u64,
        /// Collision benchmark exponent: threshold e^(-(1-eps) n)
        #[arg(long)]
        epsilon: f64,
        /// Exhaustive distribution instead of sampling
        #[arg(long)]
        exact: bool,
        /// Enumeration ceiling for --exact
        #[arg(long)]
        cap: Option<u64>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum CountKind {
    /// a_k for k = 1..max
    Rooted {
        #[arg(long)]
        max: usize,
        #[arg(long, value_enum, default_value_t = Fmt::Text)]
        format: Fmt,
    },
    /// t_n for n = 1..max
    Free {
        #[arg(long)]
        max: usize,
        #[arg(long, value_enum, default_value_t = Fmt::Text)]
        format: Fmt,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// All rooted trees on k vertices (root is vertex 0)
    Rooted {
        #[arg(short, long)]
        k: usize,
        /// Stop after this many trees
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long, value_enum, default_value_t = TreeFmt::Edges)]
        format: TreeFmt,
        /// Enumeration size ceiling
        #[arg(long)]
        cap: Option<usize>,
    },
    /// All free trees on k vertices
    Free {
        #[arg(short, long)]
        k: usize,
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long, value_enum, default_value_t = TreeFmt::Edges)]
        format: TreeFmt,
        #[arg(long)]
        cap: Option<usize>,
    },
}

#[derive(Subcommand)]
enum SpineCmd {
    /// Derive the block/marker split for (n, k)
    Params {
        #[arg(short)]
        n: usize,
        #[arg(short)]
        k: usize,
        #[arg(long)]
        json: bool,
    },
    /// Encode a tuple of k-vertex rooted trees (one per line in --blocks)
    Encode {
        #[arg(short)]
        n: usize,
        #[arg(short)]
        k: usize,
        /// File of block trees, one per line, rooted at vertex 0
        #[arg(long)]
        blocks: PathBuf,
    },
    /// Recover the block tuple from an encoded tree
    Decode {
        #[arg(short)]
        k: usize,
        file: PathBuf,
    },
    /// Exact-arithmetic family-size certificate for (epsilon, n)
    Certify {
        #[arg(long, value_parser = parse_ratio)]
        epsilon: BigRational,
        #[arg(short)]
        n: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum GraphCmd {
    /// Emit a graph file
    Gen {
        #[command(subcommand)]
        kind: GraphGenKind,
    },
    /// Spectral profile of a regular graph
    Lambda {
        file: PathBuf,
        #[arg(long, default_value_t = spantree::spectral::DEFAULT_TOL)]
        tol: f64,
        /// Matrix-order ceiling
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Expansion-family membership: d >= d0 and d/lambda >= C
    Check {
        file: PathBuf,
        #[arg(long = "C")]
        c: f64,
        #[arg(long)]
        d0: usize,
        #[arg(long, default_value_t = spantree::spectral::DEFAULT_TOL)]
        tol: f64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum GraphGenKind {
    /// Complete graph on n vertices
    Complete {
        #[arg(short)]
        n: usize,
    },
    /// Cycle on n vertices
    Cycle {
        #[arg(short)]
        n: usize,
    },
    /// Uniform random simple d-regular graph (pairing model)
    Regular {
        #[arg(short)]
        n: usize,
        #[arg(short)]
        d: usize,
        #[arg(long)]
        seed: u64,
        /// Rejection attempt ceiling
        #[arg(long, default_value_t = spantree::graph::DEFAULT_PAIRING_BUDGET)]
        budget: u64,
    },
    /// Disjoint union of two graph files (second shifted past the first)
    Union { a: PathBuf, b: PathBuf },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Fmt {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Root,
    Ratio,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TreeFmt {
    /// Single-line edge list: "n m  u v  u v ..."
    Edges,
    /// Canonical code, one per line
    Canon,
}

fn parse_ratio(s: &str) -> Result<BigRational, String> {
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p, q),
        None => (s, "1"),
    };
    let p: BigInt = p
        .trim()
        .parse()
        .map_err(|_| format!("bad numerator {p:?}: expected an integer"))?;
    let q: BigInt = q
        .trim()
        .parse()
        .map_err(|_| format!("bad denominator {q:?}: expected an integer"))?;
    if q == BigInt::from(0) {
        return Err("denominator must be nonzero".into());
    }
    Ok(BigRational::new(p, q))
}

/// Tree-count cap: explicit flag, then SFC_CAP_TREES, then the default.
fn tree_cap(flag: Option<u64>) -> u64 {
    flag.or_else(|| {
        std::env::var(CAP_ENV)
            .ok()
            .and_then(|v| v.parse().ok())
    })
    .unwrap_or(spantree::census::DEFAULT_TREE_CAP)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::FAILURE
        }
    }
}

fn run(cli: &Cli) -> Result<(), AppError> {
    let output = dispatch(cli)?;
    if let Some(dir) = &cli.fixture_dir {
        check_fixture(dir, &output)?;
    }
    print!("{output}");
    Ok(())
}

fn dispatch(cli: &Cli) -> Result<String, AppError> {
    match &cli.cmd {
        Cmd::Count { kind } => tree_cmds::count(kind),
        Cmd::Alpha {
            k,
            method,
            digits,
            format,
        } => tree_cmds::alpha(*k, *method, *digits, *format),
        Cmd::ChooseK {
            epsilon,
            cap,
            format,
        } => tree_cmds::choose_k(epsilon, *cap, *format),
        Cmd::Gen { kind } => tree_cmds::gen(kind),
        Cmd::Spine { kind } => tree_cmds::spine(kind),
        Cmd::Graph { kind } => graph_cmds::graph(kind),
        Cmd::Census {
            file,
            cap,
            epsilon,
            json,
            csv,
        } => graph_cmds::census(file, tree_cap(*cap), epsilon.as_ref(), *json, *csv),
        Cmd::Sample {
            file,
            samples,
            seed,
            epsilon,
            exact,
            cap,
            json,
        } => graph_cmds::sample(
            file,
            *samples,
            *seed,
            *epsilon,
            *exact,
            tree_cap(*cap),
            *json,
            cli.threads,
        ),
    }
}

/// First run writes `<slug>-<hash>.out`; later runs must match it byte for
/// byte. The file name is derived from the full argument list (minus the
/// fixture flag itself).
fn check_fixture(dir: &PathBuf, output: &str) -> Result<(), AppError> {
    let args: Vec<String> = {
        let mut kept = Vec::new();
        let mut skip = false;
        for a in std::env::args().skip(1) {
            if skip {
                skip = false;
                continue;
            }
            if a == "--fixture-dir" {
                skip = true;
                continue;
            }
            if a.starts_with("--fixture-dir=") {
                continue;
            }
            kept.push(a);
        }
        kept
    };
    let joined = args.join(" ");
    let slug: String = joined
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '.' || c == '-' {
            c
        } else {
            '_'
        })
        .take(80)
        .collect();
    let path = dir.join(format!("{slug}-{:016x}.out", fnv1a(joined.as_bytes())));
    std::fs::create_dir_all(dir)?;
    if path.exists() {
        let pinned = std::fs::read_to_string(&path)?;
        if pinned != output {
            return Err(AppError::new(
                "fixture_mismatch",
                format!("output differs from pinned fixture {}", path.display()),
            ));
        }
    } else {
        std::fs::write(&path, output)?;
    }
    Ok(())
}

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}
