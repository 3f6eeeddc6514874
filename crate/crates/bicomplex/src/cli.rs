//! Command-line front end. The binary is a thin wrapper around this
//! module; every command maps onto library calls and prints deterministic
//! reports. Exit codes: 0 success, 1 usage or input errors, 2 validation
//! and integrity failures.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::cohomology::invariant_bundle;
use crate::complex::DoubleComplex;
use crate::decompose::{decompose, is_locally_similar, is_quasi_isomorphic};
use crate::error::Error;
use crate::formal::{self, FillingSign};
use crate::io;
use crate::lie::{
    almost_abelian, ce_complex, six_dim_structure, AlmostAbelianSpec, SixDimParams,
};
use crate::report;
use crate::scalar::Scalar;
use crate::shape::synthesize;

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Format {
    /// Aligned text tables.
    Table,
    /// Canonical structured JSON.
    Structured,
}

#[derive(Parser, Debug)]
#[command(
    name = "bicomplex",
    version,
    about = "Exact invariants and zigzag decompositions of bounded double complexes",
    after_help = "Exit codes: 0 success, 1 usage or input error, 2 validation/integrity error.\n\
                  The BICOMPLEX_THREADS environment variable caps the worker-thread count\n\
                  (default: all available cores)."
)]
pub struct Cli {
    /// Seed for randomized operations (reserved; accepted everywhere).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Check the double-complex axioms of a complex file.
    Validate { file: PathBuf },
    /// Compute every cohomological invariant of a complex file.
    Invariants { file: PathBuf },
    /// Decompose a complex file into squares and zigzags.
    Decompose {
        file: PathBuf,
        /// Also write the multiset to this path.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Compare two complex files.
    Compare(CompareArgs),
    /// Build the canonical complex of a multiset file.
    Synth {
        file: PathBuf,
        /// Write the complex to this path.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Build the six-real-dimensional nilpotent family member.
    Ce6(Ce6Args),
    /// Build an almost-abelian complex from its chain lengths.
    AlmostAbelian {
        /// Comma-separated chain lengths, e.g. 2,2.
        #[arg(long)]
        ks: String,
        /// Write the complex to this path.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Formal counting and kernel constructions.
    Formal {
        #[command(subcommand)]
        sub: FormalCmd,
    },
    /// List the named fixture multisets, or write them to a directory.
    Fixtures {
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
pub struct CompareArgs {
    /// Equal zigzag multiplicities (squares ignored)?
    #[arg(long, conflicts_with_all = ["local", "iso"])]
    pub quasi: bool,
    /// Equal local (per-bidegree) cohomologies?
    #[arg(long, conflicts_with_all = ["quasi", "iso"])]
    pub local: bool,
    /// Equal full decompositions (squares included)?
    #[arg(long, conflicts_with_all = ["quasi", "local"])]
    pub iso: bool,
    pub a: PathBuf,
    pub b: PathBuf,
}

#[derive(Args, Debug)]
pub struct Ce6Args {
    #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
    pub eps: u8,
    #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
    pub rho: u8,
    #[arg(long = "A", default_value = "0", allow_hyphen_values = true)]
    pub a: String,
    #[arg(long = "B", default_value = "0", allow_hyphen_values = true)]
    pub b: String,
    #[arg(long = "C", default_value = "0", allow_hyphen_values = true)]
    pub c: String,
    #[arg(long = "D", default_value = "0", allow_hyphen_values = true)]
    pub d: String,
    /// Write the complex to this path.
    #[arg(short, long)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum FormalCmd {
    /// Closed-form count of independent zigzag classes in the n-grid.
    Rank { n: u32 },
    /// Cross-check the closed form against brute-force orbit counting.
    VerifyRank { n: u32 },
    /// Assemble an invisible formal difference from a zero-sum filling.
    Kernel {
        #[arg(long)]
        k: i32,
        /// `+` places anchors above the degree-k diagonal, `-` below.
        #[arg(long, allow_hyphen_values = true)]
        sign: String,
        /// JSON file with `[p, q, value]` triples.
        #[arg(long)]
        values: PathBuf,
    },
}

/// Everything a command can produce: text plus the chosen exit code.
struct Outcome {
    text: String,
    code: i32,
}

fn ok(text: String) -> Result<Outcome, Error> {
    Ok(Outcome { text, code: 0 })
}

fn inconsistent(text: String) -> Result<Outcome, Error> {
    Ok(Outcome { text, code: 2 })
}

fn load_valid_complex(path: &PathBuf) -> Result<Result<DoubleComplex, String>, Error> {
    let c = io::read_complex(path)?;
    let report = c.validate();
    if report.is_valid() {
        Ok(Ok(c))
    } else {
        Ok(Err(format!("{}: invalid complex\n{report}", path.display())))
    }
}

fn run_command(cli: &Cli) -> Result<Outcome, Error> {
    match &cli.cmd {
        Cmd::Validate { file } => {
            let c = io::read_complex(file)?;
            let report = c.validate();
            if report.is_valid() {
                ok(format!("valid ({} bidegrees, total dimension {})\n", c.dims().len(), c.total_dim()))
            } else {
                inconsistent(report.to_string())
            }
        }
        Cmd::Invariants { file } => {
            let c = match load_valid_complex(file)? {
                Ok(c) => c,
                Err(text) => return inconsistent(text),
            };
            let bundle = invariant_bundle(&c);
            match cli.format {
                Format::Table => ok(report::render_bundle(&bundle)),
                Format::Structured => ok(io::bundle_to_json(&bundle)),
            }
        }
        Cmd::Decompose { file, out } => {
            let c = match load_valid_complex(file)? {
                Ok(c) => c,
                Err(text) => return inconsistent(text),
            };
            let m = match decompose(&c) {
                Ok(m) => m,
                Err(Error::Integrity(msg)) => return inconsistent(format!("integrity error: {msg}\n")),
                Err(e) => return Err(e),
            };
            if let Some(path) = out {
                io::write_multiset(path, &m)?;
            }
            match cli.format {
                Format::Table => ok(report::render_decomposition(&m)),
                Format::Structured => ok(serde_json::to_string_pretty(&io::multiset_to_entries(&m))
                    .unwrap()
                    + "\n"),
            }
        }
        Cmd::Compare(args) => {
            let a = match load_valid_complex(&args.a)? {
                Ok(c) => c,
                Err(text) => return inconsistent(text),
            };
            let b = match load_valid_complex(&args.b)? {
                Ok(c) => c,
                Err(text) => return inconsistent(text),
            };
            let yes_no = |v: bool| if v { "yes" } else { "no" };
            let mut text = String::new();
            if args.local {
                let local = is_locally_similar(&a, &b);
                let quasi = is_quasi_isomorphic(&a, &b)?;
                text.push_str(&format!(
                    "locally similar: {}; quasi-isomorphic: {}\n",
                    yes_no(local),
                    yes_no(quasi)
                ));
            } else if args.iso {
                let iso = decompose(&a)? == decompose(&b)?;
                text.push_str(&format!("isomorphic: {}\n", yes_no(iso)));
            } else {
                // --quasi, also the default.
                let quasi = is_quasi_isomorphic(&a, &b)?;
                text.push_str(&format!("quasi-isomorphic: {}\n", yes_no(quasi)));
            }
            ok(text)
        }
        Cmd::Synth { file, out } => {
            let m = io::read_multiset(file)?;
            let c = synthesize(&m).map_err(|e| match e {
                Error::Domain(msg) => Error::Domain(format!("{}: {msg}", file.display())),
                other => other,
            })?;
            if let Some(path) = out {
                io::write_complex(path, &c)?;
            }
            ok(format!(
                "synthesized {} bidegrees, total dimension {}\n",
                c.dims().len(),
                c.total_dim()
            ))
        }
        Cmd::Ce6(args) => {
            let parse = |name: &str, text: &str| -> Result<Scalar, Error> {
                text.parse()
                    .map_err(|_| Error::Parse(format!("parameter {name}: bad scalar `{text}`")))
            };
            let params = SixDimParams::new(
                args.eps == 1,
                args.rho == 1,
                parse("A", &args.a)?,
                parse("B", &args.b)?,
                parse("C", &args.c)?,
                parse("D", &args.d)?,
            );
            let c = ce_complex(&six_dim_structure(&params));
            if let Some(path) = &args.out {
                io::write_complex(path, &c)?;
            }
            let m = decompose(&c)?;
            ok(report::render_decomposition(&m))
        }
        Cmd::AlmostAbelian { ks, out } => {
            let lengths: Result<Vec<u32>, _> =
                ks.split(',').map(|t| t.trim().parse::<u32>()).collect();
            let lengths =
                lengths.map_err(|_| Error::Parse(format!("bad chain lengths `{ks}`")))?;
            let spec = AlmostAbelianSpec::new(lengths)?;
            let c = ce_complex(&almost_abelian(&spec));
            if let Some(path) = out {
                io::write_complex(path, &c)?;
            }
            let m = decompose(&c)?;
            ok(report::render_decomposition(&m))
        }
        Cmd::Formal { sub } => match sub {
            FormalCmd::Rank { n } => ok(format!("{}\n", formal::rank_formula(*n)?)),
            FormalCmd::VerifyRank { n } => {
                let formula = formal::rank_formula(*n)?;
                let enumerated = formal::enumerate_rank(*n)?;
                if formula == enumerated {
                    ok(format!("{formula} (formula and enumeration agree)\n"))
                } else {
                    inconsistent(format!(
                        "formula gives {formula}, enumeration gives {enumerated}\n"
                    ))
                }
            }
            FormalCmd::Kernel { k, sign, values } => {
                let sign = match sign.as_str() {
                    "+" | "plus" => FillingSign::Plus,
                    "-" | "minus" => FillingSign::Minus,
                    other => {
                        return Err(Error::Parse(format!("sign must be + or -, got `{other}`")))
                    }
                };
                let filling = io::filling_from_parts(*k, sign, io::read_filling_values(values)?)?;
                let e = filling.kernel_element()?;
                let (_, _, equal) = formal::chi_difference(&e)?;
                let mut text = String::new();
                text.push_str("positive side:\n");
                text.push_str(&report::render_decomposition(&e.pos));
                text.push_str("negative side:\n");
                text.push_str(&report::render_decomposition(&e.neg));
                text.push_str(&format!(
                    "chi arrays equal: {}\n",
                    if equal { "yes" } else { "no" }
                ));
                ok(text)
            }
        },
        Cmd::Fixtures { out_dir } => {
            let all: BTreeMap<&str, _> = formal::fixtures();
            let mut text = String::new();
            if let Some(dir) = out_dir {
                std::fs::create_dir_all(dir)?;
                for (name, m) in &all {
                    let path = dir.join(format!("{name}.ms"));
                    io::write_multiset(&path, m)?;
                    text.push_str(&format!("wrote {}\n", path.display()));
                }
            } else {
                for (name, m) in &all {
                    text.push_str(&format!("{name}:\n"));
                    text.push_str(&report::render_decomposition(m));
                }
            }
            ok(text)
        }
    }
}

/// Parse arguments and run; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version are successes; everything else is usage.
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return code;
        }
    };
    init_parallelism();
    match run_command(&cli) {
        Ok(outcome) => {
            print!("{}", outcome.text);
            outcome.code
        }
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::Integrity(_) => 2,
                _ => 1,
            }
        }
    }
}

/// Configure the global worker pool from `BICOMPLEX_THREADS` (default: all
/// available cores). Called once; later calls are no-ops.
pub fn init_parallelism() {
    if let Ok(value) = std::env::var("BICOMPLEX_THREADS") {
        if let Ok(n) = value.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build_global();
        }
    }
}
