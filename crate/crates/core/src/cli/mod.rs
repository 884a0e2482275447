//! The `qchrom` command line.
//!
//! Exit codes: 0 on success, 2 on invalid parameters (including size caps and
//! unreadable input files), 3 when `verify-strategy` reports FAIL.

pub mod emit;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::graph::{
    build_cayley, build_hadamard, Ambient, CayleyGraphSpec, Component, DenseGraph, HadamardParams,
};
use crate::group::{ConnectionSet, Convention};
use crate::products::{hadamard_product_chromatic, ProductKind};
use crate::spectra::{
    dense_spectrum, hadamard_quantum_chromatic_with, hadamard_spectrum_closed_form, hoffman_bound,
    spectrum_by_characters, WitnessPolicy, DEFAULT_CLUSTER_TOL,
};
use crate::strategy::{verify_coloring, QuantumColoring, Sampling, DEFAULT_TOLERANCE};

pub use emit::{emit, OutputFormat, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARAMETER: i32 = 2;
pub const EXIT_VERIFY_FAIL: i32 = 3;

/// Largest Hadamard order for dense paths without `--allow-slow`.
const DENSE_DEFAULT_MAX_N: usize = 8;

#[derive(Debug, Parser)]
#[command(name = "qchrom", version, about = "Spectra and quantum chromatic numbers of Hadamard graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a Hadamard or Cayley graph.
    Build(BuildArgs),
    /// Compute a graph spectrum.
    Spectrum(SpectrumArgs),
    /// Hoffman lower bound from the exact spectrum.
    Bound(SpectrumArgs),
    /// Exact quantum chromatic number of H_N.
    Chromatic(ChromaticArgs),
    /// Numerically verify the N-color quantum strategy.
    VerifyStrategy(VerifyArgs),
    /// Bounds for a product of two Hadamard graphs.
    Product(ProductArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ComponentArg {
    Full,
    Even,
}

impl From<ComponentArg> for Component {
    fn from(c: ComponentArg) -> Self {
        match c {
            ComponentArg::Full => Component::Full,
            ComponentArg::Even => Component::Even,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConventionArg {
    #[value(name = "pm")]
    PlusMinus,
    #[value(name = "01")]
    ZeroOne,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Character,
    ClosedForm,
    Dense,
}

#[derive(Debug, Clone, Args)]
pub struct GraphSource {
    /// Hadamard order N.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, value_enum, default_value = "even")]
    pub component: ComponentArg,
    /// Cayley graph from a connection-set file (one binary word per line).
    #[arg(long, conflicts_with_all = ["n", "edgelist"])]
    pub connection: Option<PathBuf>,
    /// Arbitrary graph from an edge-list file (dense method only).
    #[arg(long, conflicts_with = "n")]
    pub edgelist: Option<PathBuf>,
    /// Permit dense paths above N = 8.
    #[arg(long)]
    pub allow_slow: bool,
}

#[derive(Debug, Clone, Args)]
pub struct BuildArgs {
    #[command(flatten)]
    pub source: GraphSource,
    #[arg(long, value_enum, default_value = "pm")]
    pub convention: ConventionArg,
    #[arg(long, value_enum, default_value = "edgelist")]
    pub output: OutputFormat,
}

#[derive(Debug, Clone, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub source: GraphSource,
    #[arg(long, value_enum, default_value = "character")]
    pub method: Method,
    /// Eigenvalue clustering tolerance for the dense method.
    #[arg(long, default_value_t = DEFAULT_CLUSTER_TOL)]
    pub tol: f64,
    #[arg(long, value_enum, default_value = "text")]
    pub output: OutputFormat,
}

#[derive(Debug, Clone, Args)]
pub struct ChromaticArgs {
    #[arg(long)]
    pub n: usize,
    /// Sampled tuples for the strategy witness when N > 8.
    #[arg(long, default_value_t = 100_000)]
    pub sample: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Skip the numerical strategy witness.
    #[arg(long)]
    pub no_witness: bool,
    #[arg(long, value_enum, default_value = "text")]
    pub output: OutputFormat,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub n: usize,
    /// Sample this many tuples instead of exhaustive enumeration.
    #[arg(long)]
    pub sample: Option<usize>,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    pub tol: f64,
    /// Use omega = exp(2 pi i k / N).
    #[arg(long, default_value_t = 1)]
    pub root_power: usize,
    /// Accept a non-primitive root (negative control).
    #[arg(long)]
    pub allow_non_primitive: bool,
    #[arg(long, value_enum, default_value = "text")]
    pub output: OutputFormat,
}

#[derive(Debug, Clone, Args)]
pub struct ProductArgs {
    #[arg(long, value_parser = parse_kind)]
    pub kind: ProductKind,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub m: usize,
    #[arg(long, value_enum, default_value = "text")]
    pub output: OutputFormat,
}

fn parse_kind(s: &str) -> std::result::Result<ProductKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Parameter(format!("cannot read {}: {e}", path.display())))
}

fn require_format(graph: bool, format: OutputFormat) -> Result<()> {
    if emit::supports(graph, format) {
        Ok(())
    } else {
        Err(Error::Parameter(format!(
            "output format {format:?} not supported by this command"
        )))
    }
}

impl GraphSource {
    fn hadamard_n(&self) -> Result<usize> {
        self.n.ok_or_else(|| {
            Error::Parameter("one of --n, --connection or --edgelist is required".into())
        })
    }

    fn check_dense_cap(&self, n: usize) -> Result<()> {
        if n > DENSE_DEFAULT_MAX_N && !self.allow_slow {
            return Err(Error::Parameter(format!(
                "dense path for N = {n} needs --allow-slow"
            )));
        }
        Ok(())
    }

    fn cayley_spec(&self) -> Result<CayleyGraphSpec> {
        if let Some(path) = &self.connection {
            let conn = ConnectionSet::parse(&read(path)?)?;
            return CayleyGraphSpec::new(conn.word_len(), conn, Ambient::Coordinates);
        }
        if self.edgelist.is_some() {
            return Err(Error::Parameter(
                "an edge list has no group structure; use --method dense".into(),
            ));
        }
        let n = self.hadamard_n()?;
        match self.component {
            ComponentArg::Even => CayleyGraphSpec::hadamard_even(n),
            ComponentArg::Full => CayleyGraphSpec::hadamard_full(n),
        }
    }

    fn dense_graph(&self, convention: Convention) -> Result<DenseGraph> {
        if let Some(path) = &self.edgelist {
            return DenseGraph::parse_edge_list(&read(path)?, None);
        }
        if self.connection.is_some() {
            let spec = self.cayley_spec()?;
            if spec.group_dim() > DENSE_DEFAULT_MAX_N && !self.allow_slow {
                return Err(Error::Parameter(format!(
                    "dense Cayley graph of dimension {} needs --allow-slow",
                    spec.group_dim()
                )));
            }
            return build_cayley(&spec);
        }
        let n = self.hadamard_n()?;
        self.check_dense_cap(n)?;
        build_hadamard(HadamardParams::new(n, self.component.into()).with_convention(convention))
    }
}

fn exact_spectrum(args: &SpectrumArgs) -> Result<(crate::spectra::ExactSpectrum, &'static str)> {
    match args.method {
        Method::Character => Ok((spectrum_by_characters(&args.source.cayley_spec()?)?, "character")),
        Method::ClosedForm => {
            if args.source.connection.is_some() || args.source.edgelist.is_some() {
                return Err(Error::Parameter(
                    "closed-form method applies to Hadamard graphs only".into(),
                ));
            }
            let n = args.source.hadamard_n()?;
            Ok((
                hadamard_spectrum_closed_form(n, args.source.component.into())?,
                "closed-form",
            ))
        }
        Method::Dense => Err(Error::Parameter(
            "exact spectrum needs --method character or closed-form".into(),
        )),
    }
}

fn set_thread_limit() -> Result<()> {
    if let Ok(value) = std::env::var("QCHROM_THREADS") {
        let threads: usize = value
            .parse()
            .ok()
            .filter(|&t| t > 0)
            .ok_or_else(|| Error::Parameter(format!("QCHROM_THREADS must be a positive integer, got {value:?}")))?;
        // the global pool can only be set once per process
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    Ok(())
}

/// Runs one command, returning the exit code and the text for standard output.
pub fn execute(cli: &Cli) -> Result<(i32, String)> {
    set_thread_limit()?;
    match &cli.command {
        Command::Build(args) => {
            require_format(true, args.output)?;
            let convention = match args.convention {
                ConventionArg::PlusMinus => Convention::PlusMinusOne,
                ConventionArg::ZeroOne => Convention::ZeroOne,
            };
            let mut g = args.source.dense_graph(convention)?;
            if g.labels().is_some() {
                g = g.to_convention(convention)?;
            }
            Ok((EXIT_OK, emit(&Report::Graph(&g), args.output)?))
        }
        Command::Spectrum(args) => {
            require_format(false, args.output)?;
            if args.method == Method::Dense {
                let g = args.source.dense_graph(Convention::PlusMinusOne)?;
                let s = dense_spectrum(&g, args.tol)?;
                return Ok((EXIT_OK, emit(&Report::Float { spectrum: &s, source: "dense" }, args.output)?));
            }
            let (s, source) = exact_spectrum(args)?;
            Ok((EXIT_OK, emit(&Report::Exact { spectrum: &s, source }, args.output)?))
        }
        Command::Bound(args) => {
            require_format(false, args.output)?;
            let (s, _) = exact_spectrum(args)?;
            let h = hoffman_bound(&s)?;
            Ok((EXIT_OK, emit(&Report::Hoffman(&h), args.output)?))
        }
        Command::Chromatic(args) => {
            require_format(false, args.output)?;
            let policy = if args.no_witness {
                WitnessPolicy::Skip
            } else if args.n <= 8 {
                WitnessPolicy::Verify(Sampling::Exhaustive)
            } else {
                WitnessPolicy::Verify(Sampling::Sampled { count: args.sample, seed: args.seed })
            };
            let record = hadamard_quantum_chromatic_with(args.n, policy)?;
            Ok((EXIT_OK, emit(&Report::Chromatic(&record), args.output)?))
        }
        Command::VerifyStrategy(args) => {
            require_format(false, args.output)?;
            let coloring = if args.allow_non_primitive {
                QuantumColoring::with_root_power_unchecked(args.n, args.root_power)?
            } else {
                QuantumColoring::with_root_power(args.n, args.root_power)?
            };
            let sampling = match args.sample {
                Some(count) => Sampling::Sampled { count, seed: args.seed },
                None => Sampling::Exhaustive,
            };
            let report = verify_coloring(&coloring, sampling, args.tol)?;
            let code = if report.passed() { EXIT_OK } else { EXIT_VERIFY_FAIL };
            Ok((code, emit(&Report::Strategy(&report), args.output)?))
        }
        Command::Product(args) => {
            require_format(false, args.output)?;
            let report = hadamard_product_chromatic(args.n, args.m, args.kind)?;
            Ok((EXIT_OK, emit(&Report::Product(&report), args.output)?))
        }
    }
}

/// Parses `args` (including the program name), runs the command and writes
/// output and diagnostics. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARAMETER } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let first = rendered.lines().next().unwrap_or("invalid arguments");
                let _ = writeln!(err, "{first}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return code;
        }
    };
    match execute(&cli) {
        Ok((code, text)) => {
            let _ = out.write_all(text.as_bytes());
            if code == EXIT_VERIFY_FAIL {
                let _ = writeln!(err, "error: strategy verification FAILED");
            }
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_PARAMETER
        }
    }
}
