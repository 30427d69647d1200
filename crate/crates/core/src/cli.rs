//! The `leecodes` command line.
//!
//! Exit codes: 0 success, 1 internal error, 2 invalid arguments, 3 input format
//! error, 4 inconclusive computation.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde::Serialize;

use crate::analyzer::{self, AnalyzeOptions, DensityDoc};
use crate::constructions;
use crate::error::Error;
use crate::hadamard;
use crate::intlat::text;
use crate::intlat::{rational_string, Lattice};
use crate::xform::{self, TransformSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_FORMAT: i32 = 3;
pub const EXIT_INCONCLUSIVE: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "leecodes", version, about = "Construct and verify Lee-metric lattice codes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a generator matrix for a named family.
    Construct(ConstructArgs),
    /// Report the parameters and certificate of a code given by a matrix file.
    Analyze(AnalyzeArgs),
    /// Print the packing-density table as CSV.
    Density(DensityArgs),
    /// Apply the continuous or discrete Hadamard transformation to a point stream.
    Transform(TransformArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Hadamard,
    Gij,
    Minkowski3,
    Dim4,
    #[value(name = "n2perfect")]
    N2Perfect,
    Gn,
    Double,
    Scaled,
    Gw,
    Kronecker,
    Puncture,
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    pub family: Family,
    /// Sylvester order 2^k.
    #[arg(long)]
    pub k: Option<u32>,
    /// Paley prime q = 3 (mod 4), order q + 1.
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long)]
    pub i: Option<u32>,
    #[arg(long)]
    pub j: Option<u32>,
    /// Minimum distance of scaled families.
    #[arg(long)]
    pub d: Option<u64>,
    /// Length.
    #[arg(long)]
    pub n: Option<usize>,
    /// Number of doublings applied to G_n.
    #[arg(long, default_value_t = 1)]
    pub times: u32,
    /// Input matrix for double and puncture.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub a: Option<PathBuf>,
    #[arg(long)]
    pub b: Option<PathBuf>,
    /// Write the matrix here and print only the parameter document.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Recompute the minimum distance by brute force instead of using the nominal value.
    #[arg(long)]
    pub verify: bool,
    /// Weight cap for brute-force distance searches.
    #[arg(long, default_value_t = 64)]
    pub min_dist_cap: u64,
}

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    /// Matrix file, or `-` for standard input.
    pub file: PathBuf,
    #[arg(long, default_value_t = 64)]
    pub min_dist_cap: u64,
    #[arg(long, default_value_t = analyzer::DEFAULT_COSET_CAP)]
    pub coset_cap: u64,
}

#[derive(Args, Debug)]
pub struct DensityArgs {
    #[arg(long, default_value_t = constructions::MAX_TABLE_N)]
    pub max_n: usize,
    /// Emit JSON with the published lower bounds alongside.
    #[arg(long)]
    pub json: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Cont,
    Disc,
}

#[derive(Args, Debug)]
pub struct TransformArgs {
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(["2", "4"]))]
    pub d: String,
    #[arg(long, value_enum)]
    pub mode: Mode,
    /// Point file; standard input when absent.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Parse { .. } | Error::Dimension(_) | Error::Singular => EXIT_FORMAT,
            Error::Inconclusive { .. } | Error::CapExceeded { .. } => EXIT_INCONCLUSIVE,
            Error::InvalidParameter(_) | Error::Structure(_) | Error::Integrality(_) | Error::Asymmetric(_) => {
                EXIT_USAGE
            }
            Error::Inconsistency(_) => EXIT_INTERNAL,
        };
        let mut message = e.to_string();
        if let Error::Inconclusive { .. } = e {
            message.push_str(" (try a larger --min-dist-cap)");
        }
        Failure { code, message }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: msg.into() }
}

fn io_failure(path: &Path, e: io::Error) -> Failure {
    Failure { code: EXIT_FORMAT, message: format!("{}: {}", path.display(), e) }
}

fn read_input(path: Option<&Path>, stdin: &mut dyn Read) -> Result<String, Failure> {
    match path {
        Some(p) if p != Path::new("-") => fs::read_to_string(p).map_err(|e| io_failure(p, e)),
        _ => {
            let mut s = String::new();
            stdin.read_to_string(&mut s).map_err(|e| io_failure(Path::new("<stdin>"), e))?;
            Ok(s)
        }
    }
}

fn read_lattice(path: &Path) -> Result<Lattice, Failure> {
    let text = fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    Ok(text::parse_lattice(&text)?)
}

fn need<T: Copy>(v: Option<T>, flag: &str, family: Family) -> Result<T, Failure> {
    v.ok_or_else(|| usage(format!("{:?} needs --{}", family, flag).to_lowercase()))
}

fn need_path<'a>(v: &'a Option<PathBuf>, flag: &str, family: Family) -> Result<&'a Path, Failure> {
    v.as_deref().ok_or_else(|| usage(format!("{:?} needs --{}", family, flag).to_lowercase()))
}

/// Parameters of a constructed code. Field order is the output key order.
#[derive(Serialize, Debug)]
pub struct ParamsDoc {
    pub family: String,
    pub n: usize,
    pub d: u64,
    pub d_source: &'static str,
    pub volume: String,
    pub q: String,
    pub density: DensityDoc,
}

fn build(args: &ConstructArgs) -> Result<(Lattice, Option<u64>), Failure> {
    let f = args.family;
    Ok(match f {
        Family::Hadamard => {
            let h = match (args.k, args.q) {
                (Some(k), None) => hadamard::sylvester(k),
                (None, Some(q)) => hadamard::paley(q)?,
                _ => return Err(usage("hadamard needs exactly one of --k or --q")),
            };
            let n = h.order() as u64;
            (hadamard::hadamard_code(&h), Some(n))
        }
        Family::Gij => {
            let (i, j) = (need(args.i, "i", f)?, need(args.j, "j", f)?);
            (hadamard::g_matrix(i, j)?, Some(1u64 << j))
        }
        Family::Minkowski3 => {
            let d = need(args.d, "d", f)?;
            (constructions::minkowski3(d)?, Some(d))
        }
        Family::Dim4 => unreachable!("handled separately"),
        Family::N2Perfect => {
            let d = need(args.d, "d", f)?;
            (constructions::n2_perfect(d)?, Some(d))
        }
        Family::Gn => (constructions::gn(need(args.n, "n", f)?)?, Some(4)),
        Family::Double => {
            let mut lat = match (&args.input, args.n) {
                (Some(p), None) => read_lattice(p)?,
                (None, Some(n)) => constructions::gn(n)?,
                _ => return Err(usage("double needs exactly one of --n or --input")),
            };
            for _ in 0..args.times {
                lat = constructions::double(&lat)?;
            }
            (lat, Some(4))
        }
        Family::Scaled => {
            let (n, d) = (need(args.n, "n", f)?, need(args.d, "d", f)?);
            (constructions::scaled_diameter_code(n, d)?, Some(d))
        }
        Family::Gw => (constructions::gw_perfect(need(args.n, "n", f)?)?, Some(3)),
        Family::Kronecker => {
            let a = read_lattice(need_path(&args.a, "a", f)?)?;
            let b = read_lattice(need_path(&args.b, "b", f)?)?;
            (a.kronecker(&b), None)
        }
        Family::Puncture => {
            let lat = read_lattice(need_path(&args.input, "input", f)?)?;
            (lat.canonical()?.puncture()?, None)
        }
    })
}

fn cmd_construct(args: &ConstructArgs, out: &mut dyn Write) -> Result<(), Failure> {
    if args.family == Family::Dim4 {
        let d = need(args.d, "d", Family::Dim4)?;
        let report = constructions::dim4_reconciliation(d)?;
        let lat = constructions::dim4(d)?;
        return emit(args, &text::write_lattice(&lat), &report, out);
    }
    let (lat, nominal) = build(args)?;
    let (d, source) = match nominal {
        Some(d) if !args.verify => (d, "nominal"),
        _ => (analyzer::min_distance(&lat, args.min_dist_cap)?.d, "computed"),
    };
    let params = lat.params(d)?;
    let doc = ParamsDoc {
        family: format!("{:?}", args.family).to_lowercase(),
        n: params.n,
        d,
        d_source: source,
        volume: params.volume.to_string(),
        q: params.q.to_string(),
        density: DensityDoc::new(&params.density),
    };
    emit(args, &text::write_lattice(&lat), &doc, out)
}

fn emit<T: Serialize>(args: &ConstructArgs, matrix: &str, doc: &T, out: &mut dyn Write) -> Result<(), Failure> {
    let json = serde_json::to_string(doc).map_err(|e| Failure::from(Error::Inconsistency(e.to_string())))?;
    let res = match &args.out {
        Some(p) => {
            fs::write(p, matrix).map_err(|e| io_failure(p, e))?;
            writeln!(out, "{}", json)
        }
        // the parameter line is a comment, so the output still parses as a matrix file
        None => writeln!(out, "{}# params {}", matrix, json),
    };
    res.map_err(|e| io_failure(Path::new("<stdout>"), e))
}

fn cmd_analyze(args: &AnalyzeArgs, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<(), Failure> {
    let text = read_input(Some(&args.file), stdin)?;
    let lat = text::parse_lattice(&text)?;
    let report =
        analyzer::analyze(&lat, AnalyzeOptions { min_dist_cap: args.min_dist_cap, coset_cap: args.coset_cap })?;
    let json = serde_json::to_string_pretty(&report).map_err(|e| Failure::from(Error::Inconsistency(e.to_string())))?;
    writeln!(out, "{}", json).map_err(|e| io_failure(Path::new("<stdout>"), e))
}

#[derive(Serialize)]
struct SurveyBound {
    n: usize,
    density: DensityDoc,
}

#[derive(Serialize)]
struct DensityJson<'a> {
    rows: &'a [constructions::DensityRow],
    survey_lower_bounds: Vec<SurveyBound>,
}

fn cmd_density(args: &DensityArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let rows = constructions::density_table(args.max_n)?;
    let body = if args.json {
        let survey_lower_bounds = (2..=args.max_n)
            .filter_map(|n| {
                constructions::survey_lower_bound(n).map(|r| SurveyBound { n, density: DensityDoc::new(&r) })
            })
            .collect();
        let doc = DensityJson { rows: &rows, survey_lower_bounds };
        let mut s =
            serde_json::to_string_pretty(&doc).map_err(|e| Failure::from(Error::Inconsistency(e.to_string())))?;
        s.push('\n');
        s
    } else {
        constructions::density_csv(&rows)?
    };
    out.write_all(body.as_bytes()).map_err(|e| io_failure(Path::new("<stdout>"), e))
}

fn render_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        rational_string(r)
    }
}

fn cmd_transform(args: &TransformArgs, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<(), Failure> {
    let k = if args.d == "2" { 1 } else { 2 };
    let h = hadamard::sylvester(2 * k);
    let text = read_input(args.input.as_deref(), stdin)?;
    let points = text::parse_points(&text)?;
    let mut buf = String::new();
    match args.mode {
        Mode::Cont => {
            for p in &points {
                let v = xform::t_apply(&h, p)?;
                let coords = v.to_rationals().expect("square order");
                let line: Vec<String> = coords.iter().map(render_rational).collect();
                buf.push_str(&line.join(" "));
                buf.push('\n');
            }
        }
        Mode::Disc => {
            let spec = TransformSpec::new(h)?;
            for p in &points {
                let img = xform::discrete_transform(&spec, p)?;
                let line: Vec<String> = img.iter().map(|v| v.to_string()).collect();
                buf.push_str(&line.join(" "));
                buf.push('\n');
            }
        }
    }
    out.write_all(buf.as_bytes()).map_err(|e| io_failure(Path::new("<stdout>"), e))
}

/// Runs one command against the given streams and returns the exit code.
pub fn run_with<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK { write!(out, "{}", rendered) } else { write!(err, "{}", rendered) };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Construct(a) => cmd_construct(a, out),
        Command::Analyze(a) => cmd_analyze(a, stdin, out),
        Command::Density(a) => cmd_density(a, out),
        Command::Transform(a) => cmd_transform(a, stdin, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

pub fn run() -> i32 {
    let stdin = io::stdin();
    let stdout = io::stdout();
    let stderr = io::stderr();
    let code = run_with(std::env::args_os(), &mut stdin.lock(), &mut stdout.lock(), &mut stderr.lock());
    let _ = io::stdout().flush();
    code
}
