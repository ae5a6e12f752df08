//! Command-line front end: `catalog`, `decompose` and `verify`.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde_json::json;

use crate::cone_model::{catalog, CATALOG_NAMES};
use crate::error::{Error, Result};
use crate::gamma_matrices::{gamma_matrix, ThetaParams};
use crate::sign_algebra::hadamard;
use crate::structured_factors::{factored_gamma_matrix, fmt_complex};
use crate::verification::{normalized_residual, run_suite, ResidualReport, Suite, SuiteConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable capping the worker thread count.
pub const THREADS_ENV: &str = "CONE_GAMMA_THREADS";

#[derive(Debug, Parser)]
#[command(name = "cone-gamma", version, about = "Gamma matrices of homogeneous-cone zeta functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the built-in cones with their derived data.
    Catalog {
        #[arg(long)]
        json: bool,
    },
    /// Print the factorization of the conjugated gamma matrix.
    Decompose(DecomposeArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct DecomposeArgs {
    #[arg(long, conflicts_with = "r")]
    cone: Option<String>,
    #[arg(long, required_unless_present = "cone")]
    r: Option<usize>,
    /// `all:<v>` or `k,j:<v>`; repeat the flag or separate entries with `;`.
    #[arg(long)]
    theta: Vec<String>,
    /// Comma-separated complex vector, requires `--cone`.
    #[arg(long, conflicts_with = "alpha", requires = "cone", allow_hyphen_values = true)]
    s: Option<String>,
    #[arg(long, required_unless_present = "s", allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, required_unless_present = "config")]
    suite: Option<String>,
    #[arg(long)]
    cone: Option<String>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    count: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    tol: Option<f64>,
    /// Print JSON lines instead of the summary table.
    #[arg(long)]
    json: bool,
    /// Also write JSON lines to this file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON sweep configuration; flags given alongside override it.
    #[arg(long)]
    config: Option<PathBuf>,
}

/// Usage problems detected after argument parsing.
#[derive(Debug)]
struct Usage(String);

/// Parses `a`, `a+bi`, `a-bi`, `bi`, `i` and `-i`.
pub fn parse_complex(text: &str) -> Result<Complex64> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::Parse(format!("invalid complex literal '{text}'"));
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix('i') else {
        return t.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| bad());
    };
    // split at the last sign that is not a leading sign or an exponent sign
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let imag = |s: &str| -> Result<f64> {
        match s {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => s.parse::<f64>().map_err(|_| bad()),
        }
    };
    match split {
        Some(k) => {
            let re = body[..k].parse::<f64>().map_err(|_| bad())?;
            Ok(Complex64::new(re, imag(&body[k..])?))
        }
        None => Ok(Complex64::new(0.0, imag(body)?)),
    }
}

pub fn parse_complex_vector(text: &str) -> Result<Vec<Complex64>> {
    text.split(',').map(parse_complex).collect()
}

/// Applies `all:<v>` and `k,j:<v>` entries in order on top of `base`.
pub fn parse_theta(specs: &[String], base: ThetaParams) -> Result<ThetaParams> {
    let r = base.rank();
    let mut theta = base;
    for entry in specs.iter().flat_map(|s| s.split(';')).filter(|s| !s.trim().is_empty()) {
        let bad = || Error::Parse(format!("invalid theta entry '{entry}'"));
        let (key, value) = entry.split_once(':').ok_or_else(bad)?;
        let v: f64 = value.trim().parse().map_err(|_| bad())?;
        if key.trim() == "all" {
            theta = ThetaParams::uniform(r, v);
            continue;
        }
        let (k, j) = key.split_once(',').ok_or_else(bad)?;
        let k: usize = k.trim().parse().map_err(|_| bad())?;
        let j: usize = j.trim().parse().map_err(|_| bad())?;
        if !(1 <= j && j < k && k <= r) {
            return Err(Error::Parse(format!("theta index ({k},{j}) needs 1 <= j < k <= {r}")));
        }
        theta.set(k, j, v);
    }
    Ok(theta)
}

/// Runs the command line and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    configure_threads();
    let outcome = match cli.command {
        Command::Catalog { json } => cmd_catalog(json, out).map(|_| EXIT_OK),
        Command::Decompose(args) => cmd_decompose(&args, out).map(|_| EXIT_OK),
        Command::Verify(args) => cmd_verify(&args, out),
    };
    match outcome {
        Ok(code) => code,
        Err(Failure::Usage(Usage(msg))) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Math(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_FAILURE
        }
        Err(Failure::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_FAILURE
        }
    }
}

#[derive(Debug)]
enum Failure {
    Usage(Usage),
    Math(Error),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(msg) | Error::UnknownCone(msg) => Failure::Usage(Usage(msg)),
            other => Failure::Math(other),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var(THREADS_ENV).ok().and_then(|v| v.parse::<usize>().ok()) {
        // a second call in the same process keeps the existing pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn rationals(v: &crate::cone_model::RationalVector) -> Vec<String> {
    v.0.iter().map(|x| x.to_string()).collect()
}

fn cmd_catalog(as_json: bool, out: &mut dyn Write) -> std::result::Result<(), Failure> {
    for name in CATALOG_NAMES {
        let entry = catalog(name)?;
        let cone = &entry.cone;
        let (p, q, d) = cone.derived_vectors();
        let n: Vec<[i64; 3]> = cone.descriptor().n;
        let condition = cone.completion_condition();
        if as_json {
            let line = json!({
                "name": name,
                "rank": cone.rank(),
                "dimension": cone.dimension(),
                "n": n,
                "sigma": cone.sigma(),
                "sigma_star": cone.sigma_star(),
                "p": rationals(&p),
                "q": rationals(&q),
                "d": rationals(&d),
                "m": rationals(&entry.measure_exponents),
                "m_star": rationals(&entry.dual_measure_exponents),
                "completion": condition,
            });
            writeln!(out, "{line}")?;
        } else {
            let status = match condition {
                Some(m) => format!("holds (m = {m})"),
                None => "fails".to_string(),
            };
            writeln!(out, "{name}: rank {}, dimension {}", cone.rank(), cone.dimension())?;
            writeln!(out, "  n_kj        {}", fmt_n(&n))?;
            writeln!(out, "  sigma       {:?}", cone.sigma())?;
            writeln!(out, "  sigma*      {:?}", cone.sigma_star())?;
            writeln!(out, "  p q d       {:?} {:?} {:?}", rationals(&p), rationals(&q), rationals(&d))?;
            writeln!(out, "  m m*        {:?} {:?}", rationals(&entry.measure_exponents), rationals(&entry.dual_measure_exponents))?;
            writeln!(out, "  completion  {status}")?;
        }
    }
    Ok(())
}

fn fmt_n(n: &[[i64; 3]]) -> String {
    if n.is_empty() {
        return "none".into();
    }
    n.iter().map(|[k, j, v]| format!("n{k}{j}={v}")).collect::<Vec<_>>().join(" ")
}

fn cmd_decompose(args: &DecomposeArgs, out: &mut dyn Write) -> std::result::Result<(), Failure> {
    let (r, base_theta, alpha, label) = match &args.cone {
        Some(name) => {
            let cone = catalog(name)?.cone;
            let alpha = match (&args.s, &args.alpha) {
                (Some(s), _) => {
                    let s = parse_complex_vector(s)?;
                    check_len(cone.rank(), s.len())?;
                    cone.alpha_from_s(&s)
                }
                (None, Some(a)) => parse_complex_vector(a)?,
                (None, None) => return Err(Failure::Usage(Usage("need --s or --alpha".into()))),
            };
            (cone.rank(), ThetaParams::from_cone(&cone), alpha, name.clone())
        }
        None => {
            let r = args.r.ok_or_else(|| Failure::Usage(Usage("need --cone or --r".into())))?;
            let a = args
                .alpha
                .as_ref()
                .ok_or_else(|| Failure::Usage(Usage("--r needs --alpha".into())))?;
            if r < 2 {
                return Err(Failure::Usage(Usage("rank must be at least 2".into())));
            }
            (r, ThetaParams::zeros(r), parse_complex_vector(a)?, format!("r={r}"))
        }
    };
    check_len(r, alpha.len())?;
    let theta = parse_theta(&args.theta, base_theta)?;
    let product = factored_gamma_matrix(r, &alpha, &theta)?;
    let direct = hadamard(r)?.sandwich(&gamma_matrix(r, &alpha, &theta)?);
    let residual = normalized_residual(&direct, &product.assembled());
    if args.json {
        let factors: Vec<_> = product
            .factors()
            .iter()
            .map(|f| json!({"label": f.label, "display": f.label.to_string()}))
            .collect();
        let line = json!({"target": label, "rank": r, "alpha": alpha, "factors": factors, "residual": residual});
        writeln!(out, "{line}")?;
    } else {
        writeln!(out, "{label}: alpha = [{}]", alpha.iter().map(|z| fmt_complex(*z)).collect::<Vec<_>>().join(", "))?;
        for (i, f) in product.factors().iter().enumerate() {
            writeln!(out, "  {:>2}. {}", i + 1, f.label)?;
        }
        writeln!(out, "assembly residual {residual:.3e}")?;
    }
    Ok(())
}

fn check_len(expected: usize, got: usize) -> std::result::Result<(), Failure> {
    if expected != got {
        return Err(Failure::Usage(Usage(format!("expected {expected} components, got {got}"))));
    }
    Ok(())
}

fn verify_config(args: &VerifyArgs) -> std::result::Result<SuiteConfig, Failure> {
    let mut config = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            serde_json::from_str::<SuiteConfig>(&text)
                .map_err(|e| Failure::Usage(Usage(format!("config {}: {e}", path.display()))))?
        }
        None => SuiteConfig::new(Suite::Decomposition),
    };
    if let Some(name) = &args.suite {
        config.suite = Suite::parse(name).ok_or_else(|| {
            let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
            Failure::Usage(Usage(format!("unknown suite '{name}', expected one of {}", names.join(", "))))
        })?;
    }
    if let Some(c) = &args.cone {
        catalog(c)?;
        config.cone = Some(c.clone());
    }
    if args.r.is_some() {
        config.r = args.r;
    }
    if let Some(c) = args.count {
        config.count = c;
    }
    if let Some(s) = args.seed {
        config.seed = s;
    }
    if args.tol.is_some() {
        config.tol = args.tol;
    }
    if config.count == 0 {
        return Err(Failure::Usage(Usage("count must be at least 1".into())));
    }
    if matches!(config.tol, Some(t) if !(t > 0.0)) {
        return Err(Failure::Usage(Usage("tolerance must be positive".into())));
    }
    Ok(config)
}

fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> std::result::Result<i32, Failure> {
    let config = verify_config(args)?;
    let reports = run_suite(&config)?;
    if let Some(path) = &args.out {
        let mut file = BufWriter::new(File::create(path)?);
        write_json_lines(&reports, &mut file)?;
        file.flush()?;
    }
    if args.json {
        write_json_lines(&reports, out)?;
    } else {
        write_summary(&reports, out)?;
    }
    Ok(if reports.iter().all(|r| r.passed) { EXIT_OK } else { EXIT_FAILURE })
}

pub fn write_json_lines(reports: &[ResidualReport], out: &mut dyn Write) -> std::io::Result<()> {
    for r in reports {
        writeln!(out, "{}", serde_json::to_string(r).map_err(std::io::Error::other)?)?;
    }
    Ok(())
}

/// One line per identity name: count, failures, max residual and tolerance.
pub fn write_summary(reports: &[ResidualReport], out: &mut dyn Write) -> std::io::Result<()> {
    let mut names: Vec<&str> = Vec::new();
    for r in reports {
        if !names.contains(&r.identity_name.as_str()) {
            names.push(&r.identity_name);
        }
    }
    writeln!(out, "{:<32} {:>6} {:>6} {:>12} {:>10} {:>9}", "identity", "count", "failed", "max residual", "tolerance", "time (s)")?;
    for name in names {
        let group: Vec<&ResidualReport> = reports.iter().filter(|r| r.identity_name == name).collect();
        let failed = group.iter().filter(|r| !r.passed).count();
        let max = group.iter().map(|r| r.residual).fold(0.0, f64::max);
        let tol = group[0].tolerance;
        let time: f64 = group.iter().map(|r| r.wall_time).sum();
        let kind = if group[0].control { " (control)" } else { "" };
        writeln!(
            out,
            "{:<32} {:>6} {:>6} {:>12.3e} {:>10.1e} {:>9.3}",
            format!("{name}{kind}"),
            group.len(),
            failed,
            max,
            tol,
            time
        )?;
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    writeln!(out, "{} reports, {} failed", reports.len(), failed)
}
