//! Command-line surface: test, orbits, minpoly, spectral, bench, sweep, and
//! plot-data subcommands over the library.
//!
//! Exit codes: 0 prime/success, 1 composite or sweep disagreement, 2 internal
//! error, 64 malformed input, 65 domain error, 73 unwritable output path.

use crate::baselines::MethodId;
use crate::bench::{self, BenchInput, SuiteConfig};
use crate::error::Error;
use crate::minpoly;
use crate::primality;
use crate::spectral;
use crate::spectrum;
use crate::galois;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use std::io::Write;
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_COMPOSITE: i32 = 1;
pub const EXIT_ERROR: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DOMAIN: i32 = 65;
pub const EXIT_CANT_WRITE: i32 = 73;

/// Structure analysis above this n is refused without --force.
const LARGE_N_GUARD: u64 = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "circulant-primality", version, about = "Deterministic primality testing via circulant-matrix spectra", disable_help_subcommand = true)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalOpts {
    /// Starting decimal digits for high-precision expansions
    #[arg(long, global = true, env = "CIRCULANT_PRECISION")]
    precision: Option<u32>,
    /// Seed for Miller-Rabin witness generation
    #[arg(long, global = true, env = "CIRCULANT_SEED", default_value_t = 1)]
    seed: u64,
    /// Miller-Rabin rounds
    #[arg(long, global = true, default_value_t = 20)]
    mr_rounds: u32,
    /// Orbit-count/factorization branch threshold of the full test
    #[arg(long, global = true, default_value_t = primality::DEFAULT_BRANCH_THRESHOLD)]
    branch_threshold: u64,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Write output to this path instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Test a single integer for primality
    Test {
        n: String,
        /// trial-division | optimized-trial-division | miller-rabin | aks |
        /// circulant-full | circulant-simplified
        #[arg(long, default_value = "circulant-full")]
        method: String,
    },
    /// Galois-orbit partition of the eigenvalue indices
    Orbits {
        n: String,
        #[arg(long)]
        force: bool,
    },
    /// Irreducible factors of the minimal polynomial
    Minpoly {
        n: String,
        #[arg(long)]
        force: bool,
    },
    /// Spectral statistic and phase-point classification
    Spectral {
        n: String,
        #[arg(long)]
        force: bool,
    },
    /// Timing grid over methods and magnitudes
    Bench {
        /// Key-value config file (methods, inputs, repetitions, timeout_seconds, seed)
        #[arg(long)]
        config: Option<PathBuf>,
        /// Comma-separated method list (overrides config)
        #[arg(long)]
        methods: Option<String>,
        /// Comma-separated inputs: integers or 10^k anchors (overrides config)
        #[arg(long)]
        inputs: Option<String>,
        #[arg(long)]
        repetitions: Option<u32>,
        #[arg(long)]
        timeout_seconds: Option<f64>,
        /// Use the built-in comparison-table grid (6 methods x 4 magnitudes)
        #[arg(long)]
        comparison_table: bool,
        /// Use the built-in scaling grid (anchors 10^2..10^15)
        #[arg(long)]
        scaling: bool,
    },
    /// Agreement sweep between methods over a contiguous range
    Sweep {
        lo: String,
        hi: String,
        /// Comma-separated method list; the first is the reference
        #[arg(long)]
        methods: String,
    },
    /// Emit plot datasets as CSV
    PlotData {
        /// coefficients | phase | eigenvalues
        kind: String,
        #[arg(long)]
        from: Option<String>,
        #[arg(long)]
        to: Option<String>,
        /// Single-n input (eigenvalues)
        #[arg(long)]
        n: Option<String>,
        #[arg(long)]
        force: bool,
    },
}

/// Entry point used by the binary; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(code) => code,
        Err(CliError::Exit(code, msg)) => {
            if !msg.is_empty() {
                eprintln!("error: {msg}");
            }
            code
        }
    }
}

enum CliError {
    Exit(i32, String),
}

type CliResult = Result<i32, CliError>;

fn usage_err(msg: impl Into<String>) -> CliError {
    CliError::Exit(EXIT_USAGE, msg.into())
}

fn domain_err(msg: impl Into<String>) -> CliError {
    CliError::Exit(EXIT_DOMAIN, msg.into())
}

fn map_lib_err(e: Error) -> CliError {
    match e {
        Error::Domain(m) => domain_err(m),
        Error::Io(e) => CliError::Exit(EXIT_CANT_WRITE, e.to_string()),
        other => CliError::Exit(EXIT_ERROR, other.to_string()),
    }
}

fn parse_big(s: &str, what: &str) -> Result<BigUint, CliError> {
    s.trim()
        .parse::<BigUint>()
        .map_err(|_| usage_err(format!("{what} must be a nonnegative integer, got '{s}'")))
}

fn parse_small(s: &str, what: &str) -> Result<u64, CliError> {
    parse_big(s, what)?
        .to_u64()
        .ok_or_else(|| domain_err(format!("{what} too large for structure analysis")))
}

fn guard_large(n: u64, force: bool, what: &str) -> Result<(), CliError> {
    if n > LARGE_N_GUARD && !force {
        return Err(domain_err(format!(
            "{what} for n = {n} exceeds the n <= {LARGE_N_GUARD} guard (orbit work grows \
             quadratically); pass --force to run anyway"
        )));
    }
    Ok(())
}

fn emit(global: &GlobalOpts, content: &str) -> Result<(), CliError> {
    match &global.output {
        None => {
            print!("{content}");
            if !content.ends_with('\n') {
                println!();
            }
            Ok(())
        }
        Some(path) => {
            let write = || -> std::io::Result<()> {
                let mut f = std::fs::File::create(path)?;
                f.write_all(content.as_bytes())?;
                Ok(())
            };
            write().map_err(|e| {
                CliError::Exit(EXIT_CANT_WRITE, format!("cannot write {}: {e}", path.display()))
            })
        }
    }
}

fn dispatch(cli: &Cli) -> CliResult {
    match &cli.command {
        Command::Test { n, method } => cmd_test(&cli.global, n, method),
        Command::Orbits { n, force } => cmd_orbits(&cli.global, n, *force),
        Command::Minpoly { n, force } => cmd_minpoly(&cli.global, n, *force),
        Command::Spectral { n, force } => cmd_spectral(&cli.global, n, *force),
        Command::Bench {
            config,
            methods,
            inputs,
            repetitions,
            timeout_seconds,
            comparison_table,
            scaling,
        } => cmd_bench(
            &cli.global,
            config.as_deref(),
            methods.as_deref(),
            inputs.as_deref(),
            *repetitions,
            *timeout_seconds,
            *comparison_table,
            *scaling,
        ),
        Command::Sweep { lo, hi, methods } => cmd_sweep(&cli.global, lo, hi, methods),
        Command::PlotData { kind, from, to, n, force } => {
            cmd_plot_data(&cli.global, kind, from.as_deref(), to.as_deref(), n.as_deref(), *force)
        }
    }
}

fn cmd_test(global: &GlobalOpts, n_str: &str, method_str: &str) -> CliResult {
    let n = parse_big(n_str, "n")?;
    if n < BigUint::from(2u32) {
        return Err(domain_err(format!("primality is defined for n >= 2, got {n}")));
    }
    let method = MethodId::parse(method_str, global.mr_rounds, global.seed)
        .map_err(|e| usage_err(e.to_string()))?;
    let budget = crate::budget::Budget::unlimited();
    let verdict = match method {
        MethodId::CirculantFull => {
            primality::is_prime_circulant_full_with(&n, global.branch_threshold, &budget)
        }
        _ => primality::test_budgeted(&n, &method, &budget),
    }
    .map_err(map_lib_err)?;
    let content = match global.format {
        OutputFormat::Json => verdict.to_json(),
        _ => format!(
            "{} is {} ({}, {})",
            verdict.n,
            if verdict.is_prime { "prime" } else { "composite" },
            verdict.method.label(),
            evidence_text(&verdict.evidence)
        ),
    };
    emit(global, &content)?;
    Ok(if verdict.is_prime { EXIT_OK } else { EXIT_COMPOSITE })
}

fn evidence_text(e: &primality::Evidence) -> String {
    use primality::Evidence::*;
    match e {
        SmallPrimeDivisor { p } => format!("small prime divisor {p}"),
        OrbitCount { k } => format!("orbit count {k}"),
        FactorizationShape => "factorization shape".into(),
        HeuristicFactorCount { k } => format!("heuristic factor count {k}"),
        WitnessPassed => "all witnesses passed".into(),
        WitnessFailed => "witness failed".into(),
        CongruenceHeld => "congruences held".into(),
        CongruenceFailed => "congruence failed".into(),
        PerfectPower { base, exponent } => format!("perfect power {base}^{exponent}"),
        NoDivisorBelowSqrt => "no divisor below sqrt(n)".into(),
        DivisorFound { d } => format!("divisor {d}"),
    }
}

fn cmd_orbits(global: &GlobalOpts, n_str: &str, force: bool) -> CliResult {
    let n = parse_small(n_str, "n")?;
    if n < 3 {
        return Err(domain_err(format!("orbits require n >= 3, got {n}")));
    }
    guard_large(n, force, "orbit enumeration")?;
    let partition = galois::compute_orbits(n).map_err(map_lib_err)?;
    let direct = partition.orbit_count();
    let formula = galois::orbit_count_divisor_formula(n).map_err(map_lib_err)?;
    let content = match global.format {
        OutputFormat::Json => partition.to_json(),
        OutputFormat::Csv => {
            let mut out = String::from("orbit,member\n");
            for (i, orbit) in partition.orbits().iter().enumerate() {
                for j in orbit {
                    out.push_str(&format!("{i},{j}\n"));
                }
            }
            out
        }
        OutputFormat::Text => {
            let mut out = format!("n = {n}: {direct} Galois orbits\n");
            for orbit in partition.orbits() {
                let members: Vec<String> = orbit.iter().map(|j| j.to_string()).collect();
                out.push_str(&format!("  {{{}}}\n", members.join(", ")));
            }
            out.push_str(&format!("direct orbit count:          {direct}\n"));
            out.push_str(&format!("divisor-formula orbit count: {formula}\n"));
            if direct != formula {
                out.push_str(
                    "note: the divisor formula disagrees with the direct count here \
                     (it undercounts prime-power structure); the primality test always \
                     uses the direct count\n",
                );
            }
            out
        }
    };
    emit(global, &content)?;
    Ok(EXIT_OK)
}

fn cmd_minpoly(global: &GlobalOpts, n_str: &str, force: bool) -> CliResult {
    let n = parse_small(n_str, "n")?;
    if n < 3 {
        return Err(domain_err(format!("minpoly requires n >= 3, got {n}")));
    }
    guard_large(n, force, "minimal-polynomial reconstruction")?;
    let factors = match global.precision {
        Some(d) => minpoly::minimal_polynomial_factors_with_digits(n, d),
        None => minpoly::minimal_polynomial_factors(n),
    }
    .map_err(map_lib_err)?;
    let content = match global.format {
        OutputFormat::Json => factors.to_json(),
        OutputFormat::Csv => {
            let mut out = String::from("factor,index,coefficient\n");
            for (i, f) in factors.factors().iter().enumerate() {
                for (k, c) in f.coefficients().iter().enumerate() {
                    out.push_str(&format!("{i},{k},{c}\n"));
                }
            }
            out
        }
        OutputFormat::Text => {
            let mut out = format!(
                "minimal polynomial of C_{n}: {} irreducible factors\n",
                factors.factor_count()
            );
            out.push_str(&format!("  {}\n", factors.product_string()));
            out.push_str(&format!(
                "rounding residual: {:.3e}\n",
                factors.rounding_residual()
            ));
            out
        }
    };
    emit(global, &content)?;
    Ok(EXIT_OK)
}

fn cmd_spectral(global: &GlobalOpts, n_str: &str, force: bool) -> CliResult {
    let n = parse_small(n_str, "n")?;
    if n < 3 {
        return Err(domain_err(format!("spectral requires n >= 3, got {n}")));
    }
    guard_large(n, force, "spectral analysis")?;
    let point = spectral::phase_point(n).map_err(map_lib_err)?;
    let content = match global.format {
        OutputFormat::Json => serde_json::to_string(&point).expect("phase point serializes"),
        OutputFormat::Csv => {
            let mut buf = Vec::new();
            spectral::write_phase_csv(&mut buf, std::slice::from_ref(&point))
                .expect("write to memory");
            String::from_utf8(buf).expect("utf8")
        }
        OutputFormat::Text => format!(
            "n = {}: S(n) = {}, factor count = {}, {}\n",
            point.n,
            point.spectral_value,
            point.factor_count,
            if point.is_prime { "prime" } else { "composite" }
        ),
    };
    emit(global, &content)?;
    Ok(EXIT_OK)
}

fn parse_methods(list: &str, mr_rounds: u32, seed: u64) -> Result<Vec<MethodId>, CliError> {
    let methods: Result<Vec<MethodId>, Error> = list
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| MethodId::parse(s, mr_rounds, seed))
        .collect();
    let methods = methods.map_err(|e| usage_err(e.to_string()))?;
    if methods.is_empty() {
        return Err(usage_err("method list is empty"));
    }
    Ok(methods)
}

fn parse_inputs(list: &str) -> Result<Vec<BenchInput>, CliError> {
    let mut out = Vec::new();
    for tok in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if let Some(exp) = tok.strip_prefix("10^") {
            let k: u32 = exp
                .parse()
                .map_err(|_| usage_err(format!("bad magnitude anchor '{tok}'")))?;
            out.push(BenchInput::PrimeAbovePow10(k));
        } else {
            let _ = parse_big(tok, "bench input")?;
            out.push(BenchInput::Exact(tok.to_string()));
        }
    }
    if out.is_empty() {
        return Err(usage_err("input list is empty"));
    }
    Ok(out)
}

/// Key-value config file: one `key = value` per line, # comments.
fn parse_bench_config(
    path: &std::path::Path,
    mr_rounds: u32,
    seed: u64,
) -> Result<SuiteConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage_err(format!("cannot read config {}: {e}", path.display())))?;
    let mut config = SuiteConfig::comparison_table(seed);
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| usage_err(format!("config line {} is not key = value", lineno + 1)))?;
        let (key, value) = (key.trim(), value.trim());
        match key {
            "methods" => config.methods = parse_methods(value, mr_rounds, seed)?,
            "inputs" => config.inputs = parse_inputs(value)?,
            "repetitions" => {
                config.repetitions = value
                    .parse()
                    .map_err(|_| usage_err(format!("bad repetitions '{value}'")))?
            }
            "timeout_seconds" => {
                config.timeout_seconds = value
                    .parse()
                    .map_err(|_| usage_err(format!("bad timeout_seconds '{value}'")))?
            }
            "seed" => {
                config.seed =
                    value.parse().map_err(|_| usage_err(format!("bad seed '{value}'")))?
            }
            other => return Err(usage_err(format!("unknown config key '{other}'"))),
        }
    }
    Ok(config)
}

#[allow(clippy::too_many_arguments)]
fn cmd_bench(
    global: &GlobalOpts,
    config_path: Option<&std::path::Path>,
    methods: Option<&str>,
    inputs: Option<&str>,
    repetitions: Option<u32>,
    timeout_seconds: Option<f64>,
    comparison_table: bool,
    scaling: bool,
) -> CliResult {
    let mut config = if scaling {
        SuiteConfig::scaling_sweep(global.seed, timeout_seconds.unwrap_or(5.0))
    } else if let Some(path) = config_path {
        parse_bench_config(path, global.mr_rounds, global.seed)?
    } else {
        let _ = comparison_table; // the comparison grid is also the default
        SuiteConfig::comparison_table(global.seed)
    };
    if let Some(m) = methods {
        config.methods = parse_methods(m, global.mr_rounds, global.seed)?;
    }
    if let Some(i) = inputs {
        config.inputs = parse_inputs(i)?;
    }
    if let Some(r) = repetitions {
        config.repetitions = r.max(1);
    }
    if let Some(t) = timeout_seconds {
        config.timeout_seconds = t;
    }
    let records = bench::run_suite(&config).map_err(map_lib_err)?;
    let content = match global.format {
        OutputFormat::Json => bench::records_json(&records),
        OutputFormat::Csv => {
            let mut buf = Vec::new();
            bench::write_records_csv(&mut buf, &records).expect("write to memory");
            String::from_utf8(buf).expect("utf8")
        }
        OutputFormat::Text => {
            let mut out = bench::table_text(&config, &records);
            out.push('\n');
            let mut buf = Vec::new();
            bench::write_records_csv(&mut buf, &records).expect("write to memory");
            out.push_str(&String::from_utf8(buf).expect("utf8"));
            out
        }
    };
    emit(global, &content)?;
    Ok(EXIT_OK)
}

fn cmd_sweep(global: &GlobalOpts, lo: &str, hi: &str, methods: &str) -> CliResult {
    let lo = parse_small(lo, "lo")?;
    let hi = parse_small(hi, "hi")?;
    if lo < 2 || lo > hi {
        return Err(domain_err(format!("sweep range [{lo}, {hi}] invalid")));
    }
    let methods = parse_methods(methods, global.mr_rounds, global.seed)?;
    if methods.len() < 2 {
        return Err(usage_err("sweep needs at least two methods"));
    }
    let reports = bench::sweep_validate_many(lo, hi, &methods).map_err(map_lib_err)?;
    let disagreements: usize = reports.iter().map(|r| r.disagreements.len()).sum();
    let content = match global.format {
        OutputFormat::Json => serde_json::to_string_pretty(&reports).expect("reports serialize"),
        _ => reports.iter().map(|r| r.text()).collect::<String>(),
    };
    emit(global, &content)?;
    Ok(if disagreements == 0 { EXIT_OK } else { EXIT_COMPOSITE })
}

fn cmd_plot_data(
    global: &GlobalOpts,
    kind: &str,
    from: Option<&str>,
    to: Option<&str>,
    n: Option<&str>,
    force: bool,
) -> CliResult {
    match kind {
        "eigenvalues" => {
            let n = parse_small(n.ok_or_else(|| usage_err("eigenvalues needs --n"))?, "n")?;
            if n < 3 {
                return Err(domain_err(format!("eigenvalues require n >= 3, got {n}")));
            }
            let spec = spectrum::full_spectrum(n).map_err(map_lib_err)?;
            let mut buf = Vec::new();
            spec.write_csv(&mut buf).expect("write to memory");
            emit(global, &String::from_utf8(buf).expect("utf8"))?;
            Ok(EXIT_OK)
        }
        "phase" | "coefficients" => {
            let from = parse_small(from.ok_or_else(|| usage_err("range plots need --from"))?, "from")?;
            let to = parse_small(to.ok_or_else(|| usage_err("range plots need --to"))?, "to")?;
            // Spectral structure starts at n = 3; ranges opening below that
            // are clamped rather than rejected.
            let from = from.max(3);
            if from > to {
                return Err(domain_err(format!("plot range [{from}, {to}] invalid")));
            }
            guard_large(to, force, "plot-data range")?;
            if kind == "phase" {
                let points: Result<Vec<_>, Error> =
                    (from..=to).map(spectral::phase_point).collect();
                let points = points.map_err(map_lib_err)?;
                let mut buf = Vec::new();
                spectral::write_phase_csv(&mut buf, &points).expect("write to memory");
                emit(global, &String::from_utf8(buf).expect("utf8"))?;
            } else {
                let series: Result<Vec<_>, Error> = (from..=to)
                    .map(|n| spectral::coefficient_series(n).map(|c| (n, c)))
                    .collect();
                let series = series.map_err(map_lib_err)?;
                let mut buf = Vec::new();
                spectral::write_coefficient_csv(&mut buf, &series).expect("write to memory");
                emit(global, &String::from_utf8(buf).expect("utf8"))?;
            }
            Ok(EXIT_OK)
        }
        other => Err(usage_err(format!(
            "unknown plot kind '{other}' (expected coefficients, phase, or eigenvalues)"
        ))),
    }
}
