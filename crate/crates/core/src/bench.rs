//! Timing and validation harness: per-cell wall-clock measurement over a
//! methods-by-inputs grid, agreement sweeps between method pairs, and the
//! text/CSV/JSON emitters for the comparison table.
//!
//! Timing cells run strictly sequentially with one untimed warm-up before the
//! timed repetitions. Each (method, input) cell carries its own budget;
//! cells that exceed it are recorded with absent timing fields, never as
//! zeros. Absolute timings are machine-dependent; verdicts are not, and the
//! records always carry the exact n that was tested.

use crate::baselines::MethodId;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::numtheory;
use crate::primality;
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;
use std::io::Write;
use std::time::Instant;

/// One timed measurement cell.
#[derive(Debug, Clone, Serialize)]
pub struct BenchRecord {
    pub method: MethodId,
    pub n: String,
    pub repetitions: u32,
    pub mean_seconds: Option<f64>,
    pub min_seconds: Option<f64>,
    pub verdict: Option<bool>,
    pub peak_memory_bytes: Option<u64>,
    pub timed_out: bool,
}

impl BenchRecord {
    pub fn csv_header() -> &'static str {
        "method,n,repetitions,mean_seconds,min_seconds,verdict,peak_memory_bytes,timeout"
    }

    pub fn csv_row(&self) -> String {
        fn opt<T: std::fmt::Display>(v: &Option<T>) -> String {
            v.as_ref().map(|x| x.to_string()).unwrap_or_default()
        }
        format!(
            "{},{},{},{},{},{},{},{}",
            self.method.label(),
            self.n,
            self.repetitions,
            opt(&self.mean_seconds),
            opt(&self.min_seconds),
            opt(&self.verdict),
            opt(&self.peak_memory_bytes),
            self.timed_out
        )
    }
}

/// A benchmark input: an exact integer or a magnitude anchor resolved to the
/// nearest prime at or above 10^k.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum BenchInput {
    Exact(String),
    PrimeAbovePow10(u32),
}

impl BenchInput {
    pub fn resolve(&self) -> Result<BigUint> {
        match self {
            BenchInput::Exact(s) => s
                .parse::<BigUint>()
                .map_err(|_| Error::Parse(format!("invalid benchmark input '{s}'"))),
            BenchInput::PrimeAbovePow10(k) => {
                let mut n = BigUint::from(10u32).pow(*k);
                loop {
                    if is_prime_definite(&n) {
                        return Ok(n);
                    }
                    n += BigUint::from(1u32);
                }
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            BenchInput::Exact(s) => s.clone(),
            BenchInput::PrimeAbovePow10(k) => format!("~10^{k}"),
        }
    }
}

/// Certain primality for input resolution (never part of a timed cell).
fn is_prime_definite(n: &BigUint) -> bool {
    match n.to_u64() {
        Some(v) => numtheory::is_prime_u64(v),
        None => crate::baselines::miller_rabin(n, 40, 0xA5A5_A5A5).unwrap_or(false),
    }
}

/// Full grid configuration.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteConfig {
    pub methods: Vec<MethodId>,
    pub inputs: Vec<BenchInput>,
    pub repetitions: u32,
    pub timeout_seconds: f64,
    pub seed: u64,
}

impl SuiteConfig {
    /// The comparison-table grid: six methods, magnitude anchors 10^6, 10^8,
    /// 10^9, 10^10, three repetitions.
    pub fn comparison_table(seed: u64) -> Self {
        SuiteConfig {
            methods: vec![
                MethodId::TrialDivision,
                MethodId::OptimizedTrialDivision,
                MethodId::miller_rabin(seed),
                MethodId::Aks,
                MethodId::CirculantSimplified,
                MethodId::CirculantFull,
            ],
            inputs: vec![
                BenchInput::PrimeAbovePow10(6),
                BenchInput::PrimeAbovePow10(8),
                BenchInput::PrimeAbovePow10(9),
                BenchInput::PrimeAbovePow10(10),
            ],
            repetitions: 3,
            timeout_seconds: 600.0,
            seed,
        }
    }

    /// Scaling sweep anchors 10^2 .. 10^15 with a per-cell timeout tight
    /// enough that the slow cells (AKS and trial division at the top end)
    /// record as timeouts rather than stalling the run.
    pub fn scaling_sweep(seed: u64, timeout_seconds: f64) -> Self {
        SuiteConfig {
            methods: vec![
                MethodId::TrialDivision,
                MethodId::OptimizedTrialDivision,
                MethodId::miller_rabin(seed),
                MethodId::Aks,
                MethodId::CirculantSimplified,
                MethodId::CirculantFull,
            ],
            inputs: (2..=15).map(BenchInput::PrimeAbovePow10).collect(),
            repetitions: 3,
            timeout_seconds,
            seed,
        }
    }
}

#[cfg(target_os = "linux")]
fn peak_rss_bytes() -> Option<u64> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    let line = status.lines().find(|l| l.starts_with("VmHWM:"))?;
    let kb: u64 = line.split_whitespace().nth(1)?.parse().ok()?;
    Some(kb * 1024)
}

#[cfg(not(target_os = "linux"))]
fn peak_rss_bytes() -> Option<u64> {
    None
}

/// Times one method on one input: an untimed warm-up, then `repetitions`
/// timed runs sharing a single per-cell budget. Memory is the best-effort
/// growth of the process peak RSS across the cell (absent off Linux).
pub fn time_method(method: &MethodId, n: &BigUint, repetitions: u32, timeout_seconds: f64) -> BenchRecord {
    let budget = Budget::from_seconds(timeout_seconds);
    let mem_before = peak_rss_bytes();
    let mut timings = Vec::with_capacity(repetitions as usize);
    let mut verdicts: Vec<bool> = Vec::with_capacity(repetitions as usize + 1);
    let mut timed_out = false;

    // Warm-up, untimed.
    match primality::test_budgeted(n, method, &budget) {
        Ok(v) => verdicts.push(v.is_prime),
        Err(Error::Timeout { .. }) => timed_out = true,
        Err(_) => timed_out = true,
    }
    if !timed_out {
        for _ in 0..repetitions {
            let start = Instant::now();
            match primality::test_budgeted(n, method, &budget) {
                Ok(v) => {
                    timings.push(start.elapsed().as_secs_f64());
                    verdicts.push(v.is_prime);
                }
                Err(_) => {
                    timed_out = true;
                    break;
                }
            }
        }
    }

    let peak_memory_bytes = match (mem_before, peak_rss_bytes()) {
        (Some(a), Some(b)) => Some(b.saturating_sub(a)),
        _ => None,
    };

    if timed_out || timings.is_empty() {
        return BenchRecord {
            method: *method,
            n: n.to_string(),
            repetitions,
            mean_seconds: None,
            min_seconds: None,
            verdict: None,
            peak_memory_bytes,
            timed_out: true,
        };
    }

    // Repetitions of a deterministic method must agree with one another.
    let consistent = verdicts.iter().all(|&v| v == verdicts[0]);
    debug_assert!(consistent, "verdict flapped across repetitions");
    let mean = timings.iter().sum::<f64>() / timings.len() as f64;
    let min = timings.iter().copied().fold(f64::INFINITY, f64::min);
    BenchRecord {
        method: *method,
        n: n.to_string(),
        repetitions,
        mean_seconds: Some(mean),
        min_seconds: Some(min),
        verdict: if consistent { Some(verdicts[0]) } else { None },
        peak_memory_bytes,
        timed_out: false,
    }
}

/// Runs the full methods-by-inputs grid sequentially. Per-cell failures and
/// timeouts produce absent-valued records; the suite itself never aborts.
pub fn run_suite(config: &SuiteConfig) -> Result<Vec<BenchRecord>> {
    let inputs: Vec<BigUint> =
        config.inputs.iter().map(|i| i.resolve()).collect::<Result<_>>()?;
    let mut records = Vec::with_capacity(config.methods.len() * inputs.len());
    for method in &config.methods {
        for n in &inputs {
            records.push(time_method(method, n, config.repetitions, config.timeout_seconds));
        }
    }
    Ok(records)
}

/// Agreement report between one method and a baseline over a contiguous range.
#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub lo: u64,
    pub hi: u64,
    pub method: MethodId,
    pub baseline: MethodId,
    pub tested: u64,
    pub primes_found: u64,
    pub disagreements: Vec<u64>,
    pub elapsed_seconds: f64,
}

impl SweepReport {
    pub fn agreement(&self) -> bool {
        self.disagreements.is_empty()
    }

    pub fn text(&self) -> String {
        let mut out = format!(
            "sweep [{}, {}] {} vs {}: {} tested, {} primes, {} disagreements ({:.3}s)\n",
            self.lo,
            self.hi,
            self.method.label(),
            self.baseline.label(),
            self.tested,
            self.primes_found,
            self.disagreements.len(),
            self.elapsed_seconds
        );
        for d in &self.disagreements {
            out.push_str(&format!("  disagreement at n = {d}\n"));
        }
        out
    }
}

/// Runs `method` and `baseline` on every n in [lo, hi] and enumerates every
/// disagreement (expected: none).
pub fn sweep_validate(lo: u64, hi: u64, method: &MethodId, baseline: &MethodId) -> Result<SweepReport> {
    if lo < 2 || lo > hi {
        return Err(Error::domain(format!("sweep range [{lo}, {hi}] invalid")));
    }
    let start = Instant::now();
    let mut disagreements = Vec::new();
    let mut primes_found = 0u64;
    for n in lo..=hi {
        let nb = BigUint::from(n);
        let a = primality::test(&nb, method)?.is_prime;
        let b = primality::test(&nb, baseline)?.is_prime;
        if a {
            primes_found += 1;
        }
        if a != b {
            disagreements.push(n);
        }
    }
    Ok(SweepReport {
        lo,
        hi,
        method: *method,
        baseline: *baseline,
        tested: hi - lo + 1,
        primes_found,
        disagreements,
        elapsed_seconds: start.elapsed().as_secs_f64(),
    })
}

/// Renders records as a magnitude-columned text table: methods as rows,
/// inputs as columns, mean seconds per cell, fastest cell per column marked
/// with `*`. A trailing note reports whether AKS was the slowest method at
/// each magnitude (informational only).
pub fn table_text(config: &SuiteConfig, records: &[BenchRecord]) -> String {
    let input_labels: Vec<String> = config.inputs.iter().map(|i| i.label()).collect();
    let n_cols = input_labels.len();
    let mut out = String::new();
    let method_width = config
        .methods
        .iter()
        .map(|m| m.label().len())
        .max()
        .unwrap_or(10)
        .max("method".len());
    out.push_str(&format!("{:width$}", "method", width = method_width));
    for label in &input_labels {
        out.push_str(&format!(" | {label:>12}"));
    }
    out.push('\n');
    out.push_str(&"-".repeat(method_width + n_cols * 15));
    out.push('\n');

    let cell = |mi: usize, ii: usize| -> &BenchRecord { &records[mi * n_cols + ii] };
    // Fastest mean per column.
    let fastest: Vec<Option<usize>> = (0..n_cols)
        .map(|ii| {
            (0..config.methods.len())
                .filter_map(|mi| cell(mi, ii).mean_seconds.map(|t| (mi, t)))
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .map(|(mi, _)| mi)
        })
        .collect();
    for (mi, method) in config.methods.iter().enumerate() {
        out.push_str(&format!("{:width$}", method.label(), width = method_width));
        for (ii, fastest_mi) in fastest.iter().enumerate() {
            let r = cell(mi, ii);
            let text = match r.mean_seconds {
                Some(t) => {
                    let mark = if *fastest_mi == Some(mi) { "*" } else { "" };
                    format!("{t:.2e}{mark}")
                }
                None => "timeout".to_string(),
            };
            out.push_str(&format!(" | {text:>12}"));
        }
        out.push('\n');
    }

    // Non-failing qualitative note on AKS.
    let aks_row = config.methods.iter().position(|m| *m == MethodId::Aks);
    if let Some(aks_mi) = aks_row {
        for (ii, label) in input_labels.iter().enumerate() {
            let aks_time = cell(aks_mi, ii).mean_seconds;
            let slowest = (0..config.methods.len())
                .filter_map(|mi| cell(mi, ii).mean_seconds.map(|t| (mi, t)))
                .max_by(|a, b| a.1.total_cmp(&b.1))
                .map(|(mi, _)| mi);
            let verdict = match (aks_time, slowest) {
                (Some(_), Some(mi)) => {
                    if mi == aks_mi {
                        "yes"
                    } else {
                        "no"
                    }
                }
                _ => "n/a (timeout)",
            };
            out.push_str(&format!("aks slowest at {label}: {verdict}\n"));
        }
    }
    out
}

pub fn write_records_csv<W: Write>(mut w: W, records: &[BenchRecord]) -> std::io::Result<()> {
    writeln!(w, "{}", BenchRecord::csv_header())?;
    for r in records {
        writeln!(w, "{}", r.csv_row())?;
    }
    Ok(())
}

pub fn records_json(records: &[BenchRecord]) -> String {
    serde_json::to_string_pretty(records).expect("records serialize")
}

/// Multi-method agreement over [lo, hi]: every method is evaluated once per n
/// and any verdict differing from the first method's is a disagreement.
pub fn sweep_validate_many(lo: u64, hi: u64, methods: &[MethodId]) -> Result<Vec<SweepReport>> {
    if methods.len() < 2 {
        return Err(Error::Config("sweep needs at least two methods".into()));
    }
    let mut reports = Vec::new();
    for m in &methods[1..] {
        reports.push(sweep_validate(lo, hi, &methods[0], m)?);
    }
    Ok(reports)
}
