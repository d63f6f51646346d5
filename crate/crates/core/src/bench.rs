//! Runtime scaling harness: bisection + tracing with and without screening
//! over a grid of `(m, n)`, on fresh synthetic instances per repetition.

use crate::datagen::{gen_synthetic, split_seed, GenConfig, GenError};
use crate::model::Instance;
use crate::solver::{solve, SolveError, SolverOptions};
use std::fmt;
use std::io::{self, Write};
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    /// Bisection + kink tracing.
    NoScreening,
    /// Bisection + kink tracing + screening.
    Screening,
}

impl Algorithm {
    pub const ALL: [Algorithm; 2] = [Algorithm::NoScreening, Algorithm::Screening];

    pub fn options(self) -> SolverOptions {
        match self {
            Algorithm::NoScreening => SolverOptions::without_screening(),
            Algorithm::Screening => SolverOptions::default(),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::NoScreening => "no_screening",
            Algorithm::Screening => "screening",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub m_list: Vec<usize>,
    pub n_list: Vec<usize>,
    pub reps: usize,
    pub alpha: f64,
    pub seed: u64,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            m_list: vec![100, 300, 1000, 3000, 10000],
            n_list: vec![10, 30],
            reps: 20,
            alpha: 0.5,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub m: usize,
    pub n: usize,
    pub algorithm: Algorithm,
    pub mean_ms: f64,
    pub std_ms: f64,
    pub median_ms: f64,
    pub reps: usize,
    pub samples_ms: Vec<f64>,
}

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error("instance generation failed for m = {m}, n = {n}: {source}")]
    Gen { m: usize, n: usize, source: GenError },
    #[error("solve failed for m = {m}, n = {n}, rep {rep}: {source}")]
    Solve {
        m: usize,
        n: usize,
        rep: usize,
        source: SolveError,
    },
}

/// Alg-2 runtimes (ms) from the reference table, keyed by `(m, n)`.
pub fn reference_ms(m: usize, n: usize) -> Option<f64> {
    let ms = match (m, n) {
        (100, 10) => 0.8,
        (300, 10) => 1.2,
        (1000, 10) => 2.5,
        (3000, 10) => 5.6,
        (10000, 10) => 14.3,
        (100, 30) => 1.7,
        (300, 30) => 2.1,
        (1000, 30) => 3.7,
        (3000, 30) => 7.3,
        (10000, 30) => 19.1,
        _ => return None,
    };
    Some(ms)
}

/// Seed of repetition `rep` for grid cell `(m, n)`.
pub fn instance_seed(base: u64, m: usize, n: usize, rep: usize) -> u64 {
    split_seed(split_seed(base, ((m as u64) << 20) | n as u64), rep as u64)
}

/// The instances a bench run would time, in row-major `(m, n, rep)` order.
pub fn bench_instances(cfg: &BenchConfig, m: usize, n: usize) -> Result<Vec<Instance>, BenchError> {
    (0..cfg.reps)
        .map(|rep| {
            let gen = GenConfig::new(m, n, instance_seed(cfg.seed, m, n, rep)).with_alpha(cfg.alpha);
            gen_synthetic(&gen).map_err(|source| BenchError::Gen { m, n, source })
        })
        .collect()
}

/// Times both algorithms on the same instances. Reps run sequentially.
pub fn run_bench(cfg: &BenchConfig) -> Result<Vec<BenchRow>, BenchError> {
    let mut rows = Vec::new();
    for &n in &cfg.n_list {
        for &m in &cfg.m_list {
            if n > m {
                continue;
            }
            let instances = bench_instances(cfg, m, n)?;
            for alg in Algorithm::ALL {
                let opts = alg.options();
                if let Some(first) = instances.first() {
                    // warm caches and the allocator
                    let _ = solve(first, &opts);
                }
                let mut samples = Vec::with_capacity(cfg.reps);
                for (rep, inst) in instances.iter().enumerate() {
                    let t = Instant::now();
                    solve(inst, &opts).map_err(|source| BenchError::Solve { m, n, rep, source })?;
                    samples.push(t.elapsed().as_secs_f64() * 1e3);
                }
                log::info!("m={m} n={n} {alg}: median {:.3} ms", median(&samples));
                rows.push(summarize(m, n, alg, samples));
            }
        }
    }
    Ok(rows)
}

fn summarize(m: usize, n: usize, algorithm: Algorithm, samples_ms: Vec<f64>) -> BenchRow {
    let reps = samples_ms.len();
    let mean = samples_ms.iter().sum::<f64>() / reps.max(1) as f64;
    let var = if reps > 1 {
        samples_ms.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (reps - 1) as f64
    } else {
        0.0
    };
    BenchRow {
        m,
        n,
        algorithm,
        mean_ms: mean,
        std_ms: var.sqrt(),
        median_ms: median(&samples_ms),
        reps,
        samples_ms,
    }
}

pub fn median(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return f64::NAN;
    }
    let mut v = xs.to_vec();
    v.sort_by(|a, b| a.total_cmp(b));
    let k = v.len() / 2;
    if v.len() % 2 == 1 {
        v[k]
    } else {
        0.5 * (v[k - 1] + v[k])
    }
}

/// Writes `m,n,algorithm,mean_ms,std_ms,reps`.
pub fn write_csv<W: Write>(rows: &[BenchRow], mut out: W) -> io::Result<()> {
    writeln!(out, "m,n,algorithm,mean_ms,std_ms,reps")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{:.6},{:.6},{}",
            r.m, r.n, r.algorithm, r.mean_ms, r.std_ms, r.reps
        )?;
    }
    Ok(())
}

/// Human-readable table with screening speedups and reference timings.
pub fn write_summary<W: Write>(rows: &[BenchRow], mut out: W) -> io::Result<()> {
    writeln!(
        out,
        "{:>6} {:>4} {:>14} {:>14} {:>9} {:>12}",
        "m", "n", "no_screen(ms)", "screen(ms)", "speedup", "ref alg2(ms)"
    )?;
    for r in rows.iter().filter(|r| r.algorithm == Algorithm::Screening) {
        let base = rows
            .iter()
            .find(|b| b.m == r.m && b.n == r.n && b.algorithm == Algorithm::NoScreening);
        let (base_ms, speedup) = match base {
            Some(b) => (format!("{:.3}", b.median_ms), format!("{:.2}x", b.median_ms / r.median_ms)),
            None => ("-".into(), "-".into()),
        };
        let reference = reference_ms(r.m, r.n).map_or("-".to_string(), |v| format!("{v:.1}"));
        writeln!(
            out,
            "{:>6} {:>4} {:>14} {:>14.3} {:>9} {:>12}",
            r.m, r.n, base_ms, r.median_ms, speedup, reference
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn median_and_spread() {
        let row = summarize(1, 1, Algorithm::Screening, vec![1.0, 3.0, 2.0, 10.0]);
        assert_eq!(row.median_ms, 2.5);
        assert_eq!(row.mean_ms, 4.0);
        assert!((row.std_ms - (50.0f64 / 3.0).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn csv_header_and_rows() {
        let cfg = BenchConfig {
            m_list: vec![30],
            n_list: vec![5],
            reps: 2,
            alpha: 0.5,
            seed: 3,
        };
        let rows = run_bench(&cfg).unwrap();
        assert_eq!(rows.len(), 2);
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "m,n,algorithm,mean_ms,std_ms,reps");
        assert!(lines[1].starts_with("30,5,no_screening,"));
        assert!(lines[2].starts_with("30,5,screening,"));
        assert!(lines[2].ends_with(",2"));
    }

    #[test]
    fn instances_deterministic_in_seed() {
        let cfg = BenchConfig {
            reps: 3,
            ..BenchConfig::default()
        };
        assert_eq!(bench_instances(&cfg, 100, 10).unwrap(), bench_instances(&cfg, 100, 10).unwrap());
    }

    #[test]
    fn reference_values() {
        assert_eq!(reference_ms(100, 10), Some(0.8));
        assert_eq!(reference_ms(10000, 30), Some(19.1));
        assert_eq!(reference_ms(500, 10), None);
    }
}
