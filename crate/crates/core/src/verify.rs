//! Cross-checks the solver against the reference solvers on seeded
//! synthetic instances.

use crate::datagen::{gen_synthetic, split_seed, GenConfig};
use crate::model::{Instance, Solution, SolveStatus};
use crate::oracle::{brute_force_tiny, dual_value, oracle_dual_breakpoints, TINY_M_CAP, TINY_N_CAP};
use crate::solver::{solve, SolverOptions};
use std::fmt;

/// Relative agreement tolerance for objective values and `λ*`.
pub const VERIFY_TOLERANCE: f64 = 1e-9;

/// `|x - y| <= tol · max(|x|, |y|)`, with exact equality always accepted.
pub fn rel_close(x: f64, y: f64, tol: f64) -> bool {
    x == y || (x - y).abs() <= tol * x.abs().max(y.abs())
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyConfig {
    pub count: usize,
    pub m: usize,
    pub n: usize,
    pub seed: u64,
    pub alpha: f64,
    pub parallel: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Mismatch {
    pub seed: u64,
    pub reason: String,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "seed {}: {}", self.seed, self.reason)
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct VerifyReport {
    pub checked: usize,
    pub with_brute_force: usize,
    pub mismatches: Vec<Mismatch>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Checks one instance; returns the reasons it fails, if any, and whether the
/// brute force also ran.
pub fn check_instance(instance: &Instance) -> (Vec<String>, bool) {
    let mut problems = Vec::new();
    let mut solutions: Vec<(&str, Solution)> = Vec::new();
    for (name, opts) in [("no_screening", SolverOptions::without_screening()), ("screening", SolverOptions::default())] {
        match solve(instance, &opts) {
            Ok(s) => solutions.push((name, s)),
            Err(e) => problems.push(format!("{name}: solve failed: {e}")),
        }
    }

    for (name, s) in &solutions {
        let (c, a, b2) = match s.status {
            SolveStatus::LowerActive => (
                instance.c.clone(),
                instance.a.iter().map(|v| -v).collect::<Vec<_>>(),
                -instance.b1,
            ),
            _ => (instance.c.clone(), instance.a.clone(), instance.b2),
        };
        if s.status == SolveStatus::UnconstrainedOptimal {
            let top = dual_value(&c, &a, &instance.w, b2, 0.0);
            if !rel_close(s.mixture.objective, top, VERIFY_TOLERANCE) {
                problems.push(format!("{name}: objective {} != unconstrained {top}", s.mixture.objective));
            }
        } else {
            match oracle_dual_breakpoints(&c, &a, &instance.w, b2) {
                Ok(o) => {
                    if !rel_close(s.mixture.objective, o.g_star, VERIFY_TOLERANCE) {
                        problems.push(format!("{name}: objective {} != oracle {}", s.mixture.objective, o.g_star));
                    }
                    if !rel_close(s.lambda_star, o.lambda_star, VERIFY_TOLERANCE) {
                        problems.push(format!("{name}: lambda* {} != oracle {}", s.lambda_star, o.lambda_star));
                    }
                }
                Err(e) => problems.push(format!("oracle failed: {e}")),
            }
        }
        if s.mixture.diversity < instance.b1 - 1e-9 || s.mixture.diversity > instance.b2 + 1e-9 {
            problems.push(format!("{name}: diversity {} outside bounds", s.mixture.diversity));
        }
    }

    let tiny = instance.m <= TINY_M_CAP && instance.n <= TINY_N_CAP;
    if tiny {
        match brute_force_tiny(instance) {
            Ok(Some(bf)) => {
                for (name, s) in &solutions {
                    if (s.mixture.objective - bf.objective).abs() > VERIFY_TOLERANCE * (1.0 + bf.objective.abs()) {
                        problems.push(format!("{name}: objective {} != brute force {}", s.mixture.objective, bf.objective));
                    }
                }
            }
            Ok(None) => {
                if !solutions.is_empty() {
                    problems.push("brute force found no feasible point but the solver did".into());
                }
            }
            Err(e) => problems.push(format!("brute force failed: {e}")),
        }
    }
    (problems, tiny)
}

/// Generates `count` instances from `seed` and checks each. Instance `k` uses
/// seed `split_seed(seed, k)`.
pub fn run_verify(cfg: &VerifyConfig) -> VerifyReport {
    let seeds: Vec<u64> = (0..cfg.count as u64).map(|k| split_seed(cfg.seed, k)).collect();
    let check = |&seed: &u64| -> (u64, Vec<String>, bool) {
        match gen_synthetic(&GenConfig::new(cfg.m, cfg.n, seed).with_alpha(cfg.alpha)) {
            Ok(inst) => {
                let (p, tiny) = check_instance(&inst);
                (seed, p, tiny)
            }
            Err(e) => (seed, vec![format!("generation failed: {e}")], false),
        }
    };
    let results: Vec<(u64, Vec<String>, bool)> = if cfg.parallel && seeds.len() > 1 {
        let threads = std::thread::available_parallelism().map_or(1, |n| n.get());
        let chunk = seeds.len().div_ceil(threads);
        std::thread::scope(|s| {
            let handles: Vec<_> = seeds
                .chunks(chunk)
                .map(|part| s.spawn(move || part.iter().map(check).collect::<Vec<_>>()))
                .collect();
            handles.into_iter().flat_map(|h| h.join().expect("verify worker panicked")).collect()
        })
    } else {
        seeds.iter().map(check).collect()
    };

    let mut report = VerifyReport::default();
    for (seed, problems, tiny) in results {
        report.checked += 1;
        report.with_brute_force += usize::from(tiny);
        report
            .mismatches
            .extend(problems.into_iter().map(|reason| Mismatch { seed, reason }));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rel_close_semantics() {
        assert!(rel_close(0.0, 0.0, 1e-9));
        assert!(rel_close(1.0, 1.0 + 1e-10, 1e-9));
        assert!(!rel_close(1.0, 1.0 + 1e-8, 1e-9));
        assert!(!rel_close(0.0, 1e-300, 1e-9));
    }

    #[test]
    fn empty_run_passes() {
        let r = run_verify(&VerifyConfig {
            count: 0,
            m: 10,
            n: 2,
            seed: 0,
            alpha: 0.5,
            parallel: false,
        });
        assert!(r.passed());
        assert_eq!(r.checked, 0);
    }
}
