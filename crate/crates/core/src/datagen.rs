//! Seeded synthetic instances.
//!
//! `(a_i, c_i)` pairs are i.i.d. bivariate normal with unit variances and
//! covariance `alpha`, drawn as `a = u`, `c = alpha·u + sqrt(1 - alpha²)·v`
//! from independent standard normals `u, v`. Weights are the DCG discount
//! and the bounds are `b2 = -b1 = b_scale · a'X̄w`, where `X̄` is the
//! unconstrained optimum. With `b_scale < 1` the unconstrained optimum
//! violates `b2`, so the constraint binds.
//!
//! Stream layout: attempt `k` of an instance uses ChaCha8 stream `k` of the
//! instance seed and consumes one `(u, v)` pair per candidate, in order.
//! Ensembles derive per-instance seeds with [`split_seed`].

use crate::model::{default_weights, Instance};
use crate::rank::solve_unconstrained;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

#[derive(Debug, Clone, PartialEq)]
pub struct GenConfig {
    pub m: usize,
    pub n: usize,
    pub alpha: f64,
    pub seed: u64,
    pub b_scale: f64,
    pub max_regen: usize,
}

impl GenConfig {
    pub fn new(m: usize, n: usize, seed: u64) -> Self {
        Self {
            m,
            n,
            alpha: 0.5,
            seed,
            b_scale: 0.8,
            max_regen: 1000,
        }
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = alpha;
        self
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GenError {
    #[error("alpha must lie in (0, 1), got {0}")]
    BadAlpha(f64),
    #[error("b_scale must lie in (0, 1], got {0}")]
    BadScale(f64),
    #[error("need 1 <= n <= m, got m = {m}, n = {n}")]
    BadSize { m: usize, n: usize },
    #[error("no draw with positive unconstrained diversity after {0} attempts")]
    RegenExhausted(usize),
    #[error("noise level must be positive, got {0}")]
    BadNoiseLevel(f64),
    #[error("scores have zero norm; relative noise is undefined")]
    ZeroScores,
}

/// A generated instance together with the number of rejected draws.
#[derive(Debug, Clone, PartialEq)]
pub struct Generated {
    pub instance: Instance,
    pub regenerations: usize,
}

/// Lower Cholesky factor of `[[1, alpha], [alpha, 1]]`.
pub fn cholesky_2x2(alpha: f64) -> [[f64; 2]; 2] {
    [[1.0, 0.0], [alpha, (1.0 - alpha * alpha).sqrt()]]
}

/// Per-instance seed for member `index` of an ensemble rooted at `base`
/// (SplitMix64 finalizer over `base + index·φ`).
pub fn split_seed(base: u64, index: u64) -> u64 {
    let mut z = base.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Draws `m` correlated `(a, c)` pairs from stream `stream` of `seed`.
pub fn draw_pairs(m: usize, alpha: f64, seed: u64, stream: u64) -> (Vec<f64>, Vec<f64>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let l = cholesky_2x2(alpha);
    let mut a = Vec::with_capacity(m);
    let mut c = Vec::with_capacity(m);
    for _ in 0..m {
        let u: f64 = rng.sample(StandardNormal);
        let v: f64 = rng.sample(StandardNormal);
        a.push(l[0][0] * u);
        c.push(l[1][0] * u + l[1][1] * v);
    }
    (a, c)
}

pub fn gen_synthetic(config: &GenConfig) -> Result<Instance, GenError> {
    gen_synthetic_counted(config).map(|g| g.instance)
}

/// [`gen_synthetic`], also reporting how many draws were rejected.
pub fn gen_synthetic_counted(config: &GenConfig) -> Result<Generated, GenError> {
    if !(config.alpha > 0.0 && config.alpha < 1.0) {
        return Err(GenError::BadAlpha(config.alpha));
    }
    if !(config.b_scale > 0.0 && config.b_scale <= 1.0) {
        return Err(GenError::BadScale(config.b_scale));
    }
    if config.n == 0 || config.n > config.m {
        return Err(GenError::BadSize { m: config.m, n: config.n });
    }
    let w = default_weights(config.n);
    for attempt in 0..=config.max_regen {
        let (a, c) = draw_pairs(config.m, config.alpha, config.seed, attempt as u64);
        // bounds are set after the unconstrained solve; any finite pair validates
        let probe = Instance::new(c, a, Some(w.clone()), config.n, 0.0, 0.0).expect("generated data is finite");
        let d = solve_unconstrained(&probe).max_div;
        if d > 0.0 {
            let b = config.b_scale * d;
            let instance = Instance { b1: -b, b2: b, ..probe };
            return Ok(Generated {
                instance,
                regenerations: attempt,
            });
        }
    }
    Err(GenError::RegenExhausted(config.max_regen + 1))
}

/// `c = c0 + level · (‖c0‖ / ‖ε‖) · ε` with i.i.d. standard normal `ε`;
/// everything else is copied.
pub fn noise_replicate(instance: &Instance, level: f64, seed: u64) -> Result<Instance, GenError> {
    if !(level > 0.0) {
        return Err(GenError::BadNoiseLevel(level));
    }
    let c_norm = norm(&instance.c);
    if c_norm == 0.0 {
        return Err(GenError::ZeroScores);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let eps: Vec<f64> = (0..instance.m).map(|_| rng.sample(StandardNormal)).collect();
    let scale = level * c_norm / norm(&eps);
    let c = instance.c.iter().zip(&eps).map(|(c0, e)| c0 + scale * e).collect();
    Ok(Instance {
        c,
        ..instance.clone()
    })
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{precheck_feasibility, reduce_two_sided, Reduction};

    #[test]
    fn cholesky_row() {
        let l = cholesky_2x2(0.5);
        assert_eq!(l[1][0], 0.5);
        assert!((l[1][1] - 0.866_025_403_784_438_6).abs() < 1e-15);
    }

    #[test]
    fn deterministic_given_seed() {
        let cfg = GenConfig::new(200, 10, 42);
        assert_eq!(gen_synthetic(&cfg).unwrap(), gen_synthetic(&cfg).unwrap());
        let other = gen_synthetic(&GenConfig::new(200, 10, 43)).unwrap();
        assert_ne!(gen_synthetic(&cfg).unwrap().c, other.c);
    }

    #[test]
    fn bounds_force_binding_constraint() {
        for seed in 0..50 {
            let inst = gen_synthetic(&GenConfig::new(100, 10, seed)).unwrap();
            assert_eq!(inst.b1, -inst.b2);
            assert!(inst.b2 > 0.0);
            assert!(precheck_feasibility(&inst).feasible);
            assert!(matches!(reduce_two_sided(&inst), Reduction::Upper(_)));
        }
    }

    #[test]
    fn rejects_bad_config() {
        let mut cfg = GenConfig::new(10, 3, 0);
        cfg.alpha = 1.0;
        assert_eq!(gen_synthetic(&cfg), Err(GenError::BadAlpha(1.0)));
        let cfg = GenConfig::new(3, 5, 0);
        assert!(matches!(gen_synthetic(&cfg), Err(GenError::BadSize { .. })));
    }

    #[test]
    fn noise_has_exact_relative_norm() {
        let base = gen_synthetic(&GenConfig::new(500, 10, 7)).unwrap();
        let noised = noise_replicate(&base, 0.2, 1).unwrap();
        let diff: Vec<f64> = noised.c.iter().zip(&base.c).map(|(x, y)| x - y).collect();
        assert!((norm(&diff) / norm(&base.c) - 0.2).abs() < 1e-12);
        assert_eq!((noised.a.clone(), noised.w.clone()), (base.a.clone(), base.w.clone()));
        assert_eq!((noised.b1, noised.b2), (base.b1, base.b2));

        let other = noise_replicate(&base, 0.2, 2).unwrap();
        assert_ne!(other.c, noised.c);
        assert_eq!(other.a, noised.a);
    }

    #[test]
    fn noise_preconditions() {
        let base = gen_synthetic(&GenConfig::new(20, 3, 7)).unwrap();
        assert_eq!(noise_replicate(&base, 0.0, 1), Err(GenError::BadNoiseLevel(0.0)));
        let zero = Instance { c: vec![0.0; 20], ..base };
        assert_eq!(noise_replicate(&zero, 0.2, 1), Err(GenError::ZeroScores));
    }

    #[test]
    fn split_seed_spreads() {
        let seeds: std::collections::HashSet<u64> = (0..1000).map(|i| split_seed(9, i)).collect();
        assert_eq!(seeds.len(), 1000);
    }
}
