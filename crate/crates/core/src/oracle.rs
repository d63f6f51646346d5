//! Independent reference solvers for tests and `verify`.
//!
//! Nothing here calls into `rank`, `dual` or `solver`. The dual value is
//! recomputed with a plain sort, kinks are found by enumerating every
//! pairwise crossing of `c - λa`, and the tiny brute force enumerates
//! vertex pairs of the assignment polytope directly.

use crate::model::{ExtremeAssignment, Instance, PrimalMixture};

/// Largest `m` accepted by [`oracle_dual_breakpoints`].
pub const BREAKPOINT_SIZE_CAP: usize = 2000;
/// Up to this many breakpoints every one is evaluated; beyond it a convex
/// search over the sorted list is used.
const EXHAUSTIVE_BREAKPOINTS: usize = 4096;
/// Relative distance under which two crossings are merged.
const DEDUP_REL: f64 = 1e-13;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OracleError {
    #[error("instance too large for the oracle: {what} = {got} > {cap}")]
    SizeCap { what: &'static str, got: usize, cap: usize },
    #[error("dual is unbounded below: slope {slope} beyond the last crossing")]
    Unbounded { slope: f64 },
}

/// Plain `g(λ) = Σ_k w_k z_(k) + b2 λ` with a full sort.
pub fn dual_value(c: &[f64], a: &[f64], w: &[f64], b2: f64, lambda: f64) -> f64 {
    let mut z: Vec<f64> = c.iter().zip(a).map(|(ci, ai)| ci - lambda * ai).collect();
    z.sort_by(|x, y| y.partial_cmp(x).unwrap());
    z.iter().zip(w).map(|(zk, wk)| zk * wk).sum::<f64>() + b2 * lambda
}

/// Top-`n` candidates of `c - λa` in slot order (ties by index).
pub fn top_n_at(c: &[f64], a: &[f64], n: usize, lambda: f64) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..c.len()).collect();
    idx.sort_by(|&i, &j| {
        let zi = c[i] - lambda * a[i];
        let zj = c[j] - lambda * a[j];
        zj.partial_cmp(&zi).unwrap().then(i.cmp(&j))
    });
    idx.truncate(n);
    idx
}

/// Slope of `g` on an open linear piece containing `lambda`.
pub fn slope_at(c: &[f64], a: &[f64], w: &[f64], b2: f64, lambda: f64) -> f64 {
    let top = top_n_at(c, a, w.len(), lambda);
    b2 - top.iter().zip(w).map(|(&i, wk)| a[i] * wk).sum::<f64>()
}

/// Every pairwise crossing `(c_i - c_j) / (a_i - a_j)` in `[0, ∞)`, plus 0,
/// sorted and deduplicated.
pub fn pairwise_breakpoints(c: &[f64], a: &[f64]) -> Vec<f64> {
    let m = c.len();
    let mut out = vec![0.0];
    for i in 0..m {
        for j in (i + 1)..m {
            let da = a[i] - a[j];
            if da != 0.0 {
                let t = (c[i] - c[j]) / da;
                if t >= 0.0 && t.is_finite() {
                    out.push(t);
                }
            }
        }
    }
    out.sort_by(|x, y| x.partial_cmp(y).unwrap());
    out.dedup_by(|later, kept| (*later - *kept).abs() <= DEDUP_REL * later.abs().max(kept.abs()));
    out
}

/// The crossings at which the slope of `g` actually changes, i.e. the true kinks
/// in `(0, ∞)`. Each breakpoint is classified by the slopes on the adjacent
/// open pieces, sampled at midpoints.
pub fn true_kinks(c: &[f64], a: &[f64], w: &[f64], b2: f64) -> Vec<f64> {
    let bps = pairwise_breakpoints(c, a);
    let probes = piece_probes(&bps);
    let slopes: Vec<f64> = probes.iter().map(|&l| slope_at(c, a, w, b2, l)).collect();
    let scale = w.iter().sum::<f64>() * a.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    bps.iter()
        .enumerate()
        .skip(1)
        .filter(|&(k, _)| (slopes[k + 1] - slopes[k]).abs() > 1e-12 * (1.0 + scale))
        .map(|(_, &b)| b)
        .collect()
}

/// One probe point inside each open piece: before the first breakpoint
/// (only meaningful when it is positive), between consecutive ones, and past
/// the last. `probes[k]` lies left of `bps[k]` and `probes[k + 1]` right of it.
fn piece_probes(bps: &[f64]) -> Vec<f64> {
    let mut probes = Vec::with_capacity(bps.len() + 1);
    probes.push(bps[0] - 1.0);
    for pair in bps.windows(2) {
        probes.push(0.5 * (pair[0] + pair[1]));
    }
    let last = *bps.last().unwrap();
    probes.push(last + 1.0 + last.abs());
    probes
}

#[derive(Debug, Clone, PartialEq)]
pub struct DualOracle {
    pub lambda_star: f64,
    pub g_star: f64,
    /// Slopes of `g` on the pieces adjacent to `λ*`. At `λ* = 0` both are the
    /// slope of the first piece.
    pub slope_left: f64,
    pub slope_right: f64,
    pub all_breakpoints: Vec<f64>,
    /// Union of the top-`n` sets on the pieces adjacent to `λ*`: the support
    /// of every optimal primal solution.
    pub support: Vec<usize>,
}

/// Global minimizer of `g` over `λ >= 0` for the upper-bounded problem
/// `max c'Xw s.t. a'Xw <= b2`.
pub fn oracle_dual_breakpoints(c: &[f64], a: &[f64], w: &[f64], b2: f64) -> Result<DualOracle, OracleError> {
    if c.len() > BREAKPOINT_SIZE_CAP {
        return Err(OracleError::SizeCap {
            what: "m",
            got: c.len(),
            cap: BREAKPOINT_SIZE_CAP,
        });
    }
    let bps = pairwise_breakpoints(c, a);
    let last = *bps.last().unwrap();
    let tail_slope = slope_at(c, a, w, b2, last + 1.0 + last.abs());
    if tail_slope < 0.0 {
        return Err(OracleError::Unbounded { slope: tail_slope });
    }
    let g = |l: f64| dual_value(c, a, w, b2, l);

    let best = if bps.len() <= EXHAUSTIVE_BREAKPOINTS {
        let values: Vec<f64> = bps.iter().map(|&l| g(l)).collect();
        argmin_first(&values, 0)
    } else {
        // g restricted to the sorted breakpoints is convex: binary search for
        // the first non-negative forward difference, then polish locally
        let (mut lo, mut hi) = (0usize, bps.len() - 1);
        while lo < hi {
            let mid = (lo + hi) / 2;
            if g(bps[mid + 1]) - g(bps[mid]) >= 0.0 {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        let from = lo.saturating_sub(4);
        let to = (lo + 5).min(bps.len());
        let values: Vec<f64> = bps[from..to].iter().map(|&l| g(l)).collect();
        argmin_first(&values, from)
    };

    let lambda_star = bps[best];
    let g_star = g(lambda_star);
    let left_probe = if best == 0 { None } else { Some(0.5 * (bps[best - 1] + lambda_star)) };
    let right_probe = if best + 1 < bps.len() {
        0.5 * (lambda_star + bps[best + 1])
    } else {
        lambda_star + 1.0 + lambda_star.abs()
    };
    let slope_right = slope_at(c, a, w, b2, right_probe);
    let slope_left = left_probe.map_or(slope_right, |l| slope_at(c, a, w, b2, l));

    let n = w.len();
    let mut support = top_n_at(c, a, n, right_probe);
    if let Some(l) = left_probe {
        support.extend(top_n_at(c, a, n, l));
    } else if lambda_star == 0.0 {
        support = top_n_at(c, a, n, 0.0);
    }
    support.sort_unstable();
    support.dedup();

    Ok(DualOracle {
        lambda_star,
        g_star,
        slope_left,
        slope_right,
        all_breakpoints: bps,
        support,
    })
}

/// First index whose value is within round-off of the minimum, so that a flat
/// minimizing segment resolves to its smallest λ.
fn argmin_first(values: &[f64], offset: usize) -> usize {
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let tol = 1e-12 * (1.0 + min.abs());
    offset + values.iter().position(|&v| v <= min + tol).unwrap()
}

/// Largest sizes accepted by [`brute_force_tiny`].
pub const TINY_M_CAP: usize = 7;
pub const TINY_N_CAP: usize = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct BruteForce {
    pub objective: f64,
    pub best: PrimalMixture,
}

/// Every injective slot assignment of `n` slots from `m` candidates.
pub fn enumerate_vertices(m: usize, n: usize) -> Vec<ExtremeAssignment> {
    fn rec(m: usize, n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<ExtremeAssignment>) {
        if cur.len() == n {
            out.push(ExtremeAssignment::new(cur.clone()));
            return;
        }
        for i in 0..m {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(m, n, cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(m, n, &mut Vec::with_capacity(n), &mut vec![false; m], &mut out);
    out
}

/// Exact optimum of the two-sided problem by enumerating every pair of
/// vertices and the best feasible point on the segment between them.
/// `Ok(None)` when no assignment mixture satisfies the bounds.
pub fn brute_force_tiny(instance: &Instance) -> Result<Option<BruteForce>, OracleError> {
    if instance.m > TINY_M_CAP {
        return Err(OracleError::SizeCap {
            what: "m",
            got: instance.m,
            cap: TINY_M_CAP,
        });
    }
    if instance.n > TINY_N_CAP {
        return Err(OracleError::SizeCap {
            what: "n",
            got: instance.n,
            cap: TINY_N_CAP,
        });
    }
    let verts = enumerate_vertices(instance.m, instance.n);
    let obj: Vec<f64> = verts.iter().map(|v| v.weighted_sum(&instance.c, &instance.w)).collect();
    let div: Vec<f64> = verts.iter().map(|v| v.weighted_sum(&instance.a, &instance.w)).collect();
    let (b1, b2) = (instance.b1, instance.b2);

    let mut best: Option<(f64, usize, usize, f64)> = None;
    let mut consider = |value: f64, p: usize, q: usize, rho: f64| {
        if best.map_or(true, |(bv, ..)| value > bv) {
            best = Some((value, p, q, rho));
        }
    };
    for p in 0..verts.len() {
        if b1 <= div[p] && div[p] <= b2 {
            consider(obj[p], p, p, 1.0);
        }
        for q in (p + 1)..verts.len() {
            // x(ρ) = ρ·p + (1-ρ)·q; diversity d(ρ) = d_q + ρ (d_p - d_q)
            let dd = div[p] - div[q];
            let (lo, hi) = if dd == 0.0 {
                if b1 <= div[q] && div[q] <= b2 {
                    (0.0, 1.0)
                } else {
                    continue;
                }
            } else {
                let r1 = (b1 - div[q]) / dd;
                let r2 = (b2 - div[q]) / dd;
                let (r_lo, r_hi) = if r1 < r2 { (r1, r2) } else { (r2, r1) };
                (r_lo.max(0.0), r_hi.min(1.0))
            };
            if lo > hi {
                continue;
            }
            // objective linear in ρ: best at an end of the feasible range
            for rho in [lo, hi] {
                consider(rho * obj[p] + (1.0 - rho) * obj[q], p, q, rho);
            }
        }
    }
    Ok(best.map(|(objective, p, q, rho)| BruteForce {
        objective,
        best: PrimalMixture::new(instance, verts[p].clone(), verts[q].clone(), rho),
    }))
}
