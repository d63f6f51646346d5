//! End-to-end solve of the diversity-constrained ranking LP.
//!
//! The pipeline is:
//!
//! 1. [`precheck_feasibility`]: the bound interval must meet the range of
//!    `a'Xw` over all assignments.
//! 2. [`reduce_two_sided`]: if some unconstrained optimum already satisfies
//!    the bounds we are done; otherwise exactly one bound is active and the
//!    problem becomes `max c'Xw s.t. a'Xw <= b2` (a lower bound is flipped
//!    into this form with `a -> -a`, `b2 -> -b1`).
//! 3. [`solve_dual_bisection`]: bisection on the convex piecewise-linear
//!    dual, switching to exact kink tracing once the bracket is narrow and,
//!    optionally, screening out candidates that provably stay below the
//!    top `n` over the bracket.
//! 4. [`recover_primal`]: the optimum mixes the min- and max-diversity
//!    vertices of the optimal face at `λ*`.

use crate::dual::{eval_dual, kink_left, kink_right, ActiveSet, DualEvaluation, TieTolerance, UpperProblem};
use crate::model::{ExtremeAssignment, Instance, PrimalMixture, Solution, SolveStats, SolveStatus};
use crate::rank::solve_unconstrained;
use std::time::Instant;

#[derive(Debug, Clone, PartialEq)]
pub struct SolverOptions {
    /// Bracket width below which kinks are traced. `None` picks
    /// `1e-2 * (1 + λ)` at the first finite bracket.
    pub big_delta: Option<f64>,
    /// Bracket width at which the search stops without an exact kink.
    pub small_delta: f64,
    pub screening: bool,
    pub max_iterations: usize,
    /// Tie grouping used when evaluating at a traced kink.
    pub kink_ties: TieTolerance,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            big_delta: None,
            small_delta: 1e-10,
            screening: true,
            max_iterations: 200,
            kink_ties: TieTolerance::at_kink(),
        }
    }
}

impl SolverOptions {
    /// Bisection and tracing without screening.
    pub fn without_screening() -> Self {
        Self {
            screening: false,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SolveError {
    #[error("infeasible: bounds [{b1}, {b2}] do not meet the attainable diversity range [{div_min}, {div_max}]")]
    Infeasible { b1: f64, b2: f64, div_min: f64, div_max: f64 },
    #[error("iteration cap {iterations} reached with bracket [{lambda_min}, {lambda_max}]")]
    IterationCap {
        iterations: usize,
        lambda_min: f64,
        lambda_max: f64,
    },
    #[error("dual is unbounded below (λ grew past {lambda})")]
    Unbounded { lambda: f64 },
    #[error("no exact dual optimum; search ended on bracket [{lambda_min}, {lambda_max}]")]
    BracketOnly { lambda_min: f64, lambda_max: f64 },
    #[error("invalid tolerances: need big_delta > small_delta >= 0")]
    BadTolerances,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeasibilityReport {
    pub feasible: bool,
    pub div_min: f64,
    pub div_max: f64,
}

/// Range of `a'Xw` over every assignment, and whether `[b1, b2]` meets it.
pub fn precheck_feasibility(instance: &Instance) -> FeasibilityReport {
    let (div_min, div_max) = diversity_range(&instance.a, &instance.w);
    FeasibilityReport {
        feasible: instance.b1.max(div_min) <= instance.b2.min(div_max),
        div_min,
        div_max,
    }
}

fn diversity_range(a: &[f64], w: &[f64]) -> (f64, f64) {
    let n = w.len();
    let mut desc = a.to_vec();
    if n < desc.len() {
        desc.select_nth_unstable_by(n - 1, |x, y| y.total_cmp(x));
    }
    let mut top = desc[..n].to_vec();
    top.sort_unstable_by(|x, y| y.total_cmp(x));
    let max = top.iter().zip(w).map(|(x, wj)| x * wj).sum();

    let mut asc = a.to_vec();
    if n < asc.len() {
        asc.select_nth_unstable_by(n - 1, |x, y| x.total_cmp(y));
    }
    let mut bottom = asc[..n].to_vec();
    bottom.sort_unstable_by(|x, y| x.total_cmp(y));
    let min = bottom.iter().zip(w).map(|(x, wj)| x * wj).sum();
    (min, max)
}

/// Outcome of dropping one side of the diversity bound.
#[derive(Debug, Clone, PartialEq)]
pub enum Reduction {
    /// An unconstrained optimum satisfies both bounds.
    AlreadyOptimal(PrimalMixture),
    /// Every unconstrained optimum exceeds `b2`; only the upper bound matters.
    Upper(UpperProblem),
    /// Every unconstrained optimum is below `b1`; stored as the upper-bound
    /// problem with `a -> -a` and `b2 -> -b1`.
    LowerAsUpper(UpperProblem),
}

/// Picks the active side of the diversity bound from the tie-aware range of
/// `a'Xw` over the unconstrained optimal face. Assumes the instance passed
/// [`precheck_feasibility`].
pub fn reduce_two_sided(instance: &Instance) -> Reduction {
    let u = solve_unconstrained(instance);
    if u.min_div > instance.b2 {
        return Reduction::Upper(UpperProblem {
            c: instance.c.clone(),
            a: instance.a.clone(),
            w: instance.w.clone(),
            b2: instance.b2,
        });
    }
    if u.max_div < instance.b1 {
        return Reduction::LowerAsUpper(UpperProblem {
            c: instance.c.clone(),
            a: instance.a.iter().map(|v| -v).collect(),
            w: instance.w.clone(),
            b2: -instance.b1,
        });
    }
    let mixture = if u.min_div >= instance.b1 {
        PrimalMixture::vertex(instance, u.x_min)
    } else if u.max_div <= instance.b2 {
        PrimalMixture::vertex(instance, u.x_max)
    } else {
        // the face straddles the whole interval; aim at its middle
        let target = 0.5 * (instance.b1 + instance.b2);
        let rho = (target - u.max_div) / (u.min_div - u.max_div);
        PrimalMixture::new(instance, u.x_min, u.x_max, rho)
    };
    Reduction::AlreadyOptimal(mixture)
}

/// Bracketing state of the dual search.
#[derive(Debug, Clone, PartialEq)]
pub struct DualSearchState {
    pub lambda_min: f64,
    pub lambda_max: f64,
    pub lambda: f64,
    pub active: ActiveSet,
    pub big_delta: Option<f64>,
    pub small_delta: f64,
    pub iterations: usize,
    pub screen_events: usize,
    pub dropped: usize,
    pub kinks_traced: usize,
}

impl DualSearchState {
    pub fn new(m: usize, opts: &SolverOptions) -> Self {
        Self {
            lambda_min: 0.0,
            lambda_max: f64::INFINITY,
            lambda: 1.0,
            active: ActiveSet::full(m),
            big_delta: opts.big_delta,
            small_delta: opts.small_delta,
            iterations: 0,
            screen_events: 0,
            dropped: 0,
            kinks_traced: 0,
        }
    }

    pub fn width(&self) -> f64 {
        self.lambda_max - self.lambda_min
    }

    fn traceable(&self) -> bool {
        self.big_delta.is_some_and(|d| self.width() < d)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum DualOutcome {
    /// `eval` certifies `g'_-(λ*) <= 0 <= g'_+(λ*)`.
    Exact { lambda_star: f64, eval: DualEvaluation },
    /// Search stopped once the bracket was narrower than `small_delta`.
    Bracket {
        at_min: DualEvaluation,
        at_max: DualEvaluation,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct DualSolve {
    pub outcome: DualOutcome,
    pub state: DualSearchState,
}

/// Minimizes the dual of `problem` over `λ >= 0`.
///
/// Assumes the constraint is binding at some finite `λ*`, which
/// [`reduce_two_sided`] guarantees.
pub fn solve_dual_bisection(problem: &UpperProblem, opts: &SolverOptions) -> Result<DualSolve, SolveError> {
    bisect(problem, opts, false)
}

fn doubling_cap(problem: &UpperProblem) -> f64 {
    let c_max = problem.c.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    let a_max = problem.a.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    if a_max > 0.0 {
        1e12 * (1.0 + c_max / a_max)
    } else {
        1e12
    }
}

fn bisect(problem: &UpperProblem, opts: &SolverOptions, zero_checked: bool) -> Result<DualSolve, SolveError> {
    if let Some(d) = opts.big_delta {
        if !(d > opts.small_delta) {
            return Err(SolveError::BadTolerances);
        }
    }
    if !(opts.small_delta >= 0.0) {
        return Err(SolveError::BadTolerances);
    }
    let mut state = DualSearchState::new(problem.m(), opts);

    if !zero_checked {
        let e0 = eval_dual(problem, 0.0, &state.active, TieTolerance::Exact);
        if e0.g_plus >= 0.0 {
            return Ok(DualSolve {
                outcome: DualOutcome::Exact {
                    lambda_star: 0.0,
                    eval: e0,
                },
                state,
            });
        }
    }
    let cap = doubling_cap(problem);

    while state.width() > state.small_delta {
        if state.iterations >= opts.max_iterations {
            return Err(SolveError::IterationCap {
                iterations: state.iterations,
                lambda_min: state.lambda_min,
                lambda_max: state.lambda_max,
            });
        }
        state.iterations += 1;
        let lambda = state.lambda;
        let e = eval_dual(problem, lambda, &state.active, TieTolerance::Exact);
        log::trace!(
            "iter {} λ={lambda:.12e} bracket=[{:.12e}, {:.12e}] g'=({:.6e}, {:.6e}) |I|={}",
            state.iterations,
            state.lambda_min,
            state.lambda_max,
            e.g_minus,
            e.g_plus,
            state.active.len()
        );

        if e.g_plus < 0.0 {
            // optimum lies to the right
            let mut new_min = lambda;
            if state.traceable() {
                let kr = kink_right(problem, &e, &state.active);
                if kr.is_infinite() {
                    return Err(SolveError::Unbounded { lambda });
                }
                state.kinks_traced += 1;
                let ek = eval_dual(problem, kr, &state.active, opts.kink_ties);
                if ek.g_plus >= 0.0 {
                    return Ok(exact(kr, ek, state));
                }
                // g'_-(K_R) = g'_+(λ) < 0 and g'_+(K_R) < 0: the optimum is past K_R
                new_min = new_min.max(kr.min(state.lambda_max));
            }
            state.lambda_min = new_min;
            if state.lambda_max.is_finite() {
                state.lambda = 0.5 * (state.lambda_min + state.lambda_max);
            } else {
                state.lambda = 2.0 * lambda;
                if state.lambda > cap {
                    return Err(SolveError::Unbounded { lambda: state.lambda });
                }
            }
        } else if e.g_minus > 0.0 {
            // optimum lies to the left
            let mut new_max = lambda;
            if state.traceable() {
                if let Some(kl) = kink_left(problem, &e, &state.active) {
                    state.kinks_traced += 1;
                    let ek = eval_dual(problem, kl, &state.active, opts.kink_ties);
                    if ek.g_minus <= 0.0 {
                        return Ok(exact(kl, ek, state));
                    }
                    new_max = new_max.min(kl.max(state.lambda_min));
                }
            }
            state.lambda_max = new_max;
            if state.big_delta.is_none() {
                state.big_delta = Some((1e-2 * (1.0 + state.lambda_max)).max(2.0 * state.small_delta));
            }
            state.lambda = 0.5 * (state.lambda_min + state.lambda_max);
        } else {
            return Ok(exact(lambda, e, state));
        }

        if opts.screening && state.lambda_max.is_finite() {
            let dropped = screen_candidates(&mut state, problem);
            if !dropped.is_empty() {
                state.screen_events += 1;
                state.dropped += dropped.len();
                log::debug!("screened {} candidates, |I|={}", dropped.len(), state.active.len());
            }
        }
    }

    let at_min = eval_dual(problem, state.lambda_min, &state.active, TieTolerance::Exact);
    let at_max = eval_dual(problem, state.lambda_max, &state.active, TieTolerance::Exact);
    Ok(DualSolve {
        outcome: DualOutcome::Bracket { at_min, at_max },
        state,
    })
}

fn exact(lambda_star: f64, eval: DualEvaluation, mut state: DualSearchState) -> DualSolve {
    state.lambda = lambda_star;
    DualSolve {
        outcome: DualOutcome::Exact { lambda_star, eval },
        state,
    }
}

/// Drops every active candidate that scores strictly below all of the
/// current top `n` at both ends of the bracket. Such a candidate is below
/// the top `n` at every `λ` in the bracket, including `λ*`, so its row of the
/// optimal solution is zero.
///
/// The reference set is the top `n` of `c - λa` at `state.lambda`, ties
/// broken by index. No-op while the bracket is unbounded.
pub fn screen_candidates(state: &mut DualSearchState, problem: &UpperProblem) -> Vec<usize> {
    if !state.lambda_max.is_finite() {
        return Vec::new();
    }
    let n = problem.n();
    if state.active.len() <= n {
        return Vec::new();
    }
    let (lo, hi, mid) = (state.lambda_min, state.lambda_max, state.lambda);
    let score = |i: usize, l: f64| problem.c[i] - l * problem.a[i];

    let mut top: Vec<usize> = state.active.indices().to_vec();
    top.select_nth_unstable_by(n - 1, |&i, &j| score(j, mid).total_cmp(&score(i, mid)).then(i.cmp(&j)));
    top.truncate(n);

    let theta_min = top.iter().map(|&i| score(i, lo)).fold(f64::INFINITY, f64::min);
    let theta_max = top.iter().map(|&i| score(i, hi)).fold(f64::INFINITY, f64::min);

    let mut dropped = Vec::new();
    state.active.retain(|i| {
        let drop = score(i, lo) < theta_min && score(i, hi) < theta_max;
        if drop {
            dropped.push(i);
        }
        !drop
    });
    dropped
}

/// Optimal mixture from an exact dual optimum.
///
/// `X1` is the min-diversity vertex of the optimal face (`a'X1w <= b2`) and
/// `X2` the max-diversity vertex (`a'X2w >= b2`); `rho` puts the mixture
/// exactly on `b2`. Diversity and objective are evaluated on `problem`.
pub fn recover_primal(problem: &UpperProblem, eval: &DualEvaluation) -> Result<PrimalMixture, SolveError> {
    let b2 = problem.b2;
    let (d1, d2) = (eval.min_div, eval.max_div);
    if d2 <= b2 && eval.lambda == 0.0 {
        // constraint slack at λ* = 0: every optimal vertex is feasible
        return Ok(mixture_on(problem, eval.x_max_div.clone(), eval.x_max_div.clone(), 1.0));
    }
    if !(d1 <= b2 && b2 <= d2) {
        return Err(SolveError::BracketOnly {
            lambda_min: eval.lambda,
            lambda_max: eval.lambda,
        });
    }
    let rho = if d1 == d2 { 1.0 } else { (b2 - d2) / (d1 - d2) };
    Ok(mixture_on(problem, eval.x_min_div.clone(), eval.x_max_div.clone(), rho))
}

/// Feasible mixture from a bracket `[λ_min, λ_max]` with `g'_+(λ_min) < 0 < g'_-(λ_max)`,
/// together with an upper bound on its duality gap.
pub fn recover_from_bracket(problem: &UpperProblem, at_min: &DualEvaluation, at_max: &DualEvaluation) -> (PrimalMixture, f64) {
    let b2 = problem.b2;
    let x_hi = at_min.x_min_div.clone();
    let x_lo = at_max.x_max_div.clone();
    let (d_hi, d_lo) = (problem.diversity_of(&x_hi), problem.diversity_of(&x_lo));
    let mixture = if d_lo >= d_hi || d_hi <= b2 {
        mixture_on(problem, x_lo.clone(), x_lo, 1.0)
    } else {
        let rho = (b2 - d_hi) / (d_lo - d_hi);
        mixture_on(problem, x_lo, x_hi, rho)
    };
    let gap = (at_min.g.min(at_max.g) - mixture.objective).max(0.0);
    (mixture, gap)
}

fn mixture_on(problem: &UpperProblem, x1: ExtremeAssignment, x2: ExtremeAssignment, rho: f64) -> PrimalMixture {
    let rho = rho.clamp(0.0, 1.0);
    let objective = rho * problem.objective_of(&x1) + (1.0 - rho) * problem.objective_of(&x2);
    let diversity = rho * problem.diversity_of(&x1) + (1.0 - rho) * problem.diversity_of(&x2);
    PrimalMixture {
        x1,
        x2,
        rho,
        objective,
        diversity,
    }
}

/// Full detail of a solve, including the dual search when one ran.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub solution: Solution,
    pub reduction: Option<UpperProblem>,
    pub dual: Option<DualSolve>,
}

/// Solves `max c'Xw` over the assignment polytope subject to `b1 <= a'Xw <= b2`.
pub fn solve(instance: &Instance, opts: &SolverOptions) -> Result<Solution, SolveError> {
    solve_detailed(instance, opts).map(|r| r.solution)
}

/// [`solve`], also returning the reduced problem and the final search state.
pub fn solve_detailed(instance: &Instance, opts: &SolverOptions) -> Result<SolveReport, SolveError> {
    let start = Instant::now();
    let report = precheck_feasibility(instance);
    if !report.feasible {
        return Err(SolveError::Infeasible {
            b1: instance.b1,
            b2: instance.b2,
            div_min: report.div_min,
            div_max: report.div_max,
        });
    }
    let (problem, status) = match reduce_two_sided(instance) {
        Reduction::AlreadyOptimal(mixture) => {
            let stats = SolveStats {
                exact: true,
                wall_time_us: start.elapsed().as_secs_f64() * 1e6,
                ..SolveStats::default()
            };
            return Ok(SolveReport {
                solution: Solution {
                    mixture,
                    lambda_star: 0.0,
                    status: SolveStatus::UnconstrainedOptimal,
                    stats,
                },
                reduction: None,
                dual: None,
            });
        }
        Reduction::Upper(p) => (p, SolveStatus::UpperActive),
        Reduction::LowerAsUpper(p) => (p, SolveStatus::LowerActive),
    };

    let dual = bisect(&problem, opts, true)?;
    let (reduced, lambda_star, gap) = match &dual.outcome {
        DualOutcome::Exact { lambda_star, eval } => (recover_primal(&problem, eval)?, *lambda_star, 0.0),
        DualOutcome::Bracket { at_min, at_max } => {
            let (mix, gap) = recover_from_bracket(&problem, at_min, at_max);
            (mix, 0.5 * (at_min.lambda + at_max.lambda), gap)
        }
    };
    let mixture = PrimalMixture::new(instance, reduced.x1, reduced.x2, reduced.rho);
    let state = &dual.state;
    let stats = SolveStats {
        iterations: state.iterations,
        screens: state.screen_events,
        dropped: state.dropped,
        kinks_traced: state.kinks_traced,
        wall_time_us: start.elapsed().as_secs_f64() * 1e6,
        exact: matches!(dual.outcome, DualOutcome::Exact { .. }),
        gap,
        lambda_min: state.lambda_min,
        lambda_max: state.lambda_max,
    };
    Ok(SolveReport {
        solution: Solution {
            mixture,
            lambda_star,
            status,
            stats,
        },
        reduction: Some(problem),
        dual: Some(dual),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn running(b1: f64, b2: f64) -> Instance {
        Instance::new(vec![3.0, 2.0, 0.0], vec![1.0, -1.0, 0.0], Some(vec![1.0]), 1, b1, b2).unwrap()
    }

    #[test]
    fn feasibility_examples() {
        let r = precheck_feasibility(&running(-0.5, 0.5));
        assert!(r.feasible);
        assert_eq!((r.div_min, r.div_max), (-1.0, 1.0));
        assert!(!precheck_feasibility(&running(2.0, 3.0)).feasible);
        let zero = Instance::new(vec![1.0, 0.0], vec![0.0, 0.0], None, 1, -1.0, 0.0).unwrap();
        let r = precheck_feasibility(&zero);
        assert!(r.feasible);
        assert_eq!((r.div_min, r.div_max), (0.0, 0.0));
    }

    #[test]
    fn diversity_range_uses_rearrangement() {
        let (lo, hi) = diversity_range(&[5.0, 1.0, 3.0, -2.0], &[2.0, 1.0]);
        assert_eq!(hi, 2.0 * 5.0 + 3.0);
        assert_eq!(lo, 2.0 * -2.0 + 1.0);
    }

    #[test]
    fn reduction_cases() {
        match reduce_two_sided(&running(-0.5, 0.5)) {
            Reduction::Upper(p) => assert_eq!(p.b2, 0.5),
            other => panic!("expected Upper, got {other:?}"),
        }
        match reduce_two_sided(&running(-3.0, 3.0)) {
            Reduction::AlreadyOptimal(mix) => {
                assert_eq!(mix.x1.slots, vec![0]);
                assert_eq!(mix.rho, 1.0);
            }
            other => panic!("expected AlreadyOptimal, got {other:?}"),
        }
        let flipped =
            Instance::new(vec![3.0, 2.0, 0.0], vec![-1.0, 1.0, 0.0], Some(vec![1.0]), 1, 0.5, 1.0).unwrap();
        match reduce_two_sided(&flipped) {
            Reduction::LowerAsUpper(p) => {
                assert_eq!(p.a, vec![1.0, -1.0, -0.0]);
                assert_eq!(p.b2, -0.5);
            }
            other => panic!("expected LowerAsUpper, got {other:?}"),
        }
    }

    #[test]
    fn reduction_mixes_when_face_straddles_interval() {
        // c ties fill the single slot; vertices have diversity -1 and 1
        let inst = Instance::new(vec![1.0, 1.0, 0.0], vec![1.0, -1.0, 0.0], Some(vec![1.0]), 1, -0.5, 0.5).unwrap();
        match reduce_two_sided(&inst) {
            Reduction::AlreadyOptimal(mix) => {
                assert!(mix.diversity.abs() < 1e-15);
                assert_eq!(mix.objective, 1.0);
            }
            other => panic!("expected AlreadyOptimal, got {other:?}"),
        }
    }

    fn upper(c: &[f64], a: &[f64], b2: f64) -> UpperProblem {
        UpperProblem {
            c: c.to_vec(),
            a: a.to_vec(),
            w: vec![1.0],
            b2,
        }
    }

    fn exact_lambda(s: &DualSolve) -> (f64, &DualEvaluation) {
        match &s.outcome {
            DualOutcome::Exact { lambda_star, eval } => (*lambda_star, eval),
            other => panic!("expected exact outcome, got {other:?}"),
        }
    }

    #[test]
    fn bisection_examples() {
        for screening in [false, true] {
            let opts = SolverOptions {
                screening,
                ..SolverOptions::default()
            };
            let p = upper(&[3.0, 2.0, 0.0], &[1.0, -1.0, 0.0], 0.0);
            let s = solve_dual_bisection(&p, &opts).unwrap();
            let (l, e) = exact_lambda(&s);
            assert_eq!((l, e.g), (0.5, 2.5));

            let p = upper(&[3.0, 2.0], &[1.0, 0.0], 0.5);
            let s = solve_dual_bisection(&p, &opts).unwrap();
            let (l, e) = exact_lambda(&s);
            assert_eq!((l, e.g), (1.0, 2.5));
            assert_eq!((e.g_minus, e.g_plus), (-0.5, 0.5));

            // b2 equal to the unconstrained diversity: λ* = 0 at once
            let p = upper(&[3.0, 2.0, 0.0], &[1.0, -1.0, 0.0], 1.0);
            let s = solve_dual_bisection(&p, &opts).unwrap();
            assert_eq!(exact_lambda(&s).0, 0.0);
            assert_eq!(s.state.iterations, 0);
        }
    }

    #[test]
    fn bad_tolerances_rejected() {
        let p = upper(&[3.0, 2.0], &[1.0, 0.0], 0.5);
        let opts = SolverOptions {
            big_delta: Some(1e-12),
            small_delta: 1e-10,
            ..SolverOptions::default()
        };
        assert_eq!(solve_dual_bisection(&p, &opts).unwrap_err(), SolveError::BadTolerances);
    }

    #[test]
    fn screening_example() {
        let p = upper(&[3.0, 2.0, 0.0], &[1.0, -1.0, 0.0], 0.0);
        let mut state = DualSearchState::new(3, &SolverOptions::default());
        state.lambda_min = 0.4;
        state.lambda_max = 0.6;
        state.lambda = 0.5;
        let dropped = screen_candidates(&mut state, &p);
        assert_eq!(dropped, vec![2]);
        assert_eq!(state.active.indices(), &[0, 1]);
    }

    #[test]
    fn screening_is_noop_on_unbounded_bracket() {
        let p = upper(&[3.0, 2.0, 0.0], &[1.0, -1.0, 0.0], 0.0);
        let mut state = DualSearchState::new(3, &SolverOptions::default());
        assert!(screen_candidates(&mut state, &p).is_empty());
        assert_eq!(state.active.len(), 3);
    }

    #[test]
    fn screening_with_inert_constraint_keeps_top_of_c() {
        let p = upper(&[3.0, 2.0, 0.0, 5.0], &[0.0; 4], 0.0);
        let mut state = DualSearchState::new(4, &SolverOptions::default());
        state.lambda_min = 1.0;
        state.lambda_max = 2.0;
        state.lambda = 1.5;
        let mut dropped = screen_candidates(&mut state, &p);
        dropped.sort_unstable();
        assert_eq!(dropped, vec![0, 1, 2]);
    }

    #[test]
    fn recover_examples() {
        let p = upper(&[3.0, 2.0, 0.0], &[1.0, -1.0, 0.0], 0.0);
        let e = eval_dual(&p, 0.5, &ActiveSet::full(3), TieTolerance::at_kink());
        let mix = recover_primal(&p, &e).unwrap();
        assert_eq!(mix.x1.slots, vec![1]);
        assert_eq!(mix.x2.slots, vec![0]);
        assert_eq!(mix.rho, 0.5);
        assert_eq!(mix.objective, 2.5);
        assert_eq!(mix.diversity, 0.0);

        // b2 equal to X2's diversity
        let p = upper(&[3.0, 2.0, 0.0], &[1.0, -1.0, 0.0], 1.0);
        let e = eval_dual(&p, 0.5, &ActiveSet::full(3), TieTolerance::at_kink());
        let mix = recover_primal(&p, &e).unwrap();
        assert_eq!(mix.rho, 0.0);
        assert_eq!(mix.diversity, 1.0);

        // slack at λ = 0
        let p = upper(&[3.0, 2.0, 0.0], &[1.0, -1.0, 0.0], 2.0);
        let e = eval_dual(&p, 0.0, &ActiveSet::full(3), TieTolerance::Exact);
        let mix = recover_primal(&p, &e).unwrap();
        assert_eq!((mix.rho, mix.x1.slots.clone(), mix.x2.slots.clone()), (1.0, vec![0], vec![0]));

        // not optimal at λ = 2
        let p = upper(&[3.0, 2.0, 0.0], &[1.0, -1.0, 0.0], 0.0);
        let e = eval_dual(&p, 2.0, &ActiveSet::full(3), TieTolerance::Exact);
        assert!(matches!(recover_primal(&p, &e), Err(SolveError::BracketOnly { .. })));
    }

    #[test]
    fn solve_examples() {
        let s = solve(&running(-0.5, 0.5), &SolverOptions::default()).unwrap();
        assert_eq!(s.status, SolveStatus::UpperActive);
        assert_eq!(s.lambda_star, 0.5);
        assert_eq!(s.mixture.rho, 0.25);
        assert!((s.mixture.objective - 2.75).abs() < 1e-15);
        assert!((s.mixture.diversity - 0.5).abs() < 1e-15);

        let s = solve(&running(-3.0, 3.0), &SolverOptions::default()).unwrap();
        assert_eq!(s.status, SolveStatus::UnconstrainedOptimal);
        assert_eq!((s.lambda_star, s.mixture.rho, s.mixture.objective), (0.0, 1.0, 3.0));

        let err = solve(&running(2.0, 3.0), &SolverOptions::default()).unwrap_err();
        assert!(matches!(err, SolveError::Infeasible { div_min, div_max, .. } if div_min == -1.0 && div_max == 1.0));
    }

    #[test]
    fn lower_bound_reported_in_original_sign() {
        let inst = Instance::new(vec![3.0, 2.0, 0.0], vec![-1.0, 1.0, 0.0], Some(vec![1.0]), 1, -0.5, 0.5).unwrap();
        let s = solve(&inst, &SolverOptions::default()).unwrap();
        assert_eq!(s.status, SolveStatus::LowerActive);
        assert_eq!(s.lambda_star, 0.5);
        assert!((s.mixture.diversity - -0.5).abs() < 1e-15);
        assert!((s.mixture.objective - 2.75).abs() < 1e-15);
    }
}
