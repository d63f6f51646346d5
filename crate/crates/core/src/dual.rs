//! The one-dimensional dual of the upper-bounded problem
//!
//! ```text
//! g(λ) = max_X (c - λa)'Xw + b2·λ,   λ ≥ 0
//! ```
//!
//! `g` is convex and piecewise linear. Its one-sided slopes at `λ` are
//! `b2 - max a'Xw` (left) and `b2 - min a'Xw` (right), both taken over the
//! optimal face at `λ`. Kinks are values of `λ` where two candidates with
//! different `a` swap inside the top `n` of `c - λa`.

use crate::model::ExtremeAssignment;
use crate::rank::{extremal_diversity, sort_scores, top_n_with_ties, Direction, SortedScores, TopSet};

/// Default relative tie tolerance used when evaluating at a traced kink.
pub const KINK_TIE_TOLERANCE: f64 = 1e-9;

/// Relative margin under which a crossing counts as "at" the current λ.
const CROSSING_MARGIN: f64 = 1e-13;

/// Relative threshold below which two diversity features are treated as parallel.
const PARALLEL_TOLERANCE: f64 = 1e-15;

/// The problem `max c'Xw s.t. a'Xw <= b2` after one side of the diversity
/// bound has been dropped.
#[derive(Debug, Clone, PartialEq)]
pub struct UpperProblem {
    pub c: Vec<f64>,
    pub a: Vec<f64>,
    pub w: Vec<f64>,
    pub b2: f64,
}

impl UpperProblem {
    pub fn m(&self) -> usize {
        self.c.len()
    }

    pub fn n(&self) -> usize {
        self.w.len()
    }

    pub fn objective_of(&self, x: &ExtremeAssignment) -> f64 {
        x.weighted_sum(&self.c, &self.w)
    }

    pub fn diversity_of(&self, x: &ExtremeAssignment) -> f64 {
        x.weighted_sum(&self.a, &self.w)
    }
}

/// Candidate indices still under consideration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActiveSet {
    indices: Vec<usize>,
}

impl ActiveSet {
    pub fn full(m: usize) -> Self {
        Self {
            indices: (0..m).collect(),
        }
    }

    pub fn from_indices(mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        indices.dedup();
        Self { indices }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    /// Keeps the indices for which `keep` returns true; returns how many were removed.
    pub fn retain(&mut self, mut keep: impl FnMut(usize) -> bool) -> usize {
        let before = self.indices.len();
        self.indices.retain(|&i| keep(i));
        before - self.indices.len()
    }
}

/// How scores are grouped into ties when evaluating `g`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TieTolerance {
    /// Only bit-equal scores tie.
    Exact,
    /// Scores within `rel * max|z|` tie.
    Relative(f64),
}

impl TieTolerance {
    pub fn at_kink() -> Self {
        TieTolerance::Relative(KINK_TIE_TOLERANCE)
    }

    fn absolute(self, z: &[f64]) -> f64 {
        match self {
            TieTolerance::Exact => 0.0,
            TieTolerance::Relative(rel) => rel * z.iter().fold(0.0f64, |acc, v| acc.max(v.abs())),
        }
    }
}

/// `g`, its one-sided derivatives and the extreme points realizing them.
///
/// `sorted` and `topset` hold positions into the active set;
/// `x_min_div`/`x_max_div` hold original candidate indices.
#[derive(Debug, Clone, PartialEq)]
pub struct DualEvaluation {
    pub lambda: f64,
    pub g: f64,
    pub g_minus: f64,
    pub g_plus: f64,
    pub min_div: f64,
    pub max_div: f64,
    pub sorted: SortedScores,
    pub topset: TopSet,
    pub x_min_div: ExtremeAssignment,
    pub x_max_div: ExtremeAssignment,
}

impl DualEvaluation {
    /// Subgradient optimality `g'_-(λ) <= 0 <= g'_+(λ)`.
    pub fn is_optimal(&self) -> bool {
        self.g_minus <= 0.0 && self.g_plus >= 0.0
    }

    pub fn is_kink(&self) -> bool {
        self.g_minus < self.g_plus
    }
}

/// Evaluates `g` on the candidates in `active`. Cost is dominated by one
/// sort of `|active|` scores.
pub fn eval_dual(problem: &UpperProblem, lambda: f64, active: &ActiveSet, tie: TieTolerance) -> DualEvaluation {
    let n = problem.n();
    assert!(active.len() >= n, "active set smaller than slot count");
    let idx = active.indices();
    let z: Vec<f64> = idx.iter().map(|&i| problem.c[i] - lambda * problem.a[i]).collect();
    let a: Vec<f64> = idx.iter().map(|&i| problem.a[i]).collect();
    let sorted = sort_scores(&z, tie.absolute(&z));
    let topset = top_n_with_ties(&sorted, n);

    let g = sorted.order[..n]
        .iter()
        .zip(&problem.w)
        .map(|(&p, &wk)| wk * z[p])
        .sum::<f64>()
        + problem.b2 * lambda;

    let (min_div, x_min) = extremal_diversity(&sorted, &topset, &a, &problem.w, Direction::Min);
    let (max_div, x_max) = extremal_diversity(&sorted, &topset, &a, &problem.w, Direction::Max);
    let to_original = |x: ExtremeAssignment| ExtremeAssignment::new(x.slots.iter().map(|&p| idx[p]).collect());

    DualEvaluation {
        lambda,
        g,
        g_minus: problem.b2 - max_div,
        g_plus: problem.b2 - min_div,
        min_div,
        max_div,
        sorted,
        topset,
        x_min_div: to_original(x_min),
        x_max_div: to_original(x_max),
    }
}

fn max_abs(problem: &UpperProblem, active: &ActiveSet) -> f64 {
    active
        .indices()
        .iter()
        .fold(0.0f64, |acc, &i| acc.max(problem.a[i].abs()))
}

/// λ at which candidates `i` and `j` have equal score, if they are not parallel.
#[inline]
fn crossing(problem: &UpperProblem, i: usize, j: usize, parallel: f64) -> Option<f64> {
    let da = problem.a[i] - problem.a[j];
    if da.abs() <= parallel {
        return None;
    }
    Some((problem.c[i] - problem.c[j]) / da)
}

/// Smallest kink of `g` strictly greater than `eval.lambda`, or `+∞` when `g`
/// is affine on `[λ, ∞)`.
///
/// The top-`n` set just to the right of `λ` is `eval.x_min_div` (ties broken
/// toward smaller `a`). Until one of those candidates is crossed by another
/// candidate, the ordering of the top block cannot change, so the next kink is
/// the earliest such crossing. Costs `O(n·|active|)`.
pub fn kink_right(problem: &UpperProblem, eval: &DualEvaluation, active: &ActiveSet) -> f64 {
    let lambda = eval.lambda;
    let parallel = PARALLEL_TOLERANCE * max_abs(problem, active);
    let floor = lambda + CROSSING_MARGIN * lambda.abs();
    let mut best = f64::INFINITY;
    for &j in &eval.x_min_div.slots {
        for &i in active.indices() {
            if let Some(k) = crossing(problem, i, j, parallel) {
                if k > floor && k < best {
                    best = k;
                }
            }
        }
    }
    best
}

/// Largest kink of `g` in `[0, eval.lambda)`, or `None` when `g` is affine on
/// `[0, λ]`. Mirror image of [`kink_right`] using the left-limit top set
/// `eval.x_max_div`.
pub fn kink_left(problem: &UpperProblem, eval: &DualEvaluation, active: &ActiveSet) -> Option<f64> {
    let lambda = eval.lambda;
    if lambda <= 0.0 {
        return None;
    }
    let parallel = PARALLEL_TOLERANCE * max_abs(problem, active);
    let ceil = lambda - CROSSING_MARGIN * lambda.abs();
    let mut best: Option<f64> = None;
    for &j in &eval.x_max_div.slots {
        for &i in active.indices() {
            if let Some(k) = crossing(problem, i, j, parallel) {
                if k >= 0.0 && k < ceil && best.map_or(true, |b| k > b) {
                    best = Some(k);
                }
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn three() -> UpperProblem {
        UpperProblem {
            c: vec![3.0, 2.0, 0.0],
            a: vec![1.0, -1.0, 0.0],
            w: vec![1.0],
            b2: 0.0,
        }
    }

    fn eval_at(p: &UpperProblem, lambda: f64) -> DualEvaluation {
        eval_dual(p, lambda, &ActiveSet::full(p.m()), TieTolerance::at_kink())
    }

    #[test]
    fn eval_examples() {
        let p = three();
        let e = eval_at(&p, 0.0);
        assert_eq!((e.g, e.g_minus, e.g_plus), (3.0, -1.0, -1.0));
        let e = eval_at(&p, 0.5);
        assert_eq!((e.g, e.g_minus, e.g_plus), (2.5, -1.0, 1.0));
        assert!(e.is_kink() && e.is_optimal());
        assert_eq!(e.topset.members(), vec![0, 1]);
        let e = eval_at(&p, 2.0);
        assert_eq!((e.g, e.g_minus, e.g_plus), (4.0, 1.0, 1.0));
    }

    #[test]
    fn kink_right_examples() {
        let p = UpperProblem {
            c: vec![3.0, 2.0],
            a: vec![1.0, 0.0],
            w: vec![1.0],
            b2: 0.0,
        };
        let active = ActiveSet::full(2);
        assert_eq!(kink_right(&p, &eval_at(&p, 0.0), &active), 1.0);

        let p = three();
        let active = ActiveSet::full(3);
        assert_eq!(kink_right(&p, &eval_at(&p, 0.0), &active), 0.5);

        let flat = UpperProblem {
            c: vec![3.0, 2.0],
            a: vec![0.0, 0.0],
            w: vec![1.0],
            b2: 0.0,
        };
        assert_eq!(kink_right(&flat, &eval_at(&flat, 0.0), &ActiveSet::full(2)), f64::INFINITY);
    }

    #[test]
    fn kink_left_examples() {
        let p = three();
        let active = ActiveSet::full(3);
        assert_eq!(kink_left(&p, &eval_at(&p, 2.0), &active), Some(0.5));
        assert_eq!(kink_left(&p, &eval_at(&p, 0.25), &active), None);
        let flat = UpperProblem {
            a: vec![0.0; 3],
            ..three()
        };
        assert_eq!(kink_left(&flat, &eval_at(&flat, 1.7), &active), None);
    }

    #[test]
    fn tracing_moves_strictly_past_current_kink() {
        let p = three();
        let active = ActiveSet::full(3);
        // right of 0.5 candidate 1 leads and its score only grows
        let e = eval_at(&p, 0.5);
        assert_eq!(kink_right(&p, &e, &active), f64::INFINITY);
        assert_eq!(kink_left(&p, &e, &active), None);
        // crossing of candidates 0 and 2 at λ = 3 happens below the top slot
        let e = eval_at(&p, 3.0);
        assert!(!e.is_kink());
        assert_eq!(kink_left(&p, &e, &active), Some(0.5));
    }

    #[test]
    fn active_set_restricts_evaluation() {
        let p = three();
        let e = eval_dual(&p, 0.0, &ActiveSet::from_indices(vec![1, 2]), TieTolerance::Exact);
        assert_eq!(e.g, 2.0);
        assert_eq!(e.x_max_div.slots, vec![1]);
    }
}
