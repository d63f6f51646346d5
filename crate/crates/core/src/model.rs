//! Problem data, validation and the JSON file formats.
//!
//! An [`Instance`] describes one re-ranking request: `m` candidates with
//! utility scores `c` and diversity features `a`, `n` slots with strictly
//! decreasing weights `w`, and a two-sided bound `b1 <= a'Xw <= b2` on the
//! weighted diversity of the ranking.

use serde::{Deserialize, Serialize};
use std::fmt;

/// A vertex of the assignment polytope: slot `j` holds candidate `slots[j]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremeAssignment {
    pub slots: Vec<usize>,
}

impl ExtremeAssignment {
    pub fn new(slots: Vec<usize>) -> Self {
        Self { slots }
    }

    /// `sum_j w_j * v[slots[j]]`, i.e. `v'Xw` for the 0/1 matrix of this assignment.
    pub fn weighted_sum(&self, v: &[f64], w: &[f64]) -> f64 {
        self.slots.iter().zip(w).map(|(&i, &wj)| wj * v[i]).sum()
    }

    /// True when entries are distinct and all lie in `[0, m)`.
    pub fn is_valid_for(&self, m: usize) -> bool {
        let mut seen = vec![false; m];
        for &i in &self.slots {
            if i >= m || seen[i] {
                return false;
            }
            seen[i] = true;
        }
        true
    }
}

/// The (possibly fractional) optimum `rho * X1 + (1 - rho) * X2`.
#[derive(Debug, Clone, PartialEq)]
pub struct PrimalMixture {
    pub x1: ExtremeAssignment,
    pub x2: ExtremeAssignment,
    pub rho: f64,
    pub objective: f64,
    pub diversity: f64,
}

impl PrimalMixture {
    /// Builds the mixture and evaluates objective and diversity against `instance`.
    pub fn new(instance: &Instance, x1: ExtremeAssignment, x2: ExtremeAssignment, rho: f64) -> Self {
        let rho = rho.clamp(0.0, 1.0);
        let objective = rho * x1.weighted_sum(&instance.c, &instance.w)
            + (1.0 - rho) * x2.weighted_sum(&instance.c, &instance.w);
        let diversity = rho * x1.weighted_sum(&instance.a, &instance.w)
            + (1.0 - rho) * x2.weighted_sum(&instance.a, &instance.w);
        Self {
            x1,
            x2,
            rho,
            objective,
            diversity,
        }
    }

    /// A pure vertex (`rho = 1`, both sides equal).
    pub fn vertex(instance: &Instance, x: ExtremeAssignment) -> Self {
        Self::new(instance, x.clone(), x, 1.0)
    }

    /// Dense `m x n` matrix of the mixture, row-major by candidate.
    pub fn to_dense(&self, m: usize) -> Vec<Vec<f64>> {
        let n = self.x1.slots.len();
        let mut x = vec![vec![0.0; n]; m];
        for (j, &i) in self.x1.slots.iter().enumerate() {
            x[i][j] += self.rho;
        }
        for (j, &i) in self.x2.slots.iter().enumerate() {
            x[i][j] += 1.0 - self.rho;
        }
        x
    }

    /// Candidates carrying positive mass in the mixture.
    pub fn support(&self) -> Vec<usize> {
        let mut out = Vec::new();
        if self.rho > 0.0 {
            out.extend_from_slice(&self.x1.slots);
        }
        if self.rho < 1.0 {
            out.extend_from_slice(&self.x2.slots);
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SolveStatus {
    UnconstrainedOptimal,
    UpperActive,
    LowerActive,
    Infeasible,
}

impl fmt::Display for SolveStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SolveStatus::UnconstrainedOptimal => "UnconstrainedOptimal",
            SolveStatus::UpperActive => "UpperActive",
            SolveStatus::LowerActive => "LowerActive",
            SolveStatus::Infeasible => "Infeasible",
        };
        f.write_str(s)
    }
}

/// Counters collected during a solve.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SolveStats {
    pub iterations: usize,
    pub screens: usize,
    pub dropped: usize,
    pub kinks_traced: usize,
    pub wall_time_us: f64,
    /// False when the dual search ended on a bracket instead of an exact kink.
    pub exact: bool,
    /// Upper bound on the duality gap; zero for exact solves.
    pub gap: f64,
    pub lambda_min: f64,
    pub lambda_max: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub mixture: PrimalMixture,
    /// Dual optimum of the reduced one-sided problem (`a -> -a` for `LowerActive`).
    pub lambda_star: f64,
    pub status: SolveStatus,
    pub stats: SolveStats,
}

/// Validated problem data. Immutable once constructed.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub m: usize,
    pub n: usize,
    pub c: Vec<f64>,
    pub a: Vec<f64>,
    pub w: Vec<f64>,
    pub b1: f64,
    pub b2: f64,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ValidationError {
    #[error("slot weights are not strictly decreasing at position {index}")]
    NonDecreasingWeights { index: usize },
    #[error("slot weight {index} is not strictly positive")]
    NonPositiveWeight { index: usize },
    #[error("bounds reversed: b1 = {b1} > b2 = {b2}")]
    BoundsReversed { b1: f64, b2: f64 },
    #[error("{field} has length {actual}, expected {expected}")]
    DimensionMismatch {
        field: &'static str,
        expected: usize,
        actual: usize,
    },
    #[error("{field} contains a non-finite value")]
    NonFinite { field: &'static str },
    #[error("n = {n} exceeds m = {m}")]
    NTooLarge { n: usize, m: usize },
    #[error("n must be at least 1")]
    NoSlots,
}

/// Every violated invariant of a candidate instance.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("invalid instance: {}", display_list(.0))]
pub struct ValidationErrors(pub Vec<ValidationError>);

fn display_list(errs: &[ValidationError]) -> String {
    errs.iter().map(|e| e.to_string()).collect::<Vec<_>>().join("; ")
}

impl ValidationErrors {
    pub fn contains(&self, pred: impl Fn(&ValidationError) -> bool) -> bool {
        self.0.iter().any(pred)
    }
}

/// DCG slot discount `w_j = 1 / log2(1 + j)` for `j = 1..=n`.
pub fn default_weights(n: usize) -> Vec<f64> {
    (1..=n).map(|j| 1.0 / ((1 + j) as f64).log2()).collect()
}

/// Checks every instance invariant and returns the instance only if all hold.
pub fn validate_instance(raw: Instance) -> Result<Instance, ValidationErrors> {
    let mut errs = Vec::new();
    if raw.n == 0 {
        errs.push(ValidationError::NoSlots);
    }
    if raw.n > raw.m {
        errs.push(ValidationError::NTooLarge { n: raw.n, m: raw.m });
    }
    for (field, v, expected) in [("c", &raw.c, raw.m), ("a", &raw.a, raw.m), ("w", &raw.w, raw.n)] {
        if v.len() != expected {
            errs.push(ValidationError::DimensionMismatch {
                field,
                expected,
                actual: v.len(),
            });
        }
        if v.iter().any(|x| !x.is_finite()) {
            errs.push(ValidationError::NonFinite { field });
        }
    }
    if !raw.b1.is_finite() {
        errs.push(ValidationError::NonFinite { field: "b1" });
    }
    if !raw.b2.is_finite() {
        errs.push(ValidationError::NonFinite { field: "b2" });
    }
    if raw.b1 > raw.b2 {
        errs.push(ValidationError::BoundsReversed { b1: raw.b1, b2: raw.b2 });
    }
    for (j, &wj) in raw.w.iter().enumerate() {
        if !(wj > 0.0) {
            errs.push(ValidationError::NonPositiveWeight { index: j });
        }
    }
    if let Some(j) = raw.w.windows(2).position(|p| !(p[0] > p[1])) {
        errs.push(ValidationError::NonDecreasingWeights { index: j + 1 });
    }
    if errs.is_empty() {
        Ok(raw)
    } else {
        Err(ValidationErrors(errs))
    }
}

impl Instance {
    /// Validating constructor. `w = None` selects [`default_weights`].
    pub fn new(
        c: Vec<f64>,
        a: Vec<f64>,
        w: Option<Vec<f64>>,
        n: usize,
        b1: f64,
        b2: f64,
    ) -> Result<Self, ValidationErrors> {
        let m = c.len();
        let w = w.unwrap_or_else(|| default_weights(n));
        validate_instance(Instance { m, n, c, a, w, b1, b2 })
    }

    pub fn objective_of(&self, x: &ExtremeAssignment) -> f64 {
        x.weighted_sum(&self.c, &self.w)
    }

    pub fn diversity_of(&self, x: &ExtremeAssignment) -> f64 {
        x.weighted_sum(&self.a, &self.w)
    }

    pub fn from_json(text: &str) -> Result<Self, InstanceFileError> {
        let file: InstanceFile = serde_json::from_str(text)?;
        Ok(file.into_instance()?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&InstanceFile::from(self)).expect("instance serializes")
    }
}

/// On-disk instance: `{"m","n","c","a","w"|null,"b1","b2"}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub m: usize,
    pub n: usize,
    pub c: Vec<f64>,
    pub a: Vec<f64>,
    pub w: Option<Vec<f64>>,
    pub b1: f64,
    pub b2: f64,
}

impl InstanceFile {
    pub fn into_instance(self) -> Result<Instance, ValidationErrors> {
        let w = self.w.unwrap_or_else(|| default_weights(self.n));
        validate_instance(Instance {
            m: self.m,
            n: self.n,
            c: self.c,
            a: self.a,
            w,
            b1: self.b1,
            b2: self.b2,
        })
    }
}

impl From<&Instance> for InstanceFile {
    fn from(inst: &Instance) -> Self {
        Self {
            m: inst.m,
            n: inst.n,
            c: inst.c.clone(),
            a: inst.a.clone(),
            w: Some(inst.w.clone()),
            b1: inst.b1,
            b2: inst.b2,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum InstanceFileError {
    #[error("malformed instance JSON: {0}")]
    Parse(#[from] serde_json::Error),
    #[error(transparent)]
    Invalid(#[from] ValidationErrors),
}

/// On-disk solution record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionFile {
    pub status: SolveStatus,
    pub lambda_star: f64,
    pub objective: f64,
    pub diversity: f64,
    pub rho: f64,
    pub slots1: Vec<usize>,
    pub slots2: Vec<usize>,
    pub stats: SolveStats,
}

impl From<&Solution> for SolutionFile {
    fn from(s: &Solution) -> Self {
        Self {
            status: s.status,
            lambda_star: s.lambda_star,
            objective: s.mixture.objective,
            diversity: s.mixture.diversity,
            rho: s.mixture.rho,
            slots1: s.mixture.x1.slots.clone(),
            slots2: s.mixture.x2.slots.clone(),
            stats: s.stats.clone(),
        }
    }
}

impl Solution {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&SolutionFile::from(self)).expect("solution serializes")
    }
}
