//! Exact solver for ranking with a linear diversity constraint:
//!
//! ```text
//! max  c'Xw
//! s.t. X in S(m, n)            (each slot filled, each candidate used at most once)
//!      b1 <= a'Xw <= b2
//! ```
//!
//! The two-sided bound is reduced to a single active side, and the
//! resulting one-constraint LP is solved through its one-dimensional dual by
//! bisection with exact kink tracing. Candidates that provably stay outside
//! the top `n` over the current dual bracket are screened out as the bracket
//! shrinks. The primal optimum is recovered as a mixture of at most two
//! rankings.
//!
//! ```
//! use divrank::{solve, Instance, SolverOptions, SolveStatus};
//!
//! let inst = Instance::new(vec![3.0, 2.0, 0.0], vec![1.0, -1.0, 0.0], Some(vec![1.0]), 1, -0.5, 0.5).unwrap();
//! let sol = solve(&inst, &SolverOptions::default()).unwrap();
//! assert_eq!(sol.status, SolveStatus::UpperActive);
//! assert_eq!(sol.lambda_star, 0.5);
//! assert!((sol.mixture.objective - 2.75).abs() < 1e-12);
//! ```

pub mod bench;
pub mod cli;
pub mod datagen;
pub mod dual;
pub mod model;
pub mod oracle;
pub mod rank;
pub mod solver;
pub mod verify;

pub use dual::{eval_dual, kink_left, kink_right, ActiveSet, DualEvaluation, TieTolerance, UpperProblem};
pub use model::{default_weights, validate_instance, ExtremeAssignment, Instance, PrimalMixture, Solution, SolveStats, SolveStatus};
pub use solver::{solve, solve_detailed, SolveError, SolverOptions};
