//! Walk the dual function from λ = 0 by jumping between adjacent kinks.

use divrank::datagen::{gen_synthetic, GenConfig};
use divrank::solver::{reduce_two_sided, Reduction};
use divrank::{eval_dual, kink_right, ActiveSet, TieTolerance};

fn main() {
    let inst = gen_synthetic(&GenConfig::new(12, 3, 7)).expect("generated");
    let problem = match reduce_two_sided(&inst) {
        Reduction::Upper(p) | Reduction::LowerAsUpper(p) => p,
        Reduction::AlreadyOptimal(_) => unreachable!("generated bounds always bind"),
    };
    let active = ActiveSet::full(problem.m());

    println!("{:>12} {:>12} {:>12} {:>12}", "lambda", "g", "g'-", "g'+");
    let mut lambda = 0.0;
    loop {
        let e = eval_dual(&problem, lambda, &active, TieTolerance::at_kink());
        let mark = if e.is_optimal() { "  <- optimal" } else { "" };
        println!("{:>12.6} {:>12.6} {:>12.6} {:>12.6}{mark}", e.lambda, e.g, e.g_minus, e.g_plus);
        let next = kink_right(&problem, &e, &active);
        if !next.is_finite() {
            break;
        }
        lambda = next;
    }
}
