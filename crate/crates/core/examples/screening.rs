//! Compare the dual search with and without candidate screening.

use divrank::datagen::{gen_synthetic, GenConfig};
use divrank::{solve_detailed, SolverOptions};
use std::time::Instant;

fn main() {
    let inst = gen_synthetic(&GenConfig::new(5000, 10, 11)).expect("generated");
    for (name, opts) in [
        ("no screening", SolverOptions::without_screening()),
        ("screening", SolverOptions::default()),
    ] {
        let t = Instant::now();
        let report = solve_detailed(&inst, &opts).expect("solved");
        let elapsed = t.elapsed();
        let s = &report.solution;
        let remaining = report.dual.as_ref().map_or(inst.m, |d| d.state.active.len());
        println!(
            "{name:>13}: objective {:.9}, lambda* {:.9}, {} iterations, {} kinks traced, \
             {remaining}/{} candidates left, {:.3} ms",
            s.mixture.objective,
            s.lambda_star,
            s.stats.iterations,
            s.stats.kinks_traced,
            inst.m,
            elapsed.as_secs_f64() * 1e3
        );
    }
}
