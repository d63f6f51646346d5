//! Generate a synthetic instance and a few noised replications of it.

use divrank::datagen::{gen_synthetic_counted, noise_replicate, split_seed, GenConfig};
use divrank::{solve, SolverOptions};

fn main() {
    let generated = gen_synthetic_counted(&GenConfig::new(500, 10, 2024).with_alpha(0.5)).expect("generated");
    let base = generated.instance;
    println!(
        "base: m = {}, n = {}, bounds [{:.4}, {:.4}], {} rejected draws",
        base.m, base.n, base.b1, base.b2, generated.regenerations
    );

    for r in 0..5 {
        let noised = noise_replicate(&base, 0.2, split_seed(2024, r)).expect("noised");
        let sol = solve(&noised, &SolverOptions::default()).expect("solved");
        println!(
            "replication {r}: status {}, objective {:.6}, lambda* {:.6}",
            sol.status, sol.mixture.objective, sol.lambda_star
        );
    }

    let small = gen_synthetic_counted(&GenConfig::new(4, 2, 1)).expect("generated").instance;
    println!("\n{}", small.to_json());
}
