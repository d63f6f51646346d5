//! Solve a small instance and print the optimal ranking mixture.

use divrank::{solve, Instance, SolverOptions};

fn main() {
    // four candidates, two slots, DCG weights
    let inst = Instance::new(
        vec![3.0, 2.5, 1.0, 0.2],
        vec![1.0, 0.8, -1.0, -0.5],
        None,
        2,
        -0.5,
        0.6,
    )
    .expect("valid instance");

    let sol = solve(&inst, &SolverOptions::default()).expect("feasible");
    println!("status      {}", sol.status);
    println!("lambda*     {:.6}", sol.lambda_star);
    println!("objective   {:.6}", sol.mixture.objective);
    println!("diversity   {:.6} (bounds [{}, {}])", sol.mixture.diversity, inst.b1, inst.b2);
    println!("rho         {:.6}", sol.mixture.rho);
    println!("ranking 1   {:?}", sol.mixture.x1.slots);
    println!("ranking 2   {:?}", sol.mixture.x2.slots);
    for (i, row) in sol.mixture.to_dense(inst.m).iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:.3}")).collect();
        println!("  candidate {i}: [{}]", cells.join(", "));
    }
}
