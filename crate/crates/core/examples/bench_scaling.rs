//! Time both algorithms over a small size grid and print CSV plus a summary.

use divrank::bench::{run_bench, write_csv, write_summary, BenchConfig};
use std::io;

fn main() -> io::Result<()> {
    let cfg = BenchConfig {
        m_list: vec![100, 1000, 10000],
        n_list: vec![10],
        reps: 10,
        ..BenchConfig::default()
    };
    let rows = run_bench(&cfg).expect("bench");
    write_csv(&rows, io::stdout().lock())?;
    println!();
    write_summary(&rows, io::stdout().lock())
}
