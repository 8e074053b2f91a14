//! Runs every verification suite at a small size and prints a one-line summary each.

use resource_measures::verify::{run_suite, SuiteConfig};
use resource_measures::OracleConfig;

fn main() -> resource_measures::Result<()> {
    let oracle = OracleConfig { restarts: 2, ..OracleConfig::default() };
    for (name, dims) in [
        ("theorem1", vec![2, 3]),
        ("axioms", vec![2, 3, 4]),
        ("theorem2", vec![3, 4, 5, 6]),
        ("piani", vec![2, 3, 4]),
        ("continuity", vec![2, 3, 4]),
        ("adjoint", vec![2, 3, 4]),
        ("decomposition", vec![2, 3, 4]),
    ] {
        let config = SuiteConfig::new(5, 1).dims(&dims).oracle(oracle.clone());
        let report = run_suite(name, &config)?;
        let summary: Vec<String> = report.summary.iter().map(|(k, v)| format!("{k}={v:.3e}")).collect();
        println!(
            "{name:<14} checks {:>5}  failures {}  worst margin {:+.2e}  {:.2}s  {}",
            report.records.len(),
            report.failures,
            report.worst_violation,
            report.wall_time.as_secs_f64(),
            summary.join(" ")
        );
    }
    Ok(())
}
