//! Seeded sweeps of the comparison inequalities between the metrics.
//!
//! Usage: `cargo run --release --example inequality_sweep [n_samples]`

use metriq::analysis::{inequality_sweep_with, Inequality, SweepOptions};
use metriq::Domain;

fn main() -> metriq::Result<()> {
    let n = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(10_000);
    let opts = SweepOptions { n_samples: n, seed: 0, tol: 1e-7, oracle_tol: 1e-8 };
    let cases = [
        ("ball:n=2", Inequality::C48),
        ("ball:n=2", Inequality::C49),
        ("ball:n=2", Inequality::T510),
        ("ball:n=2", Inequality::T511),
        ("halfspace:n=2", Inequality::C49),
        ("sector:theta=4.71238898", Inequality::L23b),
        ("sector:theta=2", Inequality::L43),
        ("punctured:(0,0);(1,0)", Inequality::L23a),
        ("polygon:(-1,0);(1,0);(1,1);(-1,1)", Inequality::T46),
    ];
    for (lit, sel) in cases {
        let d: Domain = lit.parse()?;
        let r = inequality_sweep_with(&d, sel, &opts)?;
        let verdict = if r.pass { "pass" } else { "FAIL" };
        println!("{sel:>4} on {d}: {verdict}, worst margin {:.3e}", r.worst_margin);
    }
    Ok(())
}
