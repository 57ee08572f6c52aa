//! Explicit configurations behind the sharpness and counterexample results.

use std::f64::consts::{PI, SQRT_2};

use metriq::analysis::{jw_limit_closed, jw_limit_curve};
use metriq::oracle::{complement_witness, rect_quotient, rect_quotient_closed};

fn main() -> metriq::Result<()> {
    println!("w on the rectangle, w(x,y) / (w(x,z) + w(z,y)):");
    for k in [0.25, 0.1, 0.01, 1e-3, 1e-5] {
        println!("  k = {k:<7} {:.12}  closed {:.12}", rect_quotient(k)?, rect_quotient_closed(k)?);
    }
    println!("  limit sqrt(2) = {SQRT_2:.12}");

    println!("s < p on the disk at cos(mu/2) e^(±i mu/2):");
    for mu in [PI, PI / 2.0, 0.1, 1e-3] {
        let (s, p) = complement_witness(mu)?;
        println!("  mu = {mu:.6}: s = {s:.12}, p = {p:.12}");
    }

    println!("w/j* at x = 1 - k, y = (1 - k) e^(2ik):");
    for k in [0.5, 0.1, 1e-2, 1e-4] {
        println!("  k = {k:<6} {:.12}  closed {:.12}", jw_limit_curve(k)?, jw_limit_closed(k)?);
    }
    Ok(())
}
