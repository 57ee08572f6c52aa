//! Lower bounds for quasi-metric constants and triangle-inequality checks.
//!
//! Usage: `cargo run --release --example quasi_constants [n_samples]`

use std::f64::consts::PI;

use metriq::analysis::{metric_check, metric_check_sector, quasi_constant};
use metriq::metrics::{MetricId, MetricKind};
use metriq::{oracle, Domain};

fn main() -> metriq::Result<()> {
    let n = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(20_000);
    let disk = Domain::unit_ball(2)?;

    let w = quasi_constant(&disk, MetricId::closed(MetricKind::PointPair), n, 0)?;
    println!("p on the disk: ratio {:.9} at x = ({}), y = ({}), z = ({})", w.ratio, w.x, w.y, w.z);
    println!("  (sqrt(5)/2 = {:.9})", 5f64.sqrt() / 2.0);

    let w = quasi_constant(&oracle::rectangle(), MetricId::closed(MetricKind::W), n, 0)?;
    println!("w on the rectangle: ratio {:.9}", w.ratio);

    let r = metric_check(&disk, MetricId::closed(MetricKind::W), n, 0)?;
    println!("w on the disk: max ratio {:.12}, pass {}", r.details["max_ratio"], r.pass);

    for theta in [PI / 2.0, PI, 1.5 * PI] {
        let r = metric_check_sector(theta, n, 0)?;
        println!("p on sector {theta:.4}: max ratio {:.12}, pass {}", r.details["max_ratio"], r.pass);
    }
    Ok(())
}
