//! Evaluates every metric on a few pairs in each kind of domain.

use metriq::metrics::{self, MetricId, MetricKind};
use metriq::{Domain, Point};

fn main() -> metriq::Result<()> {
    let cases = [
        ("halfspace:n=2", Point::xy(0.0, 1.0), Point::xy(0.0, 2.0)),
        ("ball:n=2", Point::xy(1.0 / 3.0, 0.0), Point::xy(-1.0 / 3.0, 0.0)),
        ("ball:n=2", Point::xy(0.3, 0.4), Point::xy(0.3, -0.4)),
        ("sector:theta=2.5", Point::xy(0.5, 0.4), Point::xy(-0.3, 1.2)),
        ("polygon:(-1,0);(1,0);(1,1);(-1,1)", Point::xy(0.5, 0.5), Point::xy(-0.5, 0.25)),
        ("punctured:(0,0);(1,0)", Point::xy(0.5, 0.5), Point::xy(2.0, -1.0)),
    ];
    for (lit, x, y) in cases {
        let d: Domain = lit.parse()?;
        println!("{d}  x = ({x})  y = ({y})");
        for kind in MetricKind::ALL {
            let id = MetricId::for_domain(kind, &d);
            match metrics::value_with_method(&d, id, &x, &y, metrics::DEFAULT_TOL) {
                Ok((v, method)) => println!("  {kind:>5} = {v:.12} ({method})"),
                Err(e) => println!("  {kind:>5}: {e}"),
            }
        }
    }
    Ok(())
}
