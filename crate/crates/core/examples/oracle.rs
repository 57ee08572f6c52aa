//! Brute-force boundary minimisation for `s` next to the closed forms.

use metriq::metrics;
use metriq::oracle::{self, OracleOptions};
use metriq::{Domain, Point};

fn main() -> metriq::Result<()> {
    let cases = [
        (Domain::half_space(2)?, Point::xy(0.0, 1.0), Point::xy(0.0, 2.0)),
        (Domain::unit_ball(2)?, Point::xy(0.3, 0.4), Point::xy(0.3, -0.4)),
        (Domain::unit_ball(2)?, Point::xy(0.5, 0.1), Point::xy(-0.2, 0.6)),
        (Domain::sector(4.5)?, Point::xy(1.0, 0.3), Point::xy(-0.8, -0.9)),
        (oracle::rectangle(), Point::xy(0.6, 0.3), Point::xy(-0.4, 0.8)),
    ];
    for (d, x, y) in cases {
        let r = oracle::s_oracle_with(&d, &x, &y, OracleOptions::default())?;
        let closed = metrics::tri_ratio_closed(&d, &x, &y)?;
        println!("{d}: oracle s = {:.12} via z = ({}), closed form {:?}", r.value, r.argmin, closed);
    }
    Ok(())
}
