//! The supremum of s/w on the unit disk: the right-angle special case, a
//! free search and searches over restricted pair families.
//!
//! Usage: `cargo run --release --example sw_extremum [n_samples]`

use metriq::analysis::{
    c_special_closed, conjecture_sw_search, h0_closed, quotient_search, special_case_extremum, PairRestriction,
    Quotient, QuotientSearch,
};
use metriq::Domain;

fn main() -> metriq::Result<()> {
    let n = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(20_000);

    let r = special_case_extremum()?;
    println!("s/w at (h, ih): max {:.9} at h = {:.9}", r.estimate, r.details["argmax_h"]);
    println!("  closed values: h0 = {:.9}, c = {:.9}", h0_closed(), c_special_closed());
    println!("  value at h = 1/sqrt(2): {:.9}", r.details["branch_value"]);

    let r = conjecture_sw_search(n, 0)?;
    println!("free s/w search ({n} samples): {:.9} at {:?} (exploratory)", r.estimate, r.witness);

    let disk = Domain::unit_ball(2)?;
    for (q, restriction) in [
        (Quotient::SOverW, PairRestriction::CollinearWithOrigin),
        (Quotient::POverW, PairRestriction::SameRay),
        (Quotient::POverW, PairRestriction::Free),
        (Quotient::WOverJStar, PairRestriction::Free),
    ] {
        let mut opts = QuotientSearch::new(q, n / 10, 0);
        opts.restriction = restriction;
        let r = quotient_search(&disk, &opts)?;
        println!("{} over {restriction:?} pairs: {:.12}", q.name(), r.estimate);
    }
    Ok(())
}
