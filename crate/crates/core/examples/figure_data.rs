//! Writes the s/w quotient over a grid of y for fixed x = 0.6 as CSV.
//!
//! Usage: `cargo run --release --example figure_data [resolution] > grid.csv`

use std::io::{self, BufWriter};

use metriq::analysis::figure1_grid;
use metriq::report::write_figure_csv;

fn main() -> metriq::Result<()> {
    let res = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(100);
    let rows = figure1_grid(0.6, res)?;
    let max = rows.iter().filter_map(|r| r.quotient).fold(f64::NEG_INFINITY, f64::max);
    eprintln!("{} cells, max quotient {max:.9}", rows.len());
    write_figure_csv(&mut BufWriter::new(io::stdout().lock()), &rows)
}
