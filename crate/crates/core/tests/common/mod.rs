//! Test-only reference computations that share no code with the crate's
//! evaluators.
#![allow(dead_code)]

use num_complex::Complex64;

pub type C = Complex64;

pub fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

/// A boundary piece as a map `[0, 1] -> C`.
pub type Piece = Box<dyn Fn(f64) -> C>;

pub fn segment(a: C, b: C) -> Piece {
    Box::new(move |t| a + (b - a) * t)
}

pub fn circle() -> Piece {
    Box::new(|t| C::from_polar(1.0, 2.0 * std::f64::consts::PI * t))
}

/// Minimum of `|x - z| + |z - y|` over the pieces: dense sampling, then
/// ternary search around the best sample of each piece.
pub fn dense_heron(pieces: &[Piece], x: C, y: C, samples: usize) -> f64 {
    let f = |z: C| (x - z).norm() + (z - y).norm();
    let mut best = f64::INFINITY;
    for p in pieces {
        let (mut bi, mut bv) = (0, f64::INFINITY);
        for i in 0..=samples {
            let v = f(p(i as f64 / samples as f64));
            if v < bv {
                bv = v;
                bi = i;
            }
        }
        let h = 1.0 / samples as f64;
        let (mut lo, mut hi) = ((bi as f64 - 1.0) * h, (bi as f64 + 1.0) * h);
        lo = lo.max(0.0);
        hi = hi.min(1.0);
        for _ in 0..200 {
            let m1 = lo + (hi - lo) / 3.0;
            let m2 = hi - (hi - lo) / 3.0;
            if f(p(m1)) <= f(p(m2)) {
                hi = m2;
            } else {
                lo = m1;
            }
        }
        best = best.min(bv).min(f(p(0.5 * (lo + hi))));
    }
    best
}

pub fn dense_s(pieces: &[Piece], x: C, y: C) -> f64 {
    if x == y {
        return 0.0;
    }
    (x - y).norm() / dense_heron(pieces, x, y, 20_000)
}

pub fn disk_pieces() -> Vec<Piece> {
    vec![circle()]
}

/// Sector boundary truncated far beyond the points.
pub fn sector_pieces(theta: f64, reach: f64) -> Vec<Piece> {
    let o = c(0.0, 0.0);
    vec![segment(o, c(reach, 0.0)), segment(o, C::from_polar(reach, theta))]
}

pub fn polygon_pieces(v: &[(f64, f64)]) -> Vec<Piece> {
    (0..v.len())
        .map(|i| {
            let (a, b) = (v[i], v[(i + 1) % v.len()]);
            segment(c(a.0, a.1), c(b.0, b.1))
        })
        .collect()
}

/// Distance from `z` to the segment `[a, b]`.
pub fn seg_dist(z: C, a: C, b: C) -> f64 {
    let t = (((z - a) * (b - a).conj()).re / (b - a).norm_sqr()).clamp(0.0, 1.0);
    (z - (a + (b - a) * t)).norm()
}
