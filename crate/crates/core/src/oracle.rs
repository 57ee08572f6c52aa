//! Brute-force evaluators used as a fallback and as ground truth: the
//! boundary infimum behind `s`, triangle ratios of arbitrary metrics and
//! the two worked counterexamples (rectangle and disk complement).

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{invalid, Result};
use crate::geometry::{edges, plane_reduce_c, Domain, Point, Shape};
use crate::metrics;
use crate::optimize::golden_section_min;

/// Samples per boundary piece before refinement.
pub const DEFAULT_GRID: usize = 4096;

/// One smooth part of a planar boundary.
#[derive(Clone, Debug, PartialEq)]
pub enum BoundaryPiece {
    /// Full circle `center + radius·e^{iφ}`, `φ ∈ [0, 2π)`, periodic.
    Circle { center: Complex64, radius: f64 },
    /// Segment from `a` to `b`. `truncated` marks a ray cut off at `b`.
    Segment { a: Complex64, b: Complex64, truncated: bool },
    /// An isolated boundary point.
    Point(Complex64),
}

/// Boundary of a planar domain as a list of pieces, unbounded parts cut at
/// radius `r_cut`.
#[derive(Clone, Debug)]
pub struct BoundaryParam {
    pub domain: Domain,
    pub pieces: Vec<BoundaryPiece>,
    pub r_cut: f64,
}

impl BoundaryParam {
    pub fn new(domain: &Domain, r_cut: f64) -> Result<Self> {
        if domain.dim() != 2 {
            return Err(invalid("boundary parameterizations exist for planar domains only"));
        }
        if r_cut.is_nan() || r_cut <= 0.0 {
            return Err(invalid("the truncation radius must be positive"));
        }
        let o = Complex64::new(0.0, 0.0);
        let pieces = match domain.shape() {
            Shape::HalfSpace { .. } => vec![BoundaryPiece::Segment {
                a: Complex64::new(-r_cut, 0.0),
                b: Complex64::new(r_cut, 0.0),
                truncated: true,
            }],
            Shape::UnitBall { .. } => vec![BoundaryPiece::Circle { center: o, radius: 1.0 }],
            Shape::Sector { theta } => vec![
                BoundaryPiece::Segment { a: o, b: Complex64::new(r_cut, 0.0), truncated: true },
                BoundaryPiece::Segment { a: o, b: Complex64::from_polar(r_cut, *theta), truncated: true },
            ],
            Shape::Polygon { vertices } => edges(vertices)
                .map(|(a, b)| BoundaryPiece::Segment { a, b, truncated: false })
                .collect(),
            Shape::Punctured { punctures } => punctures.iter().map(|&s| BoundaryPiece::Point(s)).collect(),
        };
        Ok(Self { domain: domain.clone(), pieces, r_cut })
    }
}

/// Tuning knobs for [`s_oracle_with`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleOptions {
    pub tol: f64,
    pub grid: usize,
}

impl Default for OracleOptions {
    fn default() -> Self {
        Self { tol: metrics::DEFAULT_TOL, grid: DEFAULT_GRID }
    }
}

/// Full oracle output.
#[derive(Clone, Debug, PartialEq)]
pub struct OracleResult {
    /// `s_G(x, y)`
    pub value: f64,
    /// `inf_{z ∈ ∂G} |x-z| + |z-y|`
    pub denominator: f64,
    /// Minimising boundary point, in the planar coordinates the search ran in.
    pub argmin: Point,
}

/// `s_G(x, y)` by direct minimisation of `|x-z| + |z-y|` over the boundary.
pub fn s_oracle(d: &Domain, x: &Point, y: &Point, tol: f64) -> Result<f64> {
    Ok(s_oracle_with(d, x, y, OracleOptions { tol, grid: DEFAULT_GRID })?.value)
}

pub fn s_oracle_with(d: &Domain, x: &Point, y: &Point, opts: OracleOptions) -> Result<OracleResult> {
    if opts.tol.is_nan() || opts.tol <= 0.0 {
        return Err(invalid(format!("tolerance must be positive, got {}", opts.tol)));
    }
    if opts.grid < 3 {
        return Err(invalid("the oracle grid needs at least 3 samples"));
    }
    d.require_interior(x)?;
    d.require_interior(y)?;
    let (zx, zy, planar) = planarize(d, x, y)?;
    let e = (zx - zy).norm();
    let r_cut = 16.0 * (zx.norm() + zy.norm() + 1.0);
    let param = BoundaryParam::new(&planar, r_cut)?;
    let f = |z: Complex64| (zx - z).norm() + (z - zy).norm();
    let width = opts.tol * 1e-3;

    let (mut best, mut arg) = (f64::INFINITY, Complex64::new(0.0, 0.0));
    for piece in &param.pieces {
        let (v, z) = minimize_piece(piece, &f, opts.grid, width);
        if v < best {
            best = v;
            arg = z;
        }
    }
    debug_assert!(
        param.pieces.iter().all(|p| match p {
            BoundaryPiece::Segment { b, truncated: true, .. } => f(*b) > best,
            _ => true,
        }),
        "boundary truncation cut off a candidate minimiser"
    );
    let value = if e == 0.0 { 0.0 } else { e / best };
    Ok(OracleResult { value, denominator: best, argmin: Point::from(arg) })
}

/// Planar configuration carrying the same `s` value as `(x, y)` in `d`.
fn planarize(d: &Domain, x: &Point, y: &Point) -> Result<(Complex64, Complex64, Domain)> {
    match d.shape() {
        Shape::HalfSpace { dim } if *dim > 2 => {
            let n = *dim;
            let tangential = x.coords()[..n - 1]
                .iter()
                .zip(&y.coords()[..n - 1])
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt();
            Ok((
                Complex64::new(0.0, x.last()),
                Complex64::new(tangential, y.last()),
                Domain::half_space(2)?,
            ))
        }
        Shape::UnitBall { dim } if *dim > 2 => {
            let (a, b) = plane_reduce_c(x, y);
            Ok((a, b, Domain::unit_ball(2)?))
        }
        _ => Ok((x.to_complex(), y.to_complex(), d.clone())),
    }
}

fn unit_circle_table() -> &'static [Complex64] {
    static TABLE: OnceLock<Vec<Complex64>> = OnceLock::new();
    TABLE.get_or_init(|| circle_samples(DEFAULT_GRID))
}

fn circle_samples(n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|i| Complex64::from_polar(1.0, 2.0 * PI * i as f64 / n as f64))
        .collect()
}

/// Indices `i` with `v[i]` no larger than its neighbours (first of a plateau).
fn local_minima(v: &[f64], periodic: bool) -> Vec<usize> {
    let n = v.len();
    (0..n)
        .filter(|&i| {
            let prev = if i > 0 {
                Some(v[i - 1])
            } else if periodic {
                Some(v[n - 1])
            } else {
                None
            };
            let next = if i + 1 < n {
                Some(v[i + 1])
            } else if periodic {
                Some(v[0])
            } else {
                None
            };
            prev.is_none_or(|p| v[i] < p) && next.is_none_or(|q| v[i] <= q)
        })
        .collect()
}

fn minimize_piece(
    piece: &BoundaryPiece,
    f: &impl Fn(Complex64) -> f64,
    grid: usize,
    width: f64,
) -> (f64, Complex64) {
    match *piece {
        BoundaryPiece::Point(s) => (f(s), s),
        BoundaryPiece::Segment { a, b, .. } => {
            let len = (b - a).norm();
            if len == 0.0 {
                return (f(a), a);
            }
            let dir = (b - a) / len;
            let at = |t: f64| a + dir * t;
            let step = len / (grid - 1) as f64;
            let vals: Vec<f64> = (0..grid).map(|i| f(at(i as f64 * step))).collect();
            let mut best = (f64::INFINITY, a);
            for i in local_minima(&vals, false) {
                let lo = (i as f64 - 1.0).max(0.0) * step;
                let hi = ((i + 1) as f64 * step).min(len);
                let (t, v) = golden_section_min(|t| f(at(t)), lo, hi, width);
                let v = v.min(vals[i]);
                if v < best.0 {
                    best = (v, if v == vals[i] { at(i as f64 * step) } else { at(t) });
                }
            }
            best
        }
        BoundaryPiece::Circle { center, radius } => {
            let owned;
            let table: &[Complex64] = if grid == DEFAULT_GRID {
                unit_circle_table()
            } else {
                owned = circle_samples(grid);
                &owned
            };
            let at = |phi: f64| center + Complex64::from_polar(radius, phi);
            let vals: Vec<f64> = table.iter().map(|&u| f(center + u * radius)).collect();
            let step = 2.0 * PI / grid as f64;
            let mut best = (f64::INFINITY, center);
            for i in local_minima(&vals, true) {
                let phi = i as f64 * step;
                let (t, v) = golden_section_min(|t| f(at(t)), phi - step, phi + step, width / radius);
                let v = v.min(vals[i]);
                if v < best.0 {
                    best = (v, if v == vals[i] { center + table[i] * radius } else { at(t) });
                }
            }
            best
        }
    }
}

/// `d(x, y) / (d(x, z) + d(z, y))` for any distance function. A zero
/// denominator with `x ≠ y` is reported as `+∞`.
pub fn triangle_ratio<F>(dist: F, x: &Point, y: &Point, z: &Point) -> Result<f64>
where
    F: Fn(&Point, &Point) -> Result<f64>,
{
    let num = dist(x, y)?;
    let den = dist(x, z)? + dist(z, y)?;
    if den == 0.0 {
        return Ok(if num == 0.0 { 0.0 } else { f64::INFINITY });
    }
    Ok(num / den)
}

/// The rectangle `(-1, 1) × (0, 1)` where `w` fails the triangle
/// inequality.
pub fn rectangle() -> Domain {
    Domain::convex_polygon(&[(-1.0, 0.0), (1.0, 0.0), (1.0, 1.0), (-1.0, 1.0)])
        .expect("the rectangle is a valid convex polygon")
}

/// `w(x, y) / (w(x, z) + w(z, y))` in [`rectangle`] at
/// `x = 1/2 + k + i/2`, `y = -1/2 + i/2`, `z = -1/2 - k + i/2`, computed
/// through the metric layer. Below `k ≈ 1e-9` the nearest-point tie
/// tolerance merges `z` into the tie locus and the value drops to 1.
pub fn rect_quotient(k: f64) -> Result<f64> {
    check_k(k)?;
    let g = rectangle();
    let x = Point::xy(0.5 + k, 0.5);
    let y = Point::xy(-0.5, 0.5);
    let z = Point::xy(-0.5 - k, 0.5);
    triangle_ratio(|a, b| metrics::w_metric(&g, a, b), &x, &y, &z)
}

/// Closed expression `2(1-k²) / (sqrt(1+(1+k)²)·(1+3k-2k²))` for
/// [`rect_quotient`].
pub fn rect_quotient_closed(k: f64) -> Result<f64> {
    check_k(k)?;
    Ok(2.0 * (1.0 - k * k) / ((1.0 + (1.0 + k) * (1.0 + k)).sqrt() * (1.0 + 3.0 * k - 2.0 * k * k)))
}

fn check_k(k: f64) -> Result<()> {
    if !(k > 0.0 && k < 1.0 / 3.0) {
        return Err(invalid(format!("k must lie in (0, 1/3), got {k}")));
    }
    Ok(())
}

/// `(s, p)` in the unit disk for the pair `cos(μ/2)·e^{±iμ/2}` (and
/// `±i/2` at `μ = π`), a family on which `s < p`.
pub fn complement_witness(mu: f64) -> Result<(f64, f64)> {
    if !(mu > 0.0 && mu <= PI) {
        return Err(invalid(format!("mu must lie in (0, π], got {mu}")));
    }
    let (x, y) = if mu == PI {
        (Point::xy(0.0, 0.5), Point::xy(0.0, -0.5))
    } else {
        let c = (mu / 2.0).cos();
        (
            Point::from(Complex64::from_polar(c, mu / 2.0)),
            Point::from(Complex64::from_polar(c, -mu / 2.0)),
        )
    };
    let g = Domain::unit_ball(2)?;
    let s = metrics::tri_ratio_closed(&g, &x, &y)?
        .expect("diameter-symmetric pairs have a closed form");
    Ok((s, metrics::point_pair(&g, &x, &y)?))
}
