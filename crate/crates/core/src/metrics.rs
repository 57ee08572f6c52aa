//! Evaluators for the intrinsic metrics and quasi-metrics.
//!
//! All functions take the domain and two interior points and return a
//! value in `[0, 1]` (or `[0, ∞)` for the hyperbolic distance). Equal
//! points always give `0`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::error::{invalid, unsupported, Error, Result};
use crate::geometry::{
    cross, edges, plane_reduce_c, sector_power_c, Domain, DomainKind, Point, Shape,
};
use crate::oracle;

/// Default oracle tolerance.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Relative threshold on `|sin ∠XOY|` below which a ball pair counts as
/// collinear with the origin.
const COLLINEAR_TOL: f64 = 1e-10;
/// `||x| - |y||` below which a ball pair counts as symmetric about a
/// diameter.
const EQUAL_NORM_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MetricKind {
    /// `j*_G`
    JStar,
    /// Point pair function `p_G`.
    PointPair,
    /// Triangular ratio metric `s_G`.
    TriRatio,
    /// The tilde-point quasi-metric `w_G` (convex domains only).
    W,
    /// Inversion based lower bound for `s` in the punctured disk.
    Low,
    /// Hyperbolic distance.
    Rho,
    /// `th(ρ/2)`
    ThHalfRho,
    /// `th(ρ/4)`
    ThQuarterRho,
}

impl MetricKind {
    pub const ALL: [MetricKind; 8] = [
        MetricKind::JStar,
        MetricKind::PointPair,
        MetricKind::TriRatio,
        MetricKind::W,
        MetricKind::Low,
        MetricKind::Rho,
        MetricKind::ThHalfRho,
        MetricKind::ThQuarterRho,
    ];

    /// Short name as used on the command line.
    pub fn name(self) -> &'static str {
        match self {
            MetricKind::JStar => "jstar",
            MetricKind::PointPair => "pp",
            MetricKind::TriRatio => "s",
            MetricKind::W => "w",
            MetricKind::Low => "low",
            MetricKind::Rho => "rho",
            MetricKind::ThHalfRho => "th2",
            MetricKind::ThQuarterRho => "th4",
        }
    }
}

impl fmt::Display for MetricKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MetricKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "jstar" | "j*" => MetricKind::JStar,
            "pp" | "p" => MetricKind::PointPair,
            "s" | "sratio" => MetricKind::TriRatio,
            "w" => MetricKind::W,
            "low" => MetricKind::Low,
            "rho" => MetricKind::Rho,
            "th2" | "th_half_rho" => MetricKind::ThHalfRho,
            "th4" | "th_quarter_rho" => MetricKind::ThQuarterRho,
            other => return Err(Error::Parse(format!("unknown metric `{other}`"))),
        })
    }
}

impl Serialize for MetricKind {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// How a value is computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Strategy {
    ClosedForm,
    /// Brute-force boundary minimisation (only meaningful for `s`).
    Oracle,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::ClosedForm => "closed",
            Strategy::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "closed" | "closed_form" => Ok(Strategy::ClosedForm),
            "oracle" => Ok(Strategy::Oracle),
            other => Err(Error::Parse(format!("unknown strategy `{other}`"))),
        }
    }
}

impl Serialize for Strategy {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// A metric together with the preferred evaluation strategy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MetricId {
    pub kind: MetricKind,
    pub strategy: Strategy,
}

impl MetricId {
    pub fn closed(kind: MetricKind) -> Self {
        Self { kind, strategy: Strategy::ClosedForm }
    }

    pub fn oracle(kind: MetricKind) -> Self {
        Self { kind, strategy: Strategy::Oracle }
    }

    /// The natural strategy for `kind` on `domain`: `s` on the ball has no
    /// closed form for general pairs and is tagged `Oracle`; everything
    /// else is closed-form.
    pub fn for_domain(kind: MetricKind, domain: &Domain) -> Self {
        if kind == MetricKind::TriRatio && domain.kind() == DomainKind::UnitBall {
            Self::oracle(kind)
        } else {
            Self::closed(kind)
        }
    }
}

impl fmt::Display for MetricId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)
    }
}

/// One evaluated value with its provenance.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EvalRecord {
    #[serde(serialize_with = "crate::report::ser_display")]
    pub domain: Domain,
    pub metric: MetricKind,
    pub x: Point,
    pub y: Point,
    pub value: f64,
    /// Strategy actually used.
    pub method: Strategy,
}

fn require_pair(d: &Domain, x: &Point, y: &Point) -> Result<()> {
    d.require_interior(x)?;
    d.require_interior(y)
}

/// `|x-y| / (|x-y| + 2 min(d_G(x), d_G(y)))`
pub fn jstar(d: &Domain, x: &Point, y: &Point) -> Result<f64> {
    require_pair(d, x, y)?;
    if x == y {
        return Ok(0.0);
    }
    let e = x.dist(y);
    let m = d.boundary_distance_unchecked(x).min(d.boundary_distance_unchecked(y));
    Ok(e / (e + 2.0 * m))
}

/// `|x-y| / sqrt(|x-y|² + 4 d_G(x) d_G(y))`
pub fn point_pair(d: &Domain, x: &Point, y: &Point) -> Result<f64> {
    require_pair(d, x, y)?;
    if x == y {
        return Ok(0.0);
    }
    let e = x.dist(y);
    let prod = d.boundary_distance_unchecked(x) * d.boundary_distance_unchecked(y);
    Ok(e / (e * e + 4.0 * prod).sqrt())
}

/// Triangular ratio metric, closed form when one applies and the boundary
/// oracle (at [`DEFAULT_TOL`]) otherwise.
pub fn tri_ratio(d: &Domain, x: &Point, y: &Point) -> Result<f64> {
    Ok(tri_ratio_with(d, x, y, Strategy::ClosedForm, DEFAULT_TOL)?.0)
}

/// Triangular ratio metric with an explicit strategy. `ClosedForm` falls
/// back to the oracle when the pair has no closed form; the strategy
/// actually used is returned alongside the value.
pub fn tri_ratio_with(
    d: &Domain,
    x: &Point,
    y: &Point,
    strategy: Strategy,
    tol: f64,
) -> Result<(f64, Strategy)> {
    require_pair(d, x, y)?;
    if strategy == Strategy::ClosedForm {
        if let Some(v) = tri_ratio_closed_unchecked(d, x, y) {
            return Ok((v, Strategy::ClosedForm));
        }
    }
    Ok((oracle::s_oracle(d, x, y, tol)?, Strategy::Oracle))
}

/// Closed-form triangular ratio metric, or `None` when the pair needs the
/// oracle (general position in the ball).
pub fn tri_ratio_closed(d: &Domain, x: &Point, y: &Point) -> Result<Option<f64>> {
    require_pair(d, x, y)?;
    Ok(tri_ratio_closed_unchecked(d, x, y))
}

fn tri_ratio_closed_unchecked(d: &Domain, x: &Point, y: &Point) -> Option<f64> {
    if x == y {
        return Some(0.0);
    }
    match d.shape() {
        Shape::HalfSpace { .. } => {
            let e = x.dist(y);
            Some(e / (e * e + 4.0 * x.last() * y.last()).sqrt())
        }
        Shape::UnitBall { .. } => {
            let (zx, zy) = plane_reduce_c(x, y);
            ball_s_special(zx, zy)
        }
        Shape::Sector { theta } => {
            let (zx, zy) = (x.to_complex(), y.to_complex());
            let o = Complex64::new(0.0, 0.0);
            let den = heron_on_line(zx, zy, o, Complex64::new(1.0, 0.0), 0.0, f64::INFINITY)
                .min(heron_on_line(zx, zy, o, Complex64::from_polar(1.0, *theta), 0.0, f64::INFINITY));
            Some((zx - zy).norm() / den)
        }
        Shape::Polygon { vertices } => {
            let (zx, zy) = (x.to_complex(), y.to_complex());
            let den = edges(vertices)
                .map(|(a, b)| {
                    let len = (b - a).norm();
                    heron_on_line(zx, zy, a, (b - a) / len, 0.0, len)
                })
                .fold(f64::INFINITY, f64::min);
            Some((zx - zy).norm() / den)
        }
        Shape::Punctured { punctures } => {
            let (zx, zy) = (x.to_complex(), y.to_complex());
            let den = punctures
                .iter()
                .map(|&s| (zx - s).norm() + (s - zy).norm())
                .fold(f64::INFINITY, f64::min);
            Some((zx - zy).norm() / den)
        }
    }
}

/// `min |x-z| + |z-y|` over `z = o + t·u`, `t ∈ [t_min, t_max]`, `|u| = 1`.
///
/// Along the line the objective is convex, so the minimiser is the Heron
/// point (where the segment from the mirror image of `x` to `y` meets the
/// line) clamped to the parameter range.
fn heron_on_line(x: Complex64, y: Complex64, o: Complex64, u: Complex64, t_min: f64, t_max: f64) -> f64 {
    let (px, py) = ((x - o) * u.conj(), (y - o) * u.conj());
    let (hx, hy) = (px.im.abs(), py.im.abs());
    let t = if hx + hy > 0.0 {
        px.re + (py.re - px.re) * hx / (hx + hy)
    } else {
        px.re
    };
    let z = o + u * t.clamp(t_min, t_max);
    (x - z).norm() + (z - y).norm()
}

/// Closed forms for `s` in the unit disk: pairs collinear with the origin
/// and pairs symmetric about a diameter.
fn ball_s_special(x: Complex64, y: Complex64) -> Option<f64> {
    let (nx, ny) = (x.norm(), y.norm());
    let e = (x - y).norm();
    if nx == 0.0 || ny == 0.0 || cross(x, y).abs() <= COLLINEAR_TOL * nx * ny {
        return Some(e / (2.0 - (x + y).norm()));
    }
    if (nx - ny).abs() <= EQUAL_NORM_TOL {
        // Rotate the bisector of ∠XOY onto the positive real axis so the
        // pair becomes (h + ki, h - ki) with h, k > 0.
        let b = x / nx + y / ny;
        let rot = (b / b.norm()).conj();
        let (xr, yr) = (x * rot, y * rot);
        let h = 0.5 * (xr.re + yr.re);
        let k = 0.5 * (xr.im - yr.im).abs();
        let z = Complex64::new(h, k);
        return Some(if (z - 0.5).norm() > 0.5 {
            z.norm()
        } else {
            k / ((1.0 - h) * (1.0 - h) + k * k).sqrt()
        });
    }
    None
}

/// The quasi-metric `w_G` defined through tilde points. Errors on
/// non-convex domains, where the denominator can vanish.
pub fn w_metric(d: &Domain, x: &Point, y: &Point) -> Result<f64> {
    if !d.is_convex() {
        return Err(unsupported(format!("w is only defined on convex domains, not {d}")));
    }
    require_pair(d, x, y)?;
    if x == y {
        return Ok(0.0);
    }
    match d.shape() {
        Shape::UnitBall { .. } => Ok(w_ball(x, y)),
        _ => w_via_tilde_sets(d, x, y),
    }
}

/// `w_G` straight from the definition: tilde sets of both points, no
/// domain-specific shortcut.
pub fn w_via_tilde_sets(d: &Domain, x: &Point, y: &Point) -> Result<f64> {
    require_pair(d, x, y)?;
    if x == y {
        return Ok(0.0);
    }
    let to_y = d.tilde_set(x)?.distance_to(y);
    let to_x = d.tilde_set(y)?.distance_to(x);
    Ok(x.dist(y) / to_x.min(to_y))
}

/// Unit ball: with `|b| <= |a|` the denominator is `|b - ã|`,
/// `ã = a(2 - |a|)/|a|`, and `w(a, 0) = |a| / (2 - |a|)`.
fn w_ball(x: &Point, y: &Point) -> f64 {
    let (nx, ny) = (x.norm(), y.norm());
    let (a, na, b) = if ny <= nx { (x, nx, y) } else { (y, ny, x) };
    if b.is_zero() {
        return na / (2.0 - na);
    }
    let a_tilde = a.scale((2.0 - na) / na);
    a.dist(b) / b.dist(&a_tilde)
}

/// `|x - y| / min(|x - y*|, |x* - y|)` with `x* = x/|x|²`, for
/// `x, y ∈ B^n \ {0}`.
pub fn low_fn(x: &Point, y: &Point) -> Result<f64> {
    if x.dim() != y.dim() {
        return Err(invalid("points of different dimensions"));
    }
    for p in [x, y] {
        if p.is_zero() {
            return Err(invalid("low is undefined at the origin"));
        }
        if p.norm() >= 1.0 {
            return Err(invalid(format!("point ({p}) is not inside the unit ball")));
        }
    }
    if x == y {
        return Ok(0.0);
    }
    let xs = x.scale(1.0 / x.dot(x));
    let ys = y.scale(1.0 / y.dot(y));
    Ok(x.dist(y) / x.dist(&ys).min(xs.dist(y)))
}

/// `sh(ρ/2)` on the half-space, ball and sector.
fn sinh_half_rho(d: &Domain, x: &Point, y: &Point) -> Result<f64> {
    let half_plane = |a: Complex64, b: Complex64| (a - b).norm() / (2.0 * (a.im * b.im).sqrt());
    match d.shape() {
        Shape::HalfSpace { .. } => {
            require_pair(d, x, y)?;
            Ok(x.dist(y) / (2.0 * (x.last() * y.last()).sqrt()))
        }
        Shape::UnitBall { .. } => {
            require_pair(d, x, y)?;
            let (nx, ny) = (x.norm(), y.norm());
            Ok(x.dist(y) / ((1.0 - nx) * (1.0 + nx) * (1.0 - ny) * (1.0 + ny)).sqrt())
        }
        Shape::Sector { theta } => {
            require_pair(d, x, y)?;
            let a = sector_power_c(*theta, x.to_complex())?;
            let b = sector_power_c(*theta, y.to_complex())?;
            Ok(half_plane(a, b))
        }
        _ => Err(unsupported(format!(
            "the hyperbolic metric is only available on half-spaces, balls and sectors, not {d}"
        ))),
    }
}

/// Hyperbolic distance `ρ_G`.
pub fn rho(d: &Domain, x: &Point, y: &Point) -> Result<f64> {
    Ok(2.0 * sinh_half_rho(d, x, y)?.asinh())
}

/// `th(ρ_G/2)`
pub fn th_half(d: &Domain, x: &Point, y: &Point) -> Result<f64> {
    let q = sinh_half_rho(d, x, y)?;
    Ok(q / (1.0 + q * q).sqrt())
}

/// `th(ρ_G/4)`
pub fn th_quarter(d: &Domain, x: &Point, y: &Point) -> Result<f64> {
    let q = sinh_half_rho(d, x, y)?;
    Ok(q / (1.0 + (1.0 + q * q).sqrt()))
}

/// The inversion `x ↦ x/|x|²`; it preserves the argument and therefore
/// maps every sector onto itself.
pub fn invert_in_sector(x: &Point) -> Result<Point> {
    if x.dim() != 2 {
        return Err(invalid("inversion in a sector needs a planar point"));
    }
    if x.is_zero() {
        return Err(invalid("cannot invert the origin"));
    }
    Ok(x.scale(1.0 / x.dot(x)))
}

/// Value of `id` at `(x, y)` plus the strategy that produced it.
pub fn value_with_method(d: &Domain, id: MetricId, x: &Point, y: &Point, tol: f64) -> Result<(f64, Strategy)> {
    let closed = |v: Result<f64>| v.map(|v| (v, Strategy::ClosedForm));
    match id.kind {
        MetricKind::JStar => closed(jstar(d, x, y)),
        MetricKind::PointPair => closed(point_pair(d, x, y)),
        MetricKind::TriRatio => tri_ratio_with(d, x, y, id.strategy, tol),
        MetricKind::W => closed(w_metric(d, x, y)),
        MetricKind::Low => {
            if d.kind() != DomainKind::UnitBall {
                return Err(unsupported(format!("low is only defined in the unit ball, not {d}")));
            }
            require_pair(d, x, y)?;
            closed(low_fn(x, y))
        }
        MetricKind::Rho => closed(rho(d, x, y)),
        MetricKind::ThHalfRho => closed(th_half(d, x, y)),
        MetricKind::ThQuarterRho => closed(th_quarter(d, x, y)),
    }
}

pub fn value(d: &Domain, id: MetricId, x: &Point, y: &Point, tol: f64) -> Result<f64> {
    Ok(value_with_method(d, id, x, y, tol)?.0)
}

pub fn evaluate(d: &Domain, id: MetricId, x: &Point, y: &Point, tol: f64) -> Result<EvalRecord> {
    let (value, method) = value_with_method(d, id, x, y, tol)?;
    Ok(EvalRecord {
        domain: d.clone(),
        metric: id.kind,
        x: x.clone(),
        y: y.clone(),
        value,
        method,
    })
}
