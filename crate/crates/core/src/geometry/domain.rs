use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{invalid, unsupported, Error, Result};
use crate::geometry::Point;

/// Relative tie tolerance used when collecting all nearest boundary points.
const TIE_TOL: f64 = 1e-9;
/// Candidates closer than this are treated as the same boundary point.
const MERGE_TOL: f64 = 1e-12;

/// The supported domain geometries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DomainKind {
    HalfSpace,
    UnitBall,
    Sector,
    ConvexPolygon,
    PuncturedPlane,
}

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Shape {
    HalfSpace { dim: usize },
    UnitBall { dim: usize },
    Sector { theta: f64 },
    /// Counterclockwise, strictly convex.
    Polygon { vertices: Vec<Complex64> },
    Punctured { punctures: Vec<Complex64> },
}

/// An open proper subdomain of `R^n`.
///
/// Values are validated on construction and immutable afterwards. The
/// textual form (see [`Domain::from_str`]) is
/// `halfspace:n=2`, `ball:n=3`, `sector:theta=1.5707963267948966`,
/// `polygon:(-1,0);(1,0);(1,1);(-1,1)` or `punctured:(0,0);(1,0)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Domain {
    shape: Shape,
}

/// All boundary points nearest to `base`.
#[derive(Clone, Debug, PartialEq)]
pub struct NearestSet {
    pub base: Point,
    pub distance: f64,
    pub points: Vec<Point>,
    /// `false` when the true set is a continuum (the centre of the ball);
    /// `points` is then empty.
    pub exhaustive: bool,
}

/// The set of reflections `2m - x` of `x` through its nearest boundary
/// points `m`.
#[derive(Clone, Debug, PartialEq)]
pub enum TildeSet {
    Points(Vec<Point>),
    /// Continuum case: every point of the sphere `S(center, radius)`.
    Sphere { center: Point, radius: f64 },
}

impl TildeSet {
    /// `inf |y - t|` over the set.
    pub fn distance_to(&self, y: &Point) -> f64 {
        match self {
            TildeSet::Points(pts) => pts.iter().map(|t| y.dist(t)).fold(f64::INFINITY, f64::min),
            TildeSet::Sphere { center, radius } => (radius - y.dist(center)).abs(),
        }
    }
}

impl Domain {
    pub fn half_space(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self { shape: Shape::HalfSpace { dim } })
    }

    pub fn unit_ball(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self { shape: Shape::UnitBall { dim } })
    }

    /// The open sector `0 < arg z < theta`.
    pub fn sector(theta: f64) -> Result<Self> {
        if !(theta > 0.0 && theta < TAU) {
            return Err(invalid(format!("sector angle must lie in (0, 2π), got {theta}")));
        }
        Ok(Self { shape: Shape::Sector { theta } })
    }

    /// A strictly convex polygon given by its vertices in counterclockwise
    /// order.
    pub fn convex_polygon(vertices: &[(f64, f64)]) -> Result<Self> {
        let v: Vec<Complex64> = vertices.iter().map(|&(x, y)| Complex64::new(x, y)).collect();
        if v.len() < 3 {
            return Err(invalid("a polygon needs at least 3 vertices"));
        }
        if v.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(invalid("polygon vertices must be finite"));
        }
        let n = v.len();
        // Every other vertex strictly to the left of every edge: strict
        // convexity, counterclockwise orientation and simple winding at once.
        for i in 0..n {
            let a = v[i];
            let b = v[(i + 1) % n];
            for (j, &c) in v.iter().enumerate() {
                if j == i || j == (i + 1) % n {
                    continue;
                }
                if cross(b - a, c - a) <= 0.0 {
                    return Err(invalid(
                        "polygon must be strictly convex with counterclockwise vertices",
                    ));
                }
            }
        }
        Ok(Self { shape: Shape::Polygon { vertices: v } })
    }

    /// The plane minus finitely many distinct points.
    pub fn punctured_plane(punctures: &[(f64, f64)]) -> Result<Self> {
        if punctures.is_empty() {
            return Err(invalid("a punctured plane needs at least one puncture"));
        }
        let p: Vec<Complex64> = punctures.iter().map(|&(x, y)| Complex64::new(x, y)).collect();
        if p.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(invalid("punctures must be finite"));
        }
        for i in 0..p.len() {
            if p[i + 1..].contains(&p[i]) {
                return Err(invalid("punctures must be pairwise distinct"));
            }
        }
        Ok(Self { shape: Shape::Punctured { punctures: p } })
    }

    pub(crate) fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn kind(&self) -> DomainKind {
        match self.shape {
            Shape::HalfSpace { .. } => DomainKind::HalfSpace,
            Shape::UnitBall { .. } => DomainKind::UnitBall,
            Shape::Sector { .. } => DomainKind::Sector,
            Shape::Polygon { .. } => DomainKind::ConvexPolygon,
            Shape::Punctured { .. } => DomainKind::PuncturedPlane,
        }
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        match self.shape {
            Shape::HalfSpace { dim } | Shape::UnitBall { dim } => dim,
            _ => 2,
        }
    }

    pub fn is_convex(&self) -> bool {
        match self.shape {
            Shape::HalfSpace { .. } | Shape::UnitBall { .. } | Shape::Polygon { .. } => true,
            Shape::Sector { theta } => theta <= PI,
            Shape::Punctured { .. } => false,
        }
    }

    pub fn sector_angle(&self) -> Option<f64> {
        match self.shape {
            Shape::Sector { theta } => Some(theta),
            _ => None,
        }
    }

    pub fn vertices(&self) -> Option<Vec<Point>> {
        match &self.shape {
            Shape::Polygon { vertices } => Some(vertices.iter().map(|&z| Point::from(z)).collect()),
            _ => None,
        }
    }

    pub fn punctures(&self) -> Option<Vec<Point>> {
        match &self.shape {
            Shape::Punctured { punctures } => Some(punctures.iter().map(|&z| Point::from(z)).collect()),
            _ => None,
        }
    }

    /// A fixed interior point used to centre sampling regions.
    pub fn reference_point(&self) -> Point {
        match &self.shape {
            Shape::HalfSpace { dim } => {
                let mut p = Point::origin(*dim);
                p.coords_mut()[dim - 1] = 1.0;
                p
            }
            Shape::UnitBall { dim } => Point::origin(*dim),
            Shape::Sector { theta } => Point::from(Complex64::from_polar(1.0, theta / 2.0)),
            Shape::Polygon { vertices } => {
                let c: Complex64 = vertices.iter().sum::<Complex64>() / vertices.len() as f64;
                Point::from(c)
            }
            Shape::Punctured { punctures } => {
                let c: Complex64 = punctures.iter().sum::<Complex64>() / punctures.len() as f64;
                if punctures.contains(&c) {
                    let sep = min_separation(punctures).unwrap_or(1.0);
                    Point::from(c + Complex64::new(0.0, sep / 2.0))
                } else {
                    Point::from(c)
                }
            }
        }
    }

    fn check_dim(&self, x: &Point) -> Result<()> {
        if x.dim() != self.dim() {
            return Err(invalid(format!(
                "point has dimension {} but the domain has dimension {}",
                x.dim(),
                self.dim()
            )));
        }
        Ok(())
    }

    /// Whether `x` lies in the open domain.
    pub fn contains(&self, x: &Point) -> Result<bool> {
        self.check_dim(x)?;
        Ok(match &self.shape {
            Shape::HalfSpace { .. } => x.last() > 0.0,
            Shape::UnitBall { .. } => x.norm() < 1.0,
            Shape::Sector { theta } => {
                let z = x.to_complex();
                z != Complex64::new(0.0, 0.0) && {
                    let a = arg_2pi(z);
                    a > 0.0 && a < *theta
                }
            }
            Shape::Polygon { vertices } => {
                let z = x.to_complex();
                edges(vertices).all(|(a, b)| cross(b - a, z - a) > 0.0)
            }
            Shape::Punctured { punctures } => !punctures.contains(&x.to_complex()),
        })
    }

    /// Errors unless `x` is an interior point.
    pub fn require_interior(&self, x: &Point) -> Result<()> {
        if self.contains(x)? {
            Ok(())
        } else {
            Err(invalid(format!("point ({x}) is not inside the domain {self}")))
        }
    }

    /// Euclidean distance from `x` to the boundary, `d_G(x)`.
    pub fn boundary_distance(&self, x: &Point) -> Result<f64> {
        self.require_interior(x)?;
        Ok(self.boundary_distance_unchecked(x))
    }

    pub(crate) fn boundary_distance_unchecked(&self, x: &Point) -> f64 {
        match &self.shape {
            Shape::HalfSpace { .. } => x.last(),
            Shape::UnitBall { .. } => 1.0 - x.norm(),
            Shape::Sector { theta } => {
                let z = x.to_complex();
                let (r, phi) = (z.norm(), arg_2pi(z));
                let m = phi.min(theta - phi);
                if m <= FRAC_PI_2 {
                    r * m.sin()
                } else {
                    r
                }
            }
            Shape::Polygon { vertices } => {
                let z = x.to_complex();
                edges(vertices)
                    .map(|(a, b)| (z - closest_on_segment(z, a, b)).norm())
                    .fold(f64::INFINITY, f64::min)
            }
            Shape::Punctured { punctures } => {
                let z = x.to_complex();
                punctures.iter().map(|&s| (z - s).norm()).fold(f64::INFINITY, f64::min)
            }
        }
    }

    /// All boundary points at distance `d_G(x)` from `x`.
    pub fn nearest_boundary_points(&self, x: &Point) -> Result<NearestSet> {
        self.require_interior(x)?;
        let distance = self.boundary_distance_unchecked(x);
        // Candidates carry the segment they are an interior foot on, if any.
        // A clamped vertex next to an interior foot is strictly farther than
        // the foot and is dropped even when the tie tolerance would keep it.
        let planar = |cands: Vec<(Complex64, f64, Option<[Complex64; 2]>)>| {
            let best = cands.iter().map(|c| c.1).fold(f64::INFINITY, f64::min);
            let cut = best + TIE_TOL * (1.0 + best);
            let dominated = |z: Complex64| {
                cands.iter().any(|c| c.2.is_some_and(|ends| ends.iter().any(|&e| (e - z).norm() <= MERGE_TOL)))
            };
            let mut kept: Vec<Complex64> = Vec::new();
            for &(z, d, foot) in &cands {
                if d <= cut && (foot.is_some() || !dominated(z)) && !kept.iter().any(|k| (k - z).norm() <= MERGE_TOL) {
                    kept.push(z);
                }
            }
            kept.into_iter().map(Point::from).collect::<Vec<_>>()
        };
        let (points, exhaustive) = match &self.shape {
            Shape::HalfSpace { .. } => {
                let mut m = x.clone();
                let n = m.dim();
                m.coords_mut()[n - 1] = 0.0;
                (vec![m], true)
            }
            Shape::UnitBall { .. } => {
                if x.is_zero() {
                    (Vec::new(), false)
                } else {
                    (vec![x.scale(1.0 / x.norm())], true)
                }
            }
            Shape::Sector { theta } => {
                let z = x.to_complex();
                let (r, phi) = (z.norm(), arg_2pi(z));
                let zero = Complex64::new(0.0, 0.0);
                let side = |a: f64, dir: Complex64| {
                    if a < FRAC_PI_2 {
                        (dir * (r * a.cos()), r * a.sin(), Some([zero, dir * (2.0 * r)]))
                    } else {
                        (zero, r, None)
                    }
                };
                let cands = vec![
                    side(phi, Complex64::new(1.0, 0.0)),
                    side(theta - phi, Complex64::from_polar(1.0, *theta)),
                ];
                (planar(cands), true)
            }
            Shape::Polygon { vertices } => {
                let z = x.to_complex();
                let cands = edges(vertices)
                    .map(|(a, b)| {
                        let (c, interior) = foot_on_segment(z, a, b);
                        (c, (z - c).norm(), interior.then_some([a, b]))
                    })
                    .collect();
                (planar(cands), true)
            }
            Shape::Punctured { punctures } => {
                let z = x.to_complex();
                let cands = punctures.iter().map(|&s| (s, (z - s).norm(), None)).collect();
                (planar(cands), true)
            }
        };
        Ok(NearestSet { base: x.clone(), distance, points, exhaustive })
    }

    /// Reflections of `x` through its nearest boundary points. Only
    /// defined on convex domains.
    pub fn tilde_set(&self, x: &Point) -> Result<TildeSet> {
        if !self.is_convex() {
            return Err(unsupported(format!(
                "tilde points (and w) are only defined on convex domains, not {self}"
            )));
        }
        let near = self.nearest_boundary_points(x)?;
        if !near.exhaustive {
            return Ok(TildeSet::Sphere { center: x.clone(), radius: 2.0 * near.distance });
        }
        Ok(TildeSet::Points(near.points.iter().map(|m| m.lin(2.0, x, -1.0)).collect()))
    }
}

fn check_dim(dim: usize) -> Result<()> {
    if dim < 2 {
        return Err(invalid(format!("dimension must be at least 2, got {dim}")));
    }
    Ok(())
}

/// Argument in `[0, 2π)`.
pub(crate) fn arg_2pi(z: Complex64) -> f64 {
    let a = z.im.atan2(z.re);
    if a < 0.0 {
        a + TAU
    } else {
        a
    }
}

pub(crate) fn cross(a: Complex64, b: Complex64) -> f64 {
    a.re * b.im - a.im * b.re
}

pub(crate) fn edges(v: &[Complex64]) -> impl Iterator<Item = (Complex64, Complex64)> + '_ {
    (0..v.len()).map(move |i| (v[i], v[(i + 1) % v.len()]))
}

pub(crate) fn closest_on_segment(z: Complex64, a: Complex64, b: Complex64) -> Complex64 {
    foot_on_segment(z, a, b).0
}

/// Closest point of `[a, b]` to `z` and whether it lies strictly inside.
fn foot_on_segment(z: Complex64, a: Complex64, b: Complex64) -> (Complex64, bool) {
    let ab = b - a;
    let t = ((z - a).re * ab.re + (z - a).im * ab.im) / ab.norm_sqr();
    if t <= 0.0 {
        (a, false)
    } else if t >= 1.0 {
        (b, false)
    } else {
        (a + ab * t, true)
    }
}

fn min_separation(p: &[Complex64]) -> Option<f64> {
    let mut best: Option<f64> = None;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            let d = (p[i] - p[j]).norm();
            best = Some(best.map_or(d, |b: f64| b.min(d)));
        }
    }
    best
}

fn fmt_planar(f: &mut fmt::Formatter<'_>, pts: &[Complex64]) -> fmt::Result {
    for (i, z) in pts.iter().enumerate() {
        if i > 0 {
            f.write_str(";")?;
        }
        write!(f, "({},{})", z.re, z.im)?;
    }
    Ok(())
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.shape {
            Shape::HalfSpace { dim } => write!(f, "halfspace:n={dim}"),
            Shape::UnitBall { dim } => write!(f, "ball:n={dim}"),
            Shape::Sector { theta } => write!(f, "sector:theta={theta}"),
            Shape::Polygon { vertices } => {
                f.write_str("polygon:")?;
                fmt_planar(f, vertices)
            }
            Shape::Punctured { punctures } => {
                f.write_str("punctured:")?;
                fmt_planar(f, punctures)
            }
        }
    }
}

fn parse_planar_list(s: &str) -> Result<Vec<(f64, f64)>> {
    s.split(';')
        .map(|item| {
            let p: Point = item.parse()?;
            if p.dim() != 2 {
                return Err(Error::Parse(format!("expected a planar point, got `{item}`")));
            }
            Ok((p.coords()[0], p.coords()[1]))
        })
        .collect()
}

fn parse_key<'a>(body: &'a str, key: &str) -> Result<&'a str> {
    body.strip_prefix(key)
        .and_then(|r| r.strip_prefix('='))
        .ok_or_else(|| Error::Parse(format!("expected `{key}=...`, got `{body}`")))
}

impl FromStr for Domain {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (tag, body) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("domain literal `{s}` is missing `:`")))?;
        let parse_dim = |body: &str| -> Result<usize> {
            parse_key(body, "n")?
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad dimension in `{s}`")))
        };
        let built = match tag {
            "halfspace" => Domain::half_space(parse_dim(body)?),
            "ball" => Domain::unit_ball(parse_dim(body)?),
            "sector" => {
                let theta = parse_key(body, "theta")?
                    .parse::<f64>()
                    .map_err(|_| Error::Parse(format!("bad sector angle in `{s}`")))?;
                Domain::sector(theta)
            }
            "polygon" => Domain::convex_polygon(&parse_planar_list(body)?),
            "punctured" => Domain::punctured_plane(&parse_planar_list(body)?),
            other => return Err(Error::Parse(format!("unknown domain kind `{other}`"))),
        };
        built.map_err(|e| Error::Parse(e.to_string()))
    }
}
