use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::geometry::{Domain, Point, Shape};

/// Radius of the sampling window around the reference point of an
/// unbounded domain. All studied quantities are similarity invariant, so a
/// fixed window loses nothing.
pub const UNBOUNDED_RADIUS: f64 = 8.0;

/// Independent generator for sample `index` of a run seeded with `seed`.
/// Streams do not depend on evaluation order, which keeps parallel runs
/// reproducible.
pub fn stream_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Uniform sampler for interior points of a domain: rejection from a box,
/// restricted to a ball around the reference point for unbounded domains.
#[derive(Clone, Debug)]
pub struct Sampler {
    domain: Domain,
    lo: Vec<f64>,
    hi: Vec<f64>,
    /// `(center, radius)` of the window for unbounded domains.
    window: Option<(Point, f64)>,
}

impl Sampler {
    pub fn new(domain: &Domain) -> Self {
        let n = domain.dim();
        let (lo, hi, window) = match domain.shape() {
            Shape::UnitBall { .. } => (vec![-1.0; n], vec![1.0; n], None),
            Shape::Polygon { vertices } => {
                let fold = |f: fn(f64, f64) -> f64, init: f64, re: bool| {
                    vertices.iter().map(|v| if re { v.re } else { v.im }).fold(init, f)
                };
                (
                    vec![fold(f64::min, f64::INFINITY, true), fold(f64::min, f64::INFINITY, false)],
                    vec![fold(f64::max, f64::NEG_INFINITY, true), fold(f64::max, f64::NEG_INFINITY, false)],
                    None,
                )
            }
            _ => {
                let c = domain.reference_point();
                let spread = match domain.shape() {
                    Shape::Punctured { punctures } => punctures
                        .iter()
                        .map(|&s| (s - c.to_complex()).norm())
                        .fold(0.0, f64::max),
                    _ => 0.0,
                };
                let r = UNBOUNDED_RADIUS + spread;
                let lo = c.coords().iter().map(|v| v - r).collect();
                let hi = c.coords().iter().map(|v| v + r).collect();
                (lo, hi, Some((c, r)))
            }
        };
        Self { domain: domain.clone(), lo, hi, window }
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn sample<R: Rng>(&self, rng: &mut R) -> Point {
        loop {
            let coords = self.lo.iter().zip(&self.hi).map(|(&a, &b)| rng.gen_range(a..b));
            let p = Point::new(coords).expect("box samples are finite");
            if let Some((c, r)) = &self.window {
                if p.dist(c) >= *r {
                    continue;
                }
            }
            if self.domain.contains(&p).unwrap_or(false) {
                return p;
            }
        }
    }

    /// `k` points drawn from the stream of sample `index`.
    pub fn draw(&self, seed: u64, index: u64, k: usize) -> Vec<Point> {
        let mut rng = stream_rng(seed, index);
        (0..k).map(|_| self.sample(&mut rng)).collect()
    }

    /// Whether a point is strictly inside the domain.
    pub fn feasible(&self, p: &Point) -> bool {
        self.domain.contains(p).unwrap_or(false)
    }
}

/// Splits a flat coordinate vector into points of dimension `dim`.
pub(crate) fn unflatten(v: &[f64], dim: usize) -> Result<Vec<Point>> {
    v.chunks(dim).map(|c| Point::new(c.iter().copied())).collect()
}

pub(crate) fn flatten(points: &[&Point]) -> Vec<f64> {
    points.iter().flat_map(|p| p.coords().iter().copied()).collect()
}
