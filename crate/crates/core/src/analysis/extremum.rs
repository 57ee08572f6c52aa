use std::cell::Cell;
use std::collections::BTreeMap;
use std::f64::consts::{PI, SQRT_2};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::quasi::TOP_K;
use super::sampling::{flatten, stream_rng, unflatten, Sampler};
use super::ExtremumReport;
use crate::error::{invalid, unsupported, Error, Result};
use crate::geometry::{arg_2pi, Domain, DomainKind, Point};
use crate::metrics::{self, MetricId, MetricKind};
use crate::optimize::{golden_section_max, pattern_search};

const INITIAL_STEP: f64 = 0.1;
const MIN_STEP: f64 = 1e-9;
const MAX_EVALUATIONS: usize = 20_000;

/// Oracle tolerance used for `s` in the quotient searches.
pub const SEARCH_ORACLE_TOL: f64 = 1e-8;

/// Quotients of two metrics studied by [`quotient_search`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Quotient {
    SOverW,
    POverW,
    WOverJStar,
}

impl Quotient {
    pub fn name(self) -> &'static str {
        match self {
            Quotient::SOverW => "s/w",
            Quotient::POverW => "p/w",
            Quotient::WOverJStar => "w/jstar",
        }
    }

    fn parts(self) -> (MetricKind, MetricKind) {
        match self {
            Quotient::SOverW => (MetricKind::TriRatio, MetricKind::W),
            Quotient::POverW => (MetricKind::PointPair, MetricKind::W),
            Quotient::WOverJStar => (MetricKind::W, MetricKind::JStar),
        }
    }

    /// The quotient at `(x, y)`, `None` where it is undefined.
    pub fn eval(self, d: &Domain, x: &Point, y: &Point, tol: f64) -> Option<f64> {
        if x == y {
            return None;
        }
        let (a, b) = self.parts();
        let num = metrics::value(d, MetricId::for_domain(a, d), x, y, tol).ok()?;
        let den = metrics::value(d, MetricId::for_domain(b, d), x, y, tol).ok()?;
        let q = num / den;
        q.is_finite().then_some(q)
    }
}

impl fmt::Display for Quotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Quotient {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "s/w" | "sw" => Ok(Quotient::SOverW),
            "p/w" | "pw" => Ok(Quotient::POverW),
            "w/jstar" | "w/j*" | "wj" => Ok(Quotient::WOverJStar),
            other => Err(Error::Parse(format!("unknown quotient `{other}`"))),
        }
    }
}

/// Which pairs a quotient search ranges over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PairRestriction {
    Free,
    /// `x, y` on a common line through the origin (unit disk only).
    CollinearWithOrigin,
    /// `x, y` on a common ray from the origin (unit disk only).
    SameRay,
}

/// Parameters of [`quotient_search`].
#[derive(Clone, Debug)]
pub struct QuotientSearch {
    pub quotient: Quotient,
    pub restriction: PairRestriction,
    pub n_samples: usize,
    pub seed: u64,
    pub top_k: usize,
    /// Oracle tolerance for `s`.
    pub tol: f64,
    /// Extra starting pairs refined alongside the best samples.
    pub starts: Vec<(Point, Point)>,
}

impl QuotientSearch {
    pub fn new(quotient: Quotient, n_samples: usize, seed: u64) -> Self {
        Self {
            quotient,
            restriction: PairRestriction::Free,
            n_samples,
            seed,
            top_k: TOP_K,
            tol: SEARCH_ORACLE_TOL,
            starts: Vec::new(),
        }
    }
}

/// Search space of a quotient search: parameter vectors mapped to pairs.
struct PairSpace<'a> {
    restriction: PairRestriction,
    sampler: &'a Sampler,
    dim: usize,
}

impl PairSpace<'_> {
    fn pair(&self, v: &[f64]) -> Option<(Point, Point)> {
        match self.restriction {
            PairRestriction::Free => {
                let p = unflatten(v, self.dim).ok()?;
                let [x, y]: [Point; 2] = p.try_into().ok()?;
                (self.sampler.feasible(&x) && self.sampler.feasible(&y)).then_some((x, y))
            }
            PairRestriction::CollinearWithOrigin | PairRestriction::SameRay => {
                let (phi, r1, r2) = (v[0], v[1], v[2]);
                let lo = if self.restriction == PairRestriction::SameRay { 0.0 } else { -1.0 };
                let ok = |r: f64| r > lo && r < 1.0;
                if !(ok(r1) && ok(r2)) {
                    return None;
                }
                let u = Complex64::from_polar(1.0, phi);
                Some((Point::from(u * r1), Point::from(u * r2)))
            }
        }
    }

    fn sample(&self, seed: u64, index: u64) -> Vec<f64> {
        let mut rng = stream_rng(seed, index);
        match self.restriction {
            PairRestriction::Free => {
                let (x, y) = (self.sampler.sample(&mut rng), self.sampler.sample(&mut rng));
                flatten(&[&x, &y])
            }
            PairRestriction::CollinearWithOrigin => {
                vec![rng.gen_range(0.0..2.0 * PI), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)]
            }
            PairRestriction::SameRay => {
                vec![rng.gen_range(0.0..2.0 * PI), rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0)]
            }
        }
    }

    fn encode(&self, x: &Point, y: &Point) -> Vec<f64> {
        match self.restriction {
            PairRestriction::Free => flatten(&[x, y]),
            _ => {
                let base = if x.is_zero() { y } else { x };
                let phi = if base.is_zero() { 0.0 } else { arg_2pi(base.to_complex()) };
                let u = Complex64::from_polar(1.0, phi);
                let proj = |p: &Point| (p.to_complex() * u.conj()).re;
                vec![phi, proj(x), proj(y)]
            }
        }
    }
}

/// Estimates the supremum of a metric quotient on `d` by seeded sampling
/// and pattern-search refinement of the best [`TOP_K`] pairs.
pub fn quotient_search(d: &Domain, opts: &QuotientSearch) -> Result<ExtremumReport> {
    if opts.n_samples == 0 && opts.starts.is_empty() {
        return Err(invalid("need at least one sample"));
    }
    if opts.restriction != PairRestriction::Free && !(d.kind() == DomainKind::UnitBall && d.dim() == 2) {
        return Err(unsupported(format!("restricted pair searches need the unit disk, got {d}")));
    }
    let sampler = Sampler::new(d);
    let space = PairSpace { restriction: opts.restriction, sampler: &sampler, dim: d.dim() };
    let q = opts.quotient;
    let objective = |v: &[f64]| {
        let (x, y) = space.pair(v)?;
        q.eval(d, &x, &y, opts.tol)
    };
    {
        let probe = sampler.draw(opts.seed, 0, 2);
        let (a, b) = q.parts();
        metrics::value(d, MetricId::for_domain(a, d), &probe[0], &probe[1], opts.tol)?;
        metrics::value(d, MetricId::for_domain(b, d), &probe[0], &probe[1], opts.tol)?;
    }

    let mut scored: Vec<(f64, u64)> = (0..opts.n_samples as u64)
        .into_par_iter()
        .filter_map(|i| objective(&space.sample(opts.seed, i)).map(|v| (v, i)))
        .collect();
    scored.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
    scored.truncate(opts.top_k.max(1));

    let mut candidates: Vec<(Vec<f64>, f64)> = Vec::new();
    for (x, y) in &opts.starts {
        d.require_interior(x)?;
        d.require_interior(y)?;
        let v = space.encode(x, y);
        if let Some(val) = objective(&v) {
            candidates.push((v, val));
        }
    }
    candidates.extend(scored.iter().map(|&(val, i)| (space.sample(opts.seed, i), val)));
    if candidates.is_empty() {
        return Err(invalid("the quotient is undefined at every sample"));
    }

    let refined: Vec<(Vec<f64>, f64, usize)> = candidates
        .into_par_iter()
        .map(|(v, val)| {
            let out = pattern_search(v, val, objective, INITIAL_STEP, MIN_STEP, MAX_EVALUATIONS);
            (out.point, out.value, out.accepted)
        })
        .collect();
    let (v, estimate, trace_len) = refined
        .into_iter()
        .reduce(|best, c| if c.1 > best.1 { c } else { best })
        .expect("at least one candidate");
    let (x, y) = space.pair(&v).expect("accepted points are feasible");

    let exploratory = q == Quotient::SOverW && opts.restriction == PairRestriction::Free;
    let mut details = BTreeMap::new();
    details.insert("oracle_tol".to_string(), opts.tol);
    Ok(ExtremumReport {
        quotient: q.name().to_string(),
        domain: d.clone(),
        seed: Some(opts.seed),
        n_samples: opts.n_samples,
        estimate,
        witness: vec![x, y],
        trace_len,
        exploratory,
        details,
    })
}

/// Free search for `sup s/w` over pairs of the unit disk. Exploratory: the
/// result is numerical evidence for the conjectured sharp constant.
pub fn conjecture_sw_search(n_samples: usize, seed: u64) -> Result<ExtremumReport> {
    quotient_search(&Domain::unit_ball(2)?, &QuotientSearch::new(Quotient::SOverW, n_samples, seed))
}

/// `h₀ = (1 - sqrt(9 - 6√2)) / (2 - √2)`, the maximiser of `s/w` at
/// `(h, ih)`.
pub fn h0_closed() -> f64 {
    (1.0 - (9.0 - 6.0 * SQRT_2).sqrt()) / (2.0 - SQRT_2)
}

/// `sqrt((h₀² - 2h₀ + 2) / (2h₀² - 2√2h₀ + 2))`
pub fn c_special_closed() -> f64 {
    let h = h0_closed();
    ((h * h - 2.0 * h + 2.0) / (2.0 * h * h - 2.0 * SQRT_2 * h + 2.0)).sqrt()
}

const SPECIAL_GRID: usize = 1000;

/// Maximises `s(h, ih) / w(h, ih)` over `h ∈ (0, 1)` in the unit disk by a
/// grid followed by golden-section search.
pub fn special_case_extremum() -> Result<ExtremumReport> {
    let d = Domain::unit_ball(2)?;
    let evals = Cell::new(0usize);
    let q = |h: f64| {
        evals.set(evals.get() + 1);
        let (x, y) = (Point::xy(h, 0.0), Point::xy(0.0, h));
        let s = metrics::tri_ratio_closed(&d, &x, &y)
            .ok()
            .flatten()
            .expect("pairs (h, ih) have a closed form");
        s / metrics::w_metric(&d, &x, &y).expect("interior pair")
    };
    let step = 1.0 / SPECIAL_GRID as f64;
    let (i, _) = (1..SPECIAL_GRID)
        .map(|i| (i, q(i as f64 * step)))
        .fold((0, f64::NEG_INFINITY), |b, c| if c.1 > b.1 { c } else { b });
    let lo = (i - 1).max(1) as f64 * step;
    let hi = ((i + 1) as f64 * step).min(1.0 - step);
    let (h, value) = golden_section_max(q, lo, hi, 1e-12);
    let trace_len = evals.get();

    let mut details = BTreeMap::new();
    details.insert("argmax_h".to_string(), h);
    details.insert("branch_value".to_string(), q(SQRT_2 / 2.0));
    details.insert("h0_closed".to_string(), h0_closed());
    details.insert("c_closed".to_string(), c_special_closed());
    Ok(ExtremumReport {
        quotient: Quotient::SOverW.name().to_string(),
        domain: d,
        seed: None,
        n_samples: SPECIAL_GRID - 1,
        estimate: value,
        witness: vec![Point::xy(h, 0.0), Point::xy(0.0, h)],
        trace_len,
        exploratory: false,
        details,
    })
}

/// One cell of [`figure1_grid`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FigureRow {
    pub re_y: f64,
    pub im_y: f64,
    /// `None` outside the disk and at `y = x`.
    pub quotient: Option<f64>,
}

/// `s/w` (with oracle `s`) for fixed `x = x_fixed` and `y` on a
/// `resolution × resolution` lattice over `[-1, 1)²`. The lattice
/// coordinates are `(2i - resolution) / resolution`, so the real axis is
/// always sampled. Rows run over `Im y` in the outer loop.
pub fn figure1_grid(x_fixed: f64, resolution: usize) -> Result<Vec<FigureRow>> {
    if !(x_fixed > 0.0 && x_fixed < 1.0) {
        return Err(invalid(format!("x must lie in (0, 1), got {x_fixed}")));
    }
    if resolution < 16 {
        return Err(invalid(format!("resolution must be at least 16, got {resolution}")));
    }
    let d = Domain::unit_ball(2)?;
    let x = Point::xy(x_fixed, 0.0);
    let coord = |i: usize| (2 * i) as f64 / resolution as f64 - 1.0;
    let sw = MetricId::oracle(MetricKind::TriRatio);
    Ok((0..resolution * resolution)
        .into_par_iter()
        .map(|cell| {
            let (re, im) = (coord(cell % resolution), coord(cell / resolution));
            let y = Point::xy(re, im);
            let quotient = if y.norm() >= 1.0 || y.dist(&x) < 1e-12 {
                None
            } else {
                let s = metrics::value(&d, sw, &x, &y, metrics::DEFAULT_TOL).ok();
                let w = metrics::w_metric(&d, &x, &y).ok();
                s.zip(w).map(|(s, w)| s / w)
            };
            FigureRow { re_y: re, im_y: im, quotient }
        })
        .collect())
}

/// `w/j*` in the unit disk at `x = 1 - k`, `y = (1 - k)e^{2ki}`.
pub fn jw_limit_curve(k: f64) -> Result<f64> {
    check_unit_k(k)?;
    let d = Domain::unit_ball(2)?;
    let x = Point::xy(1.0 - k, 0.0);
    let y = Point::from(Complex64::from_polar(1.0 - k, 2.0 * k));
    Ok(metrics::w_metric(&d, &x, &y)? / metrics::jstar(&d, &x, &y)?)
}

/// `((1-k) sin k + k) / sqrt(k² + (1-k²) sin² k)`, equal to
/// [`jw_limit_curve`]; tends to `√2` as `k → 0⁺`.
pub fn jw_limit_closed(k: f64) -> Result<f64> {
    check_unit_k(k)?;
    let s = k.sin();
    Ok(((1.0 - k) * s + k) / (k * k + (1.0 - k * k) * s * s).sqrt())
}

fn check_unit_k(k: f64) -> Result<()> {
    if !(k > 0.0 && k < 1.0) {
        return Err(invalid(format!("k must lie in (0, 1), got {k}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn special_extremum_matches_closed_values() {
        let r = special_case_extremum().unwrap();
        assert!((r.details["argmax_h"] - h0_closed()).abs() < 1e-5);
        assert!((r.estimate - c_special_closed()).abs() < 1e-10);
        assert!((r.details["branch_value"] - (2.5 - SQRT_2).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn jw_paths_agree() {
        for k in [1e-4, 0.01, 0.5, 0.999] {
            let a = jw_limit_curve(k).unwrap();
            let b = jw_limit_closed(k).unwrap();
            assert!((a - b).abs() < 1e-10, "{k}: {a} vs {b}");
        }
        assert!(jw_limit_curve(1.0).is_err());
    }

    #[test]
    fn same_ray_p_over_w_is_one() {
        let d = Domain::unit_ball(2).unwrap();
        let mut o = QuotientSearch::new(Quotient::POverW, 300, 0);
        o.restriction = PairRestriction::SameRay;
        let r = quotient_search(&d, &o).unwrap();
        assert!((r.estimate - 1.0).abs() < 1e-12, "{}", r.estimate);
    }

    #[test]
    fn figure_grid_shape() {
        let rows = figure1_grid(0.6, 16).unwrap();
        assert_eq!(rows.len(), 256);
        assert!(rows.iter().any(|r| r.quotient.is_none()));
        assert!(figure1_grid(1.0, 16).is_err());
        assert!(figure1_grid(0.5, 8).is_err());
    }

    #[test]
    fn quotient_names() {
        for q in [Quotient::SOverW, Quotient::POverW, Quotient::WOverJStar] {
            assert_eq!(q.name().parse::<Quotient>().unwrap(), q);
        }
    }
}
