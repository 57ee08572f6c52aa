use std::collections::BTreeMap;

use rayon::prelude::*;

use super::sampling::{flatten, unflatten, Sampler};
use super::{SweepReport, TripleWitness};
use crate::error::{invalid, Result};
use crate::geometry::{Domain, Point};
use crate::metrics::{self, MetricId, MetricKind, DEFAULT_TOL};
use crate::optimize::pattern_search;
use crate::oracle::triangle_ratio;

/// Number of best samples handed to the refinement stage.
pub const TOP_K: usize = 32;
/// A triangle ratio above `1 + METRIC_TOL` counts as a violation.
pub const METRIC_TOL: f64 = 1e-9;

const INITIAL_STEP: f64 = 0.1;
const MIN_STEP: f64 = 1e-9;
const MAX_EVALUATIONS: usize = 20_000;

/// Parameters of a triangle ratio search.
#[derive(Clone, Debug)]
pub struct TripleSearch {
    pub n_samples: usize,
    pub seed: u64,
    pub top_k: usize,
    pub refine: bool,
    /// Oracle tolerance for `s` where it has no closed form.
    pub tol: f64,
    /// Extra starting triples refined alongside the best samples.
    pub starts: Vec<[Point; 3]>,
}

impl TripleSearch {
    pub fn new(n_samples: usize, seed: u64) -> Self {
        Self { n_samples, seed, top_k: TOP_K, refine: true, tol: DEFAULT_TOL, starts: Vec::new() }
    }
}

/// Triangle ratio at `(x, y, z)`; `None` for infeasible or fully
/// degenerate triples.
fn ratio_at(d: &Domain, m: MetricId, tol: f64, p: &[Point]) -> Option<f64> {
    let (x, y, z) = (&p[0], &p[1], &p[2]);
    if x == z && z == y {
        return None;
    }
    let r = triangle_ratio(|a, b| metrics::value(d, m, a, b, tol), x, y, z).ok()?;
    (!r.is_nan()).then_some(r)
}

/// Lower bound for the quasi-metric constant of `m` on `d`: seeded random
/// triples, then pattern-search refinement of the best [`TOP_K`].
pub fn quasi_constant(d: &Domain, m: MetricId, n_samples: usize, seed: u64) -> Result<TripleWitness> {
    quasi_constant_with(d, m, &TripleSearch::new(n_samples, seed))
}

pub fn quasi_constant_with(d: &Domain, m: MetricId, opts: &TripleSearch) -> Result<TripleWitness> {
    if opts.n_samples == 0 && opts.starts.is_empty() {
        return Err(invalid("need at least one sample"));
    }
    let sampler = Sampler::new(d);
    // Surface unsupported metric/domain combinations as errors instead of
    // silently skipping every sample.
    let probe = sampler.draw(opts.seed, 0, 2);
    metrics::value(d, m, &probe[0], &probe[1], opts.tol)?;
    for s in &opts.starts {
        for p in s {
            d.require_interior(p)?;
        }
    }

    let mut scored: Vec<(f64, u64)> = (0..opts.n_samples as u64)
        .into_par_iter()
        .filter_map(|i| ratio_at(d, m, opts.tol, &sampler.draw(opts.seed, i, 3)).map(|r| (r, i)))
        .collect();
    scored.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
    scored.truncate(opts.top_k.max(1));

    let mut candidates: Vec<(Vec<Point>, f64)> = opts
        .starts
        .iter()
        .filter_map(|s| ratio_at(d, m, opts.tol, s).map(|r| (s.to_vec(), r)))
        .collect();
    candidates.extend(scored.iter().map(|&(r, i)| (sampler.draw(opts.seed, i, 3), r)));
    if candidates.is_empty() {
        return Err(invalid("every sampled triple was degenerate"));
    }

    let dim = d.dim();
    let refined: Vec<(Vec<Point>, f64, usize)> = candidates
        .into_par_iter()
        .map(|(pts, r)| {
            if !opts.refine || !r.is_finite() {
                return (pts, r, 0);
            }
            let objective = |v: &[f64]| {
                let p = unflatten(v, dim).ok()?;
                if !p.iter().all(|q| sampler.feasible(q)) {
                    return None;
                }
                ratio_at(d, m, opts.tol, &p)
            };
            let start = flatten(&[&pts[0], &pts[1], &pts[2]]);
            let out = pattern_search(start, r, objective, INITIAL_STEP, MIN_STEP, MAX_EVALUATIONS);
            let pts = unflatten(&out.point, dim).expect("accepted points are finite");
            (pts, out.value, out.accepted)
        })
        .collect();

    let (pts, ratio, trace_len) = refined
        .into_iter()
        .reduce(|best, c| if c.1 > best.1 { c } else { best })
        .expect("at least one candidate");
    let [x, y, z]: [Point; 3] = pts.try_into().expect("triples have three points");
    Ok(TripleWitness {
        domain: d.clone(),
        metric: m,
        x,
        y,
        z,
        ratio,
        seed: opts.seed,
        n_samples: opts.n_samples,
        trace_len,
    })
}

/// Searches for a triangle-inequality violation of `m` on `d`. Passes when
/// no triple has ratio above `1 + METRIC_TOL`.
pub fn metric_check(d: &Domain, m: MetricId, n_samples: usize, seed: u64) -> Result<SweepReport> {
    metric_check_with(d, m, &TripleSearch::new(n_samples, seed))
}

pub fn metric_check_with(d: &Domain, m: MetricId, opts: &TripleSearch) -> Result<SweepReport> {
    let w = quasi_constant_with(d, m, opts)?;
    let margin = 1.0 - w.ratio;
    let mut details = BTreeMap::new();
    details.insert("max_ratio".to_string(), w.ratio);
    Ok(SweepReport {
        inequality: format!("{}-metric", m.kind),
        domain: d.clone(),
        seed: opts.seed,
        n_samples: opts.n_samples,
        worst_margin: margin,
        witness: vec![w.x, w.y, w.z],
        tolerance: METRIC_TOL,
        pass: margin >= -METRIC_TOL,
        details,
    })
}

/// Triangle inequality check for the point pair function on `S_θ`.
pub fn metric_check_sector(theta: f64, n_samples: usize, seed: u64) -> Result<SweepReport> {
    metric_check(&Domain::sector(theta)?, MetricId::closed(MetricKind::PointPair), n_samples, seed)
}
