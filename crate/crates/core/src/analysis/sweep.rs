use std::collections::BTreeMap;
use std::f64::consts::{PI, SQRT_2};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;

use super::sampling::{stream_rng, Sampler};
use super::SweepReport;
use crate::error::{invalid, Error, Result};
use crate::geometry::{Domain, DomainKind, Point};
use crate::metrics::{self, MetricId, MetricKind, Strategy};
use crate::oracle;

/// Built-in inequality selectors for [`inequality_sweep`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Inequality {
    /// `j* ≤ p ≤ √2 j*`
    L23a,
    /// `j* ≤ s ≤ 2 j*`
    L23b,
    /// `s ≤ √2 j*` on convex domains.
    L23c,
    /// Hyperbolic chain `th(ρ/4) ≤ j* ≤ s ≤ p ≤ th(ρ/2) ≤ 2 th(ρ/4)`, with
    /// `s = p = th(ρ/2)` on the half-space.
    L24,
    /// `j* ≤ w ≤ s ≤ p` on convex domains.
    C48,
    /// The hyperbolic chain with `w` inserted after `j*`.
    C49,
    /// `w ≤ s ≤ √2 w` on convex domains.
    T46,
    /// `w ≤ p ≤ √2 w` on the ball.
    T510,
    /// `j* ≤ w ≤ √2 j*` on the ball.
    T511,
    /// `w ≤ s` on the ball, plus `w = s` on pairs collinear with the origin.
    T57,
    /// `p(x, y) = p(x*, y*)` for the inversion `x* = x/|x|²` in a sector.
    L34,
    /// `s = w` in a sector, `s` by the oracle.
    L43,
    /// `low < w` on the punctured ball (strict).
    L59,
    /// `|y - x̃| ≤ |x - ỹ|` in the ball whenever `|y| ≤ |x|`.
    P52,
    /// Conjugate-pair closed form of `s` in the disk against the oracle.
    T26,
    /// Closed-form `s` against the oracle.
    SOracle,
}

impl Inequality {
    pub const ALL: [Inequality; 16] = [
        Inequality::L23a,
        Inequality::L23b,
        Inequality::L23c,
        Inequality::L24,
        Inequality::C48,
        Inequality::C49,
        Inequality::T46,
        Inequality::T510,
        Inequality::T511,
        Inequality::T57,
        Inequality::L34,
        Inequality::L43,
        Inequality::L59,
        Inequality::P52,
        Inequality::T26,
        Inequality::SOracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Inequality::L23a => "L23a",
            Inequality::L23b => "L23b",
            Inequality::L23c => "L23c",
            Inequality::L24 => "L24",
            Inequality::C48 => "C48",
            Inequality::C49 => "C49",
            Inequality::T46 => "T46",
            Inequality::T510 => "T510",
            Inequality::T511 => "T511",
            Inequality::T57 => "T57",
            Inequality::L34 => "L34",
            Inequality::L43 => "L43",
            Inequality::L59 => "L59",
            Inequality::P52 => "P52",
            Inequality::T26 => "T26",
            Inequality::SOracle => "s-oracle",
        }
    }
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Inequality {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Inequality::ALL
            .into_iter()
            .find(|i| i.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Parse(format!("unknown inequality selector `{s}`")))
    }
}

/// Parameters of [`inequality_sweep_with`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepOptions {
    pub n_samples: usize,
    pub seed: u64,
    /// The sweep passes when the worst margin is at least `-tol`.
    pub tol: f64,
    /// Tolerance for oracle evaluations of `s`.
    pub oracle_tol: f64,
}

#[derive(Clone, Copy, Debug)]
enum Link {
    Le,
    Eq,
}

#[derive(Clone, Copy, Debug)]
struct Term {
    coef: f64,
    id: MetricId,
}

fn term(coef: f64, kind: MetricKind, d: &Domain) -> Term {
    Term { coef, id: MetricId::for_domain(kind, d) }
}

fn require(ok: bool, sel: Inequality, what: &str, d: &Domain) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(invalid(format!("selector {sel} needs {what}, got {d}")))
    }
}

/// The chain checked by a chain-type selector, `None` for the special ones.
fn chain(sel: Inequality, d: &Domain) -> Result<Option<(Vec<Term>, Vec<Link>)>> {
    use Link::{Eq, Le};
    use MetricKind::*;
    let half = d.kind() == DomainKind::HalfSpace;
    let ball = d.kind() == DomainKind::UnitBall;
    let convex = || require(d.is_convex(), sel, "a convex domain", d);
    let on_ball = || require(ball, sel, "the unit ball", d);
    let t = |c, k| term(c, k, d);
    let c = match sel {
        Inequality::L23a => (vec![t(1.0, JStar), t(1.0, PointPair), t(SQRT_2, JStar)], vec![Le, Le]),
        Inequality::L23b => (vec![t(1.0, JStar), t(1.0, TriRatio), t(2.0, JStar)], vec![Le, Le]),
        Inequality::L23c => {
            convex()?;
            (vec![t(1.0, TriRatio), t(SQRT_2, JStar)], vec![Le])
        }
        Inequality::L24 | Inequality::C49 => {
            require(half || ball, sel, "a half-space or the unit ball", d)?;
            let mut terms = vec![t(1.0, ThQuarterRho), t(1.0, JStar)];
            if sel == Inequality::C49 {
                terms.push(t(1.0, W));
            }
            terms.extend([t(1.0, TriRatio), t(1.0, PointPair), t(1.0, ThHalfRho), t(2.0, ThQuarterRho)]);
            let n = terms.len() - 1;
            // on the half-space every term from the one after j* up to th(ρ/2) coincides
            let links = (0..n).map(|i| if half && i >= 2 && i < n - 1 { Eq } else { Le }).collect();
            (terms, links)
        }
        Inequality::C48 => {
            convex()?;
            (vec![t(1.0, JStar), t(1.0, W), t(1.0, TriRatio), t(1.0, PointPair)], vec![Le, Le, Le])
        }
        Inequality::T46 => {
            convex()?;
            (vec![t(1.0, W), t(1.0, TriRatio), t(SQRT_2, W)], vec![Le, Le])
        }
        Inequality::T510 => {
            on_ball()?;
            (vec![t(1.0, W), t(1.0, PointPair), t(SQRT_2, W)], vec![Le, Le])
        }
        Inequality::T511 => {
            on_ball()?;
            (vec![t(1.0, JStar), t(1.0, W), t(SQRT_2, JStar)], vec![Le, Le])
        }
        Inequality::T57 => {
            on_ball()?;
            require(d.dim() == 2, sel, "the unit disk", d)?;
            (vec![t(1.0, W), t(1.0, TriRatio)], vec![Le])
        }
        Inequality::L43 => {
            require(d.kind() == DomainKind::Sector, sel, "a sector", d)?;
            (vec![t(1.0, W), Term { coef: 1.0, id: MetricId::oracle(TriRatio) }], vec![Eq])
        }
        _ => return Ok(None),
    };
    Ok(Some(c))
}

fn validate_special(sel: Inequality, d: &Domain) -> Result<()> {
    let ball = d.kind() == DomainKind::UnitBall;
    match sel {
        Inequality::L34 => require(d.kind() == DomainKind::Sector, sel, "a sector", d),
        Inequality::L59 | Inequality::P52 => require(ball, sel, "the unit ball", d),
        Inequality::T26 => require(ball && d.dim() == 2, sel, "the unit disk", d),
        Inequality::SOracle => require(!ball, sel, "a domain with a closed form for s", d),
        _ => Ok(()),
    }
}

fn chain_margin(terms: &[Term], links: &[Link], d: &Domain, x: &Point, y: &Point, oracle_tol: f64) -> Result<f64> {
    let vals = terms
        .iter()
        .map(|t| Ok(t.coef * metrics::value(d, t.id, x, y, oracle_tol)?))
        .collect::<Result<Vec<f64>>>()?;
    Ok(links
        .iter()
        .zip(vals.windows(2))
        .map(|(l, w)| match l {
            Link::Le => w[1] - w[0],
            Link::Eq => -(w[1] - w[0]).abs(),
        })
        .fold(f64::INFINITY, f64::min))
}

#[derive(Clone, Debug)]
struct Outcome {
    margin: f64,
    index: u64,
    witness: Vec<Point>,
    /// Per-selector counters, summed over samples.
    counts: [u64; 2],
}

impl Outcome {
    fn identity() -> Self {
        Self { margin: f64::INFINITY, index: u64::MAX, witness: Vec::new(), counts: [0; 2] }
    }

    fn combine(a: Self, b: Self) -> Self {
        let counts = [a.counts[0] + b.counts[0], a.counts[1] + b.counts[1]];
        let better_b = b.margin < a.margin || (b.margin == a.margin && b.index < a.index);
        let mut w = if better_b { b } else { a };
        w.counts = counts;
        w
    }
}

/// Upper half-disk point drawn uniformly.
fn upper_half_disk<R: Rng>(rng: &mut R) -> Complex64 {
    loop {
        let z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(0.0..1.0));
        if z.im > 0.0 && z.norm() < 1.0 {
            return z;
        }
    }
}

fn sample_outcome(
    sel: Inequality,
    d: &Domain,
    sampler: &Sampler,
    chain: &Option<(Vec<Term>, Vec<Link>)>,
    opts: &SweepOptions,
    index: u64,
) -> Result<Outcome> {
    let mut rng = stream_rng(opts.seed, index);
    let mut counts = [0u64; 2];
    let (margin, witness) = match sel {
        Inequality::T26 => {
            let x = upper_half_disk(&mut rng);
            let (px, py) = (Point::from(x), Point::from(x.conj()));
            let closed = metrics::tri_ratio_closed(d, &px, &py)?.expect("conjugate pairs have a closed form");
            let exact = oracle::s_oracle(d, &px, &py, opts.oracle_tol)?;
            counts[if (x - 0.5).norm() > 0.5 { 1 } else { 0 }] += 1;
            (-(closed - exact).abs(), vec![px, py])
        }
        _ => {
            let x = sampler.sample(&mut rng);
            let y = sampler.sample(&mut rng);
            match sel {
                Inequality::L34 => {
                    let pp = MetricId::closed(MetricKind::PointPair);
                    let a = metrics::value(d, pp, &x, &y, opts.oracle_tol)?;
                    let (xs, ys) = (metrics::invert_in_sector(&x)?, metrics::invert_in_sector(&y)?);
                    let b = metrics::value(d, pp, &xs, &ys, opts.oracle_tol)?;
                    (-(a - b).abs(), vec![x, y])
                }
                Inequality::L59 => {
                    let m = metrics::w_metric(d, &x, &y)? - metrics::low_fn(&x, &y)?;
                    (m, vec![x, y])
                }
                Inequality::P52 => {
                    let (x, y) = if y.norm() <= x.norm() { (x, y) } else { (y, x) };
                    let m = d.tilde_set(&y)?.distance_to(&x) - d.tilde_set(&x)?.distance_to(&y);
                    (m, vec![x, y])
                }
                Inequality::SOracle => {
                    let (closed, _) = metrics::tri_ratio_with(d, &x, &y, Strategy::ClosedForm, opts.oracle_tol)?;
                    let exact = oracle::s_oracle(d, &x, &y, opts.oracle_tol)?;
                    (-(closed - exact).abs(), vec![x, y])
                }
                _ => {
                    let (terms, links) = chain.as_ref().expect("chain selectors carry a chain");
                    let m = chain_margin(terms, links, d, &x, &y, opts.oracle_tol)?;
                    if sel == Inequality::T57 {
                        // collinear pair through the origin: w = s exactly
                        let phi = rng.gen_range(0.0..2.0 * PI);
                        let u = Complex64::from_polar(1.0, phi);
                        let cx = Point::from(u * rng.gen_range(-1.0..1.0));
                        let cy = Point::from(u * rng.gen_range(-1.0..1.0));
                        let w = metrics::w_metric(d, &cx, &cy)?;
                        let s = metrics::value(d, terms[1].id, &cx, &cy, opts.oracle_tol)?;
                        let mc = -(w - s).abs();
                        if mc < m {
                            (mc, vec![cx, cy])
                        } else {
                            (m, vec![x, y])
                        }
                    } else {
                        (m, vec![x, y])
                    }
                }
            }
        }
    };
    Ok(Outcome { margin, index, witness, counts })
}

/// Checks `sel` on `n_samples` seeded pairs of `d`, with the oracle (where
/// needed) run at the pass tolerance.
pub fn inequality_sweep(d: &Domain, sel: Inequality, n_samples: usize, seed: u64, tol: f64) -> Result<SweepReport> {
    inequality_sweep_with(d, sel, &SweepOptions { n_samples, seed, tol, oracle_tol: tol })
}

pub fn inequality_sweep_with(d: &Domain, sel: Inequality, opts: &SweepOptions) -> Result<SweepReport> {
    if opts.n_samples == 0 {
        return Err(invalid("need at least one sample"));
    }
    if opts.tol.is_nan() || opts.tol < 0.0 || opts.oracle_tol.is_nan() || opts.oracle_tol <= 0.0 {
        return Err(invalid("tolerances must be positive"));
    }
    let chain = chain(sel, d)?;
    validate_special(sel, d)?;
    let sampler = Sampler::new(d);
    let best = (0..opts.n_samples as u64)
        .into_par_iter()
        .map(|i| sample_outcome(sel, d, &sampler, &chain, opts, i))
        .try_reduce(Outcome::identity, |a, b| Ok(Outcome::combine(a, b)))?;

    let pass = if sel == Inequality::L59 {
        best.margin > 0.0
    } else {
        best.margin >= -opts.tol
    };
    let mut details = BTreeMap::new();
    details.insert("worst_index".to_string(), best.index as f64);
    if sel == Inequality::T26 {
        details.insert("inner_branch".to_string(), best.counts[0] as f64);
        details.insert("outer_branch".to_string(), best.counts[1] as f64);
    }
    Ok(SweepReport {
        inequality: sel.name().to_string(),
        domain: d.clone(),
        seed: opts.seed,
        n_samples: opts.n_samples,
        worst_margin: best.margin,
        witness: best.witness,
        tolerance: opts.tol,
        pass,
        details,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selector_names_round_trip() {
        for s in Inequality::ALL {
            assert_eq!(s.name().parse::<Inequality>().unwrap(), s);
        }
        assert!("L99".parse::<Inequality>().is_err());
        assert_eq!("c48".parse::<Inequality>().unwrap(), Inequality::C48);
    }

    #[test]
    fn domain_mismatch_is_rejected() {
        let punct = Domain::punctured_plane(&[(0.0, 0.0)]).unwrap();
        assert!(inequality_sweep(&punct, Inequality::C48, 10, 0, 1e-9).is_err());
        let h = Domain::half_space(2).unwrap();
        assert!(inequality_sweep(&h, Inequality::T510, 10, 0, 1e-9).is_err());
        assert!(inequality_sweep(&h, Inequality::L34, 10, 0, 1e-9).is_err());
    }

    #[test]
    fn small_sweeps_pass() {
        let b = Domain::unit_ball(2).unwrap();
        for sel in [Inequality::L23a, Inequality::C48, Inequality::T510, Inequality::L59, Inequality::P52] {
            let r = inequality_sweep(&b, sel, 200, 5, 1e-9).unwrap();
            assert!(r.pass, "{sel}: {}", r.worst_margin);
        }
        let h = Domain::half_space(2).unwrap();
        let r = inequality_sweep(&h, Inequality::C49, 500, 5, 1e-12).unwrap();
        assert!(r.pass, "{}", r.worst_margin);
    }

    #[test]
    fn sweep_is_deterministic() {
        let b = Domain::unit_ball(2).unwrap();
        let a = inequality_sweep(&b, Inequality::T511, 300, 9, 1e-9).unwrap();
        let c = inequality_sweep(&b, Inequality::T511, 300, 9, 1e-9).unwrap();
        assert_eq!(a, c);
    }
}
