//! Derivative-free optimisers: golden-section search on an interval and a
//! Hooke–Jeeves pattern search.

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Minimises a unimodal `f` on `[a, b]`, shrinking the bracket until it is
/// narrower than `width`. Returns `(argmin, min)`.
pub fn golden_section_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, width: f64) -> (f64, f64) {
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    // 200 iterations shrink any bracket by a factor of ~1e-42.
    for _ in 0..200 {
        if b - a <= width {
            break;
        }
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    let (fa, fb) = (f(a), f(b));
    [(x1, f1), (x2, f2), (a, fa), (b, fb)]
        .into_iter()
        .fold((f64::NAN, f64::INFINITY), |best, c| if c.1 < best.1 { c } else { best })
}

/// Maximises `f` on `[a, b]` with golden-section search.
pub fn golden_section_max(f: impl Fn(f64) -> f64, a: f64, b: f64, width: f64) -> (f64, f64) {
    let (x, v) = golden_section_min(|t| -f(t), a, b, width);
    (x, -v)
}

/// Result of [`pattern_search`].
#[derive(Clone, Debug)]
pub struct PatternOutcome {
    pub point: Vec<f64>,
    pub value: f64,
    /// Number of accepted (strictly improving) moves.
    pub accepted: usize,
    pub evaluations: usize,
}

/// Hooke–Jeeves pattern search maximising `f`, starting from `start`
/// where `f(start) = start_value`.
///
/// An exploratory sweep tries `±step` along every coordinate, keeping each
/// strict improvement. After a successful sweep the search jumps along the
/// displacement just made and explores around the jump; when a sweep makes
/// no progress the step is halved, from `initial_step` down to `min_step`.
/// `f` returns `None` for infeasible points, which are never accepted. The
/// tracked value never decreases.
pub fn pattern_search(
    start: Vec<f64>,
    start_value: f64,
    f: impl Fn(&[f64]) -> Option<f64>,
    initial_step: f64,
    min_step: f64,
    max_evaluations: usize,
) -> PatternOutcome {
    let mut search = Explorer { f, evaluations: 0, max_evaluations, accepted: 0 };
    let mut base = start;
    let mut value = start_value;
    let mut step = initial_step;
    while step >= min_step && !search.exhausted() {
        let (mut x, mut fx) = search.explore(&base, Some(value), step);
        if fx.is_none_or(|v| v <= value) {
            step *= 0.5;
            continue;
        }
        while let Some(v) = fx.filter(|&v| v > value) {
            let jump: Vec<f64> = x.iter().zip(&base).map(|(a, b)| 2.0 * a - b).collect();
            base = x;
            value = v;
            search.accepted += 1;
            if search.exhausted() {
                break;
            }
            let fj = search.eval(&jump);
            (x, fx) = search.explore(&jump, fj, step);
        }
    }
    PatternOutcome { point: base, value, accepted: search.accepted, evaluations: search.evaluations }
}

struct Explorer<F> {
    f: F,
    evaluations: usize,
    max_evaluations: usize,
    accepted: usize,
}

impl<F: Fn(&[f64]) -> Option<f64>> Explorer<F> {
    fn exhausted(&self) -> bool {
        self.evaluations >= self.max_evaluations
    }

    fn eval(&mut self, p: &[f64]) -> Option<f64> {
        self.evaluations += 1;
        (self.f)(p).filter(|v| !v.is_nan())
    }

    /// One coordinate sweep around `p`; returns the best point seen.
    fn explore(&mut self, p: &[f64], value: Option<f64>, step: f64) -> (Vec<f64>, Option<f64>) {
        let mut point = p.to_vec();
        let mut value = value;
        let mut trial = point.clone();
        for i in 0..point.len() {
            for sign in [1.0, -1.0] {
                if self.exhausted() {
                    return (point, value);
                }
                trial.copy_from_slice(&point);
                trial[i] += sign * step;
                if let Some(v) = self.eval(&trial) {
                    if value.is_none_or(|cur| v > cur) {
                        value = Some(v);
                        point.copy_from_slice(&trial);
                        break;
                    }
                }
            }
        }
        (point, value)
    }
}
