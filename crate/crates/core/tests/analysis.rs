use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI, SQRT_2};

use metriq::analysis::*;
use metriq::metrics::{self, MetricId, MetricKind};
use metriq::oracle::{self, triangle_ratio};
use metriq::{Domain, Error, Point};
use num_complex::Complex64 as C;

fn disk() -> Domain {
    Domain::unit_ball(2).unwrap()
}

fn reevaluate(w: &TripleWitness) -> f64 {
    triangle_ratio(|a, b| metrics::value(&w.domain, w.metric, a, b, metrics::DEFAULT_TOL), &w.x, &w.y, &w.z).unwrap()
}

#[test]
fn p_quasi_constant_on_the_disk() {
    let w = quasi_constant(&disk(), MetricId::closed(MetricKind::PointPair), 3000, 5).unwrap();
    assert!(w.ratio >= 5f64.sqrt() / 2.0 - 1e-6, "{}", w.ratio);
    assert!((reevaluate(&w) - w.ratio).abs() < 1e-12);
}

#[test]
fn p_is_a_metric_on_the_half_plane() {
    let h = Domain::half_space(2).unwrap();
    let r = metric_check(&h, MetricId::closed(MetricKind::PointPair), 2000, 1).unwrap();
    assert!(r.pass, "{}", r.details["max_ratio"]);
    assert!(r.details["max_ratio"] <= 1.0 + 1e-9);
}

#[test]
fn searches_are_deterministic() {
    let m = MetricId::closed(MetricKind::W);
    let a = quasi_constant(&oracle::rectangle(), m, 1500, 42).unwrap();
    let b = quasi_constant(&oracle::rectangle(), m, 1500, 42).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.ratio.to_bits(), b.ratio.to_bits());
    assert!((reevaluate(&a) - a.ratio).abs() < 1e-12);
    let c = quasi_constant(&oracle::rectangle(), m, 1500, 43).unwrap();
    assert_ne!(a.x, c.x);

    let s1 = inequality_sweep(&disk(), Inequality::T46, 300, 9, 1e-9).unwrap();
    let s2 = inequality_sweep(&disk(), Inequality::T46, 300, 9, 1e-9).unwrap();
    assert_eq!(s1, s2);
}

#[test]
fn refinement_never_loses_the_start() {
    let h0 = h0_closed();
    let start = [Point::xy(0.3, 0.1), Point::xy(-0.2, 0.4), Point::xy(0.0, -0.5)];
    let m = MetricId::closed(MetricKind::PointPair);
    let mut o = TripleSearch::new(0, 0);
    o.starts.push(start.clone());
    let w = quasi_constant_with(&disk(), m, &o).unwrap();
    let r0 = triangle_ratio(|a, b| metrics::value(&disk(), m, a, b, 1e-9), &start[0], &start[1], &start[2]).unwrap();
    assert!(w.ratio >= r0);

    let mut q = QuotientSearch::new(Quotient::SOverW, 0, 0);
    q.starts.push((Point::xy(h0, 0.0), Point::xy(0.0, h0)));
    let e = quotient_search(&disk(), &q).unwrap();
    assert!(e.estimate >= 1.0731, "{}", e.estimate);
    assert!(e.exploratory);
}

#[test]
fn sector_metric_checks() {
    let r = metric_check_sector(1.5 * PI, 2000, 0).unwrap();
    assert!(r.pass && r.details["max_ratio"] <= 1.0 + 1e-9);

    let d = Domain::sector(FRAC_PI_2).unwrap();
    let (u, v) = (C::from_polar(1.0, PI / 5.0), C::from_polar(1.0, 0.3 * PI));
    let mut o = TripleSearch::new(0, 0);
    o.starts.push([Point::from(u), Point::from(v), Point::from((u + v) / 2.0)]);
    let r = metric_check_with(&d, MetricId::closed(MetricKind::PointPair), &o).unwrap();
    assert!(!r.pass && r.details["max_ratio"] > 1.0);
    // the failure carries a witness that reproduces it
    let p = |a: &Point, b: &Point| metrics::point_pair(&d, a, b);
    let ratio = triangle_ratio(p, &r.witness[0], &r.witness[1], &r.witness[2]).unwrap();
    assert!((ratio - r.details["max_ratio"]).abs() < 1e-12);
}

#[test]
fn chain_sweeps_pass() {
    let sector = Domain::sector(1.5 * PI).unwrap();
    let punct = Domain::punctured_plane(&[(0.0, 0.0), (1.0, 0.0)]).unwrap();
    let cases = [
        (disk(), Inequality::C48),
        (disk(), Inequality::T510),
        (disk(), Inequality::T511),
        (disk(), Inequality::T57),
        (disk(), Inequality::C49),
        (disk(), Inequality::L59),
        (disk(), Inequality::P52),
        (disk(), Inequality::T26),
        (Domain::unit_ball(3).unwrap(), Inequality::C48),
        (Domain::half_space(2).unwrap(), Inequality::L24),
        (Domain::half_space(2).unwrap(), Inequality::L23c),
        (sector.clone(), Inequality::L23a),
        (sector.clone(), Inequality::L23b),
        (sector, Inequality::L34),
        (punct.clone(), Inequality::L23a),
        (punct, Inequality::L23b),
        (Domain::sector(2.0).unwrap(), Inequality::L43),
        (oracle::rectangle(), Inequality::T46),
        (oracle::rectangle(), Inequality::SOracle),
    ];
    for (d, sel) in cases {
        let r = inequality_sweep(&d, sel, 200, 3, 1e-7).unwrap();
        assert!(r.pass, "{sel} on {d}: margin {} at {:?}", r.worst_margin, r.witness);
        assert_eq!(r.inequality, sel.name());
    }
}

#[test]
fn half_plane_equality_chain() {
    let r = inequality_sweep(&Domain::half_space(2).unwrap(), Inequality::C49, 2000, 0, 1e-12).unwrap();
    assert!(r.pass, "{}", r.worst_margin);
}

#[test]
fn selector_domain_mismatch() {
    let h = Domain::half_space(2).unwrap();
    let punct = Domain::punctured_plane(&[(0.0, 0.0)]).unwrap();
    for (d, sel) in [(&h, Inequality::T510), (&punct, Inequality::L23c), (&punct, Inequality::C48), (&h, Inequality::L34)] {
        assert!(matches!(inequality_sweep(d, sel, 10, 0, 1e-9), Err(Error::InvalidArgument(_))), "{sel}");
    }
    assert!("c48".parse::<Inequality>().is_ok());
    assert!(matches!("C50".parse::<Inequality>(), Err(Error::Parse(_))));
}

#[test]
fn sharp_pairs() {
    let (x, y) = (Point::xy(0.5, 0.0), Point::xy(-0.5, 0.0));
    let p = metrics::point_pair(&disk(), &x, &y).unwrap();
    let w = metrics::w_metric(&disk(), &x, &y).unwrap();
    assert!((p / w - SQRT_2).abs() < 1e-12);
}

#[test]
fn restricted_quotient_searches() {
    let mut q = QuotientSearch::new(Quotient::SOverW, 200, 0);
    q.restriction = PairRestriction::CollinearWithOrigin;
    let e = quotient_search(&disk(), &q).unwrap();
    assert!((e.estimate - 1.0).abs() < 1e-8, "{}", e.estimate);
    assert!(!e.exploratory);

    let mut q = QuotientSearch::new(Quotient::POverW, 200, 0);
    q.restriction = PairRestriction::SameRay;
    let e = quotient_search(&disk(), &q).unwrap();
    assert!((e.estimate - 1.0).abs() < 1e-12);

    let h = Domain::half_space(2).unwrap();
    assert!(matches!(quotient_search(&h, &q), Err(Error::UnsupportedDomain(_))));
}

#[test]
fn special_case_constants() {
    let r = special_case_extremum().unwrap();
    assert!((r.details["argmax_h"] - 0.48236).abs() < 1e-4);
    assert!((r.estimate - 1.07313).abs() < 1e-4);
    assert!((r.details["branch_value"] - 1.04201).abs() < 1e-4);
    assert!((h0_closed() - (1.0 - (9.0 - 6.0 * SQRT_2).sqrt()) / (2.0 - SQRT_2)).abs() < 1e-15);
    // direct evaluation at the argmax reproduces the estimate
    let h = r.details["argmax_h"];
    let v = Quotient::SOverW.eval(&disk(), &Point::xy(h, 0.0), &Point::xy(0.0, h), 1e-10).unwrap();
    assert!((v - r.estimate).abs() < 1e-9);
}

#[test]
fn figure_grid_cells() {
    let rows = figure1_grid(0.6, 20).unwrap();
    assert_eq!(rows.len(), 400);
    let mut collinear = 0;
    for r in &rows {
        let at_x = (r.re_y - 0.6).abs() < 1e-12 && r.im_y == 0.0;
        let inside = r.re_y * r.re_y + r.im_y * r.im_y < 1.0 && !at_x;
        assert_eq!(r.quotient.is_some(), inside, "{r:?}");
        if let Some(q) = r.quotient {
            assert!(q >= 1.0 - 1e-7, "{r:?}");
            if r.im_y == 0.0 {
                assert!((q - 1.0).abs() < 1e-7, "{r:?}");
                collinear += 1;
            }
        }
    }
    assert_eq!(collinear, 18);
    let minus = rows.iter().find(|r| (r.re_y + 0.6).abs() < 1e-12 && r.im_y == 0.0).unwrap();
    assert!((minus.quotient.unwrap() - 1.0).abs() < 1e-7);
}

#[test]
fn jw_limit() {
    assert!(jw_limit_curve(1e-4).unwrap() >= SQRT_2 - 1e-3);
    for i in 1..=100 {
        let k = i as f64 / 101.0;
        let a = jw_limit_curve(k).unwrap();
        assert!((a - jw_limit_closed(k).unwrap()).abs() < 1e-10, "k={k}");
    }
    assert!(jw_limit_curve(0.999).unwrap().is_finite());
    assert!(jw_limit_curve(0.0).is_err() && jw_limit_closed(1.0).is_err());
}

#[test]
fn sampler_streams() {
    let s = Sampler::new(&Domain::sector(0.5).unwrap());
    let a = s.draw(7, 11, 3);
    assert_eq!(a, s.draw(7, 11, 3));
    assert_ne!(a, s.draw(7, 12, 3));
    assert!(a.iter().all(|p| s.feasible(p)));
    let s = Sampler::new(&oracle::rectangle());
    assert!((0..500).flat_map(|i| s.draw(1, i, 2)).all(|p| s.feasible(&p)));
    assert!(!s.feasible(&Point::xy(0.0, FRAC_1_SQRT_2 + 1.0)));
}
