//! Reflections, the sector power map and the reduction of a ball
//! configuration to a plane.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{invalid, Result};
use crate::geometry::domain::arg_2pi;
use crate::geometry::Point;

fn require_planar(p: &Point, what: &str) -> Result<()> {
    if p.dim() != 2 {
        return Err(invalid(format!("{what} must be a planar point, got dimension {}", p.dim())));
    }
    Ok(())
}

/// Mirror image of `x` in the line through `a` and `b`.
pub fn reflect_across_line(x: &Point, a: &Point, b: &Point) -> Result<Point> {
    for (p, w) in [(x, "x"), (a, "a"), (b, "b")] {
        require_planar(p, w)?;
    }
    if a == b {
        return Err(invalid("the line needs two distinct points"));
    }
    Ok(Point::from(reflect_c(x.to_complex(), a.to_complex(), b.to_complex())))
}

pub(crate) fn reflect_c(z: Complex64, a: Complex64, b: Complex64) -> Complex64 {
    let u = (b - a) / (b - a).norm();
    a + u * u * (z - a).conj()
}

/// `z ↦ z^(π/θ)` on the branch with `arg z ∈ (0, θ)`; maps `S_θ` onto the
/// upper half-plane.
pub fn sector_power_map(theta: f64, x: &Point) -> Result<Point> {
    require_planar(x, "x")?;
    Ok(Point::from(sector_power_c(theta, x.to_complex())?))
}

pub(crate) fn sector_power_c(theta: f64, z: Complex64) -> Result<Complex64> {
    if z == Complex64::new(0.0, 0.0) {
        return Err(invalid("the power map is undefined at the vertex"));
    }
    let phi = arg_2pi(z);
    if !(phi > 0.0 && phi < theta) {
        return Err(invalid(format!("arg {phi} lies outside (0, {theta})")));
    }
    let e = PI / theta;
    Ok(Complex64::from_polar(z.norm().powf(e), phi * e))
}

/// Inverse of [`sector_power_map`]: upper half-plane onto `S_θ`.
pub fn sector_power_map_inverse(theta: f64, w: &Point) -> Result<Point> {
    require_planar(w, "w")?;
    let z = w.to_complex();
    if z.im.is_nan() || z.im <= 0.0 {
        return Err(invalid("the inverse power map needs a point of the upper half-plane"));
    }
    let e = theta / PI;
    Ok(Point::from(Complex64::from_polar(z.norm().powf(e), z.im.atan2(z.re) * e)))
}

/// Coordinates of `x` and `y` in an orthonormal basis of a 2-plane through
/// the origin containing both. Norms and `|x - y|` are preserved; planar
/// input is returned unchanged.
pub fn plane_reduce(x: &Point, y: &Point) -> Result<(Point, Point)> {
    if x.dim() != y.dim() {
        return Err(invalid("points of different dimensions"));
    }
    if x.dim() == 2 {
        return Ok((x.clone(), y.clone()));
    }
    let (zx, zy) = plane_reduce_c(x, y);
    Ok((Point::from(zx), Point::from(zy)))
}

pub(crate) fn plane_reduce_c(x: &Point, y: &Point) -> (Complex64, Complex64) {
    if x.dim() == 2 {
        return (x.to_complex(), y.to_complex());
    }
    let n = x.dim();
    let e1 = if !x.is_zero() {
        x.scale(1.0 / x.norm())
    } else if !y.is_zero() {
        y.scale(1.0 / y.norm())
    } else {
        unit(n, 0)
    };
    let mut r = y.lin(1.0, &e1, -y.dot(&e1));
    let rn = r.norm();
    // Degenerate (collinear) input: any unit vector orthogonal to e1 works.
    let e2 = if rn > 1e-300 && rn > 1e-14 * y.norm() {
        r.scale(1.0 / rn)
    } else {
        let k = (0..n)
            .min_by(|&i, &j| e1.coords()[i].abs().total_cmp(&e1.coords()[j].abs()))
            .unwrap_or(0);
        r = unit(n, k).lin(1.0, &e1, -e1.coords()[k]);
        r.scale(1.0 / r.norm())
    };
    (
        Complex64::new(x.dot(&e1), x.dot(&e2)),
        Complex64::new(y.dot(&e1), y.dot(&e2)),
    )
}

fn unit(n: usize, k: usize) -> Point {
    let mut p = Point::origin(n);
    p.coords_mut()[k] = 1.0;
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_6};

    #[test]
    fn reflections() {
        let o = Point::xy(0.0, 0.0);
        let r = reflect_across_line(&Point::xy(0.0, 1.0), &o, &Point::xy(1.0, 0.0)).unwrap();
        assert!(r.dist(&Point::xy(0.0, -1.0)) < 1e-15);
        let r = reflect_across_line(&Point::xy(1.0, 1.0), &o, &Point::xy(0.0, 1.0)).unwrap();
        assert!(r.dist(&Point::xy(-1.0, 1.0)) < 1e-15);
        let on = Point::xy(0.5, 0.5);
        let r = reflect_across_line(&on, &o, &Point::xy(2.0, 2.0)).unwrap();
        assert!(r.dist(&on) < 1e-15);
        assert!(reflect_across_line(&on, &o, &o).is_err());
    }

    #[test]
    fn power_map_values() {
        let w = sector_power_map(FRAC_PI_2, &Point::from(Complex64::from_polar(1.0, FRAC_PI_4))).unwrap();
        assert!(w.dist(&Point::xy(0.0, 1.0)) < 1e-15);
        let x = Point::xy(0.3, 2.0);
        assert!(sector_power_map(PI, &x).unwrap().dist(&x) < 1e-15);
        // 2 e^{iπ/6} squared, cross-checked by complex multiplication
        let z = Complex64::from_polar(2.0, FRAC_PI_6);
        let w = sector_power_map(FRAC_PI_2, &Point::from(z)).unwrap();
        assert!((w.to_complex() - z * z).norm() < 1e-14);
        assert!((w.to_complex() - Complex64::from_polar(4.0, PI / 3.0)).norm() < 1e-14);
    }

    #[test]
    fn power_map_errors() {
        assert!(sector_power_map(1.0, &Point::xy(0.0, 0.0)).is_err());
        assert!(sector_power_map(FRAC_PI_2, &Point::xy(-1.0, 1.0)).is_err());
        assert!(sector_power_map_inverse(1.0, &Point::xy(1.0, -1.0)).is_err());
    }

    #[test]
    fn plane_reduce_examples() {
        let x = Point::new([0.3, 0.0, 0.4]).unwrap();
        let o = Point::origin(3);
        let (a, b) = plane_reduce(&x, &o).unwrap();
        assert!((a.norm() - 0.5).abs() < 1e-15 && b.norm() == 0.0);

        let x = Point::new([0.5, 0.0, 0.0]).unwrap();
        let y = Point::new([0.0, 0.5, 0.0]).unwrap();
        let (a, b) = plane_reduce(&x, &y).unwrap();
        assert!((a.norm() - 0.5).abs() < 1e-15);
        assert!((b.norm() - 0.5).abs() < 1e-15);
        assert!(a.dot(&b).abs() < 1e-15);
        assert!((a.dist(&b) - 0.5 * 2f64.sqrt()).abs() < 1e-15);

        let p = Point::xy(0.1, 0.2);
        let q = Point::xy(-0.3, 0.1);
        assert_eq!(plane_reduce(&p, &q).unwrap(), (p, q));
    }

    #[test]
    fn plane_reduce_collinear() {
        let x = Point::new([0.2, 0.2, 0.1]).unwrap();
        let y = x.scale(-1.5);
        let (a, b) = plane_reduce(&x, &y).unwrap();
        assert!((a.dist(&b) - x.dist(&y)).abs() < 1e-15);
        assert!((b.norm() - y.norm()).abs() < 1e-15);
    }
}
