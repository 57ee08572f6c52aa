use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{invalid, Error, Result};

/// A point of `R^n`, `n >= 2`, with finite coordinates.
///
/// Two-dimensional points double as complex numbers (`x + iy`) for the
/// sector maps and the unit-disk formulas.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(SmallVec<[f64; 4]>);

impl Point {
    pub fn new(coords: impl IntoIterator<Item = f64>) -> Result<Self> {
        let coords: SmallVec<[f64; 4]> = coords.into_iter().collect();
        if coords.len() < 2 {
            return Err(invalid(format!(
                "a point needs at least 2 coordinates, got {}",
                coords.len()
            )));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(invalid("point coordinates must be finite"));
        }
        Ok(Self(coords))
    }

    /// Planar point `(x, y)`.
    pub fn xy(x: f64, y: f64) -> Self {
        Self(SmallVec::from_slice(&[x, y]))
    }

    pub fn origin(dim: usize) -> Self {
        Self(SmallVec::from_elem(0.0, dim.max(2)))
    }

    pub fn from_complex(z: Complex64) -> Self {
        Self::xy(z.re, z.im)
    }

    /// Reads the first two coordinates as `x + iy`.
    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(self.0[0], self.0[1])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn last(&self) -> f64 {
        self.0[self.0.len() - 1]
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn dot(&self, other: &Point) -> f64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn dist(&self, other: &Point) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0.0)
    }

    pub fn add(&self, other: &Point) -> Point {
        Point(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Point) -> Point {
        Point(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, s: f64) -> Point {
        Point(self.0.iter().map(|a| a * s).collect())
    }

    /// `a * self + b * other`
    pub fn lin(&self, a: f64, other: &Point, b: f64) -> Point {
        Point(self.0.iter().zip(&other.0).map(|(p, q)| a * p + b * q).collect())
    }

    pub(crate) fn coords_mut(&mut self) -> &mut [f64] {
        &mut self.0
    }
}

impl From<Complex64> for Point {
    fn from(z: Complex64) -> Self {
        Self::from_complex(z)
    }
}

impl From<(f64, f64)> for Point {
    fn from((x, y): (f64, f64)) -> Self {
        Self::xy(x, y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Parses a comma separated coordinate list such as `0.3,-0.4`.
impl FromStr for Point {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let s = s
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .unwrap_or(s);
        let coords = s
            .split(',')
            .map(|c| {
                c.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::Parse(format!("bad coordinate `{}` in point `{s}`", c.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        Point::new(coords).map_err(|e| Error::Parse(e.to_string()))
    }
}
