//! Uniform sampling grids and sampled profiles.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::collections::BTreeMap;

/// Strictly increasing, uniformly spaced abscissae.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    points: Vec<f64>,
    spacing: f64,
}

impl Grid {
    /// Uniform grid of `n` points spanning [lo, hi] inclusive.
    pub fn uniform(lo: f64, hi: f64, n: usize) -> Result<Grid> {
        if n < 2 {
            return Err(Error::domain("grid", format!("need >= 2 points, got {n}")));
        }
        if !(lo.is_finite() && hi.is_finite()) || lo >= hi {
            return Err(Error::domain(
                "grid",
                format!("invalid interval [{lo}, {hi}]"),
            ));
        }
        let h = (hi - lo) / (n - 1) as f64;
        let points = (0..n).map(|i| lo + h * i as f64).collect();
        Ok(Grid { points, spacing: h })
    }

    /// Build from explicit abscissae, checking uniformity to 1e-12
    /// relative.
    pub fn from_points(points: Vec<f64>) -> Result<Grid> {
        if points.len() < 2 {
            return Err(Error::domain("grid", "need >= 2 points"));
        }
        let h = points[1] - points[0];
        if h <= 0.0 {
            return Err(Error::domain("grid", "abscissae must strictly increase"));
        }
        for w in points.windows(2) {
            let d = w[1] - w[0];
            if d <= 0.0 || (d - h).abs() > 1e-12 * h.abs() {
                return Err(Error::domain(
                    "grid",
                    format!("non-uniform spacing: {d} vs {h}"),
                ));
            }
        }
        Ok(Grid { points, spacing: h })
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Complex samples over a grid plus the parameters that produced them.
#[derive(Debug, Clone)]
pub struct Profile {
    pub grid: Grid,
    pub values: Vec<Complex64>,
    /// Parameter names to rendered values (alpha, D, q, parity, method, ...).
    pub meta: BTreeMap<String, String>,
}

impl Profile {
    pub fn new(grid: Grid, values: Vec<Complex64>) -> Result<Profile> {
        if grid.len() != values.len() {
            return Err(Error::domain(
                "profile",
                format!("{} grid points vs {} values", grid.len(), values.len()),
            ));
        }
        Ok(Profile {
            grid,
            values,
            meta: BTreeMap::new(),
        })
    }

    pub fn with_meta(mut self, key: &str, value: impl ToString) -> Profile {
        self.meta.insert(key.to_string(), value.to_string());
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_grid_spans_inclusively() {
        let g = Grid::uniform(-8.0, 8.0, 401).unwrap();
        assert_eq!(g.len(), 401);
        assert_eq!(g.points()[0], -8.0);
        assert_eq!(*g.points().last().unwrap(), 8.0);
        assert!((g.spacing() - 0.04).abs() < 1e-15);
    }

    #[test]
    fn non_uniform_rejected() {
        assert!(Grid::from_points(vec![0.0, 1.0, 2.5]).is_err());
        assert!(Grid::from_points(vec![0.0, 1.0, 2.0]).is_ok());
        assert!(Grid::from_points(vec![0.0, -1.0]).is_err());
    }

    #[test]
    fn profile_length_checked() {
        let g = Grid::uniform(0.0, 1.0, 3).unwrap();
        assert!(Profile::new(g.clone(), vec![Complex64::new(0.0, 0.0); 2]).is_err());
        assert!(Profile::new(g, vec![Complex64::new(0.0, 0.0); 3]).is_ok());
    }
}
