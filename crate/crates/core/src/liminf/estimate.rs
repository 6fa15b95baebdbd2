use std::fmt::Write as _;

use serde::Serialize;

use super::PositiveFunction;
use crate::error::{Error, Result};

/// Two consecutive window minima closer than this count as converged.
pub const TOL_LIM: f64 = 0.05;

/// Points `x_j = x0 ratio^j` for `j < depth`, split into `windows` tail windows.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GeometricGrid {
    pub x0: f64,
    pub ratio: f64,
    pub depth: usize,
    pub windows: usize,
}

impl Default for GeometricGrid {
    fn default() -> Self {
        GeometricGrid { x0: 0.1, ratio: 0.5, depth: 40, windows: 5 }
    }
}

impl GeometricGrid {
    pub fn validate(&self) -> Result<()> {
        if !(self.x0 > 0.0 && self.x0.is_finite()) {
            return Err(Error::Argument(format!("grid start must be positive, got {}", self.x0)));
        }
        if !(self.ratio > 0.0 && self.ratio < 1.0) {
            return Err(Error::Argument(format!("grid ratio must lie in (0, 1), got {}", self.ratio)));
        }
        if self.windows == 0 || self.depth < self.windows {
            return Err(Error::Argument(format!("need 1 <= windows <= depth, got {} and {}", self.windows, self.depth)));
        }
        Ok(())
    }

    pub fn window_size(&self) -> usize {
        self.depth / self.windows
    }

    /// Grid points in decreasing order.
    pub fn points(&self) -> Vec<f64> {
        (0..self.depth).map(|j| self.x0 * self.ratio.powi(j as i32)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sample {
    pub x: f64,
    pub value: f64,
    /// Tail window index, `None` for samples ahead of the first window.
    pub window: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LiminfEstimate {
    pub grid: GeometricGrid,
    pub samples: Vec<Sample>,
    pub window_minima: Vec<f64>,
    pub value: f64,
    pub converged: bool,
}

/// Compact report of an estimate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimateReport {
    pub estimate: f64,
    pub converged: bool,
    pub skipped: usize,
    pub seed: Option<u64>,
}

impl LiminfEstimate {
    /// Windows the retained samples (in grid order) from the tail.
    pub(crate) fn from_samples(grid: GeometricGrid, retained: Vec<(f64, f64)>) -> Result<Self> {
        let size = grid.window_size();
        let count = grid.windows.min(retained.len() / size);
        if count == 0 {
            return Err(Error::Precondition(format!(
                "{} usable samples, fewer than one window of {size}",
                retained.len()
            )));
        }
        let start = retained.len() - count * size;
        let samples: Vec<Sample> = retained
            .iter()
            .enumerate()
            .map(|(i, &(x, value))| Sample { x, value, window: (i >= start).then(|| (i - start) / size) })
            .collect();
        let window_minima: Vec<f64> = samples[start..]
            .chunks(size)
            .map(|c| c.iter().map(|s| s.value).fold(f64::INFINITY, f64::min))
            .collect();
        let value = *window_minima.last().expect("at least one window");
        let converged = window_minima.len() >= 2 && (value - window_minima[window_minima.len() - 2]).abs() < TOL_LIM;
        Ok(LiminfEstimate { grid, samples, window_minima, value, converged })
    }

    pub fn report(&self, skipped: usize, seed: Option<u64>) -> EstimateReport {
        EstimateReport { estimate: self.value, converged: self.converged, skipped, seed }
    }

    /// `x,value,window` rows; samples outside the tail windows have an empty window id.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,value,window_id\n");
        for s in &self.samples {
            let window = s.window.map(|w| w.to_string()).unwrap_or_default();
            writeln!(out, "{:e},{:e},{window}", s.x, s.value).expect("writing to a String");
        }
        out
    }
}

/// Tail-window minimum of `F` on the grid.
pub fn liminf_estimate(f: &PositiveFunction, grid: &GeometricGrid) -> Result<LiminfEstimate> {
    grid.validate()?;
    let retained = grid.points().into_iter().map(|x| Ok((x, f.eval(x)?))).collect::<Result<Vec<_>>>()?;
    LiminfEstimate::from_samples(*grid, retained)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_goes_to_zero() {
        let est = liminf_estimate(&PositiveFunction::closed_form("x", 1.0, |x| x), &GeometricGrid::default()).unwrap();
        assert!(est.value < 1e-12);
        assert!(est.converged);
        assert_eq!(est.window_minima.len(), 5);
    }

    #[test]
    fn constant_is_one() {
        let est = liminf_estimate(&PositiveFunction::closed_form("1", 1.0, |_| 1.0), &GeometricGrid::default()).unwrap();
        assert_eq!(est.value, 1.0);
        assert!(est.converged);
    }

    #[test]
    fn oscillation_finds_lower_envelope() {
        let f = PositiveFunction::closed_form("2+sin(1/x)", 1.0, |x| 2.0 + (1.0 / x).sin());
        let est = liminf_estimate(&f, &GeometricGrid::default()).unwrap();
        assert!((est.value - 1.0).abs() < 0.05, "{}", est.value);
    }

    #[test]
    fn windows_are_disjoint_tail_blocks() {
        let grid = GeometricGrid { x0: 1.0, ratio: 0.5, depth: 12, windows: 3 };
        let est = liminf_estimate(&PositiveFunction::closed_form("x", 1.0, |x| x), &grid).unwrap();
        let ids: Vec<_> = est.samples.iter().map(|s| s.window).collect();
        assert_eq!(ids[0], Some(0));
        assert_eq!(ids[4], Some(1));
        assert_eq!(ids[11], Some(2));
        assert_eq!(est.value, 0.5f64.powi(11));
        assert_eq!(est.to_csv().lines().count(), 13);
    }

    #[test]
    fn evaluation_failures_propagate() {
        let f = PositiveFunction::closed_form("x", 0.01, |x| x);
        assert!(matches!(liminf_estimate(&f, &GeometricGrid::default()), Err(Error::OutsideDomain { .. })));
        let bad = GeometricGrid { ratio: 1.5, ..Default::default() };
        assert!(matches!(liminf_estimate(&f, &bad), Err(Error::Argument(_))));
    }
}
