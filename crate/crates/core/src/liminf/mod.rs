//! Numerical lower limits at `0+`: the quotient bound `liminf h(φ)/h(ψ) <= 1`, the
//! descent sequence behind it, and the derivative quotient of a monotone function.
//!
//! Lower limits are approximated on a geometric grid by the minimum over the last
//! of several disjoint tail windows. Every tolerance is stated where it is used.

mod eq1;
mod estimate;
mod quotient;
pub mod random;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub use eq1::{derivative_quotient, eq1_check, Eq1Check, RESOLUTION};
pub use estimate::{liminf_estimate, EstimateReport, GeometricGrid, LiminfEstimate, Sample, TOL_LIM};
pub use quotient::{descent_sequence, quotient_bound_check, DescentSequence, QuotientCheck, DESCENT_FLOOR, TAIL_FACTOR};

type Evaluator = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Piecewise-linear interpolant through strictly increasing knots.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseLinear {
    knots: Vec<f64>,
    values: Vec<f64>,
}

impl PiecewiseLinear {
    pub fn new(knots: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if knots.len() < 2 || knots.len() != values.len() {
            return Err(Error::Argument("need at least two knots and one value per knot".into()));
        }
        if knots.windows(2).any(|w| !(w[0] < w[1])) || knots.iter().chain(&values).any(|v| !v.is_finite()) {
            return Err(Error::Argument("knots must be finite and strictly increasing".into()));
        }
        Ok(PiecewiseLinear { knots, values })
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    fn first(&self) -> f64 {
        self.knots[0]
    }

    fn last(&self) -> f64 {
        self.knots[self.knots.len() - 1]
    }

    /// Interpolated value for `x` within the knot range.
    fn interpolate(&self, x: f64) -> f64 {
        let i = self.knots.partition_point(|&k| k <= x).clamp(1, self.knots.len() - 1);
        let (x0, x1) = (self.knots[i - 1], self.knots[i]);
        let (y0, y1) = (self.values[i - 1], self.values[i]);
        let t = (x - x0) / (x1 - x0);
        y0 + t * (y1 - y0)
    }
}

/// A function `(0, δ0] -> (0, inf)`.
#[derive(Clone)]
pub enum PositiveFunction {
    ClosedForm { name: String, domain_end: f64, f: Evaluator },
    /// Linear between knots and linear towards `(0, 0)` below the first knot.
    PiecewiseLinear(PiecewiseLinear),
}

impl PositiveFunction {
    pub fn closed_form<F>(name: impl Into<String>, domain_end: f64, f: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        PositiveFunction::ClosedForm { name: name.into(), domain_end, f: Arc::new(f) }
    }

    pub fn piecewise_linear(pl: PiecewiseLinear) -> Result<Self> {
        if pl.first() <= 0.0 || pl.values.iter().any(|&v| v <= 0.0) {
            return Err(Error::Argument("positive piecewise-linear functions need positive knots and values".into()));
        }
        Ok(PositiveFunction::PiecewiseLinear(pl))
    }

    pub fn domain_end(&self) -> f64 {
        match self {
            PositiveFunction::ClosedForm { domain_end, .. } => *domain_end,
            PositiveFunction::PiecewiseLinear(pl) => pl.last(),
        }
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        if !(x > 0.0 && x <= self.domain_end()) {
            return Err(Error::OutsideDomain { x, lo: 0.0, hi: self.domain_end() });
        }
        let y = match self {
            PositiveFunction::ClosedForm { f, .. } => f(x),
            PositiveFunction::PiecewiseLinear(pl) if x < pl.first() => pl.values[0] * (x / pl.first()),
            PositiveFunction::PiecewiseLinear(pl) => pl.interpolate(x),
        };
        if y.is_finite() && y > 0.0 {
            Ok(y)
        } else {
            Err(Error::Evaluation { x, reason: format!("value {y} is not finite and positive") })
        }
    }
}

impl fmt::Debug for PositiveFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PositiveFunction::ClosedForm { name, domain_end, .. } => write!(f, "{name} on (0, {domain_end}]"),
            PositiveFunction::PiecewiseLinear(pl) => write!(f, "piecewise linear with {} knots", pl.knots.len()),
        }
    }
}

/// A nondecreasing function on a closed interval.
#[derive(Clone)]
pub enum MonotoneFunction {
    ClosedForm { name: String, lo: f64, hi: f64, g: Evaluator },
    PiecewiseLinear(PiecewiseLinear),
}

impl MonotoneFunction {
    pub fn closed_form<G>(name: impl Into<String>, lo: f64, hi: f64, g: G) -> Self
    where
        G: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        MonotoneFunction::ClosedForm { name: name.into(), lo, hi, g: Arc::new(g) }
    }

    pub fn piecewise_linear(pl: PiecewiseLinear) -> Result<Self> {
        if pl.values.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::Argument("monotone piecewise-linear values must be nondecreasing".into()));
        }
        Ok(MonotoneFunction::PiecewiseLinear(pl))
    }

    pub fn domain(&self) -> (f64, f64) {
        match self {
            MonotoneFunction::ClosedForm { lo, hi, .. } => (*lo, *hi),
            MonotoneFunction::PiecewiseLinear(pl) => (pl.first(), pl.last()),
        }
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        let (lo, hi) = self.domain();
        if !(lo <= x && x <= hi) {
            return Err(Error::OutsideDomain { x, lo, hi });
        }
        let y = match self {
            MonotoneFunction::ClosedForm { g, .. } => g(x),
            MonotoneFunction::PiecewiseLinear(pl) => pl.interpolate(x),
        };
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::Evaluation { x, reason: format!("value {y} is not finite") })
        }
    }
}

impl fmt::Debug for MonotoneFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonotoneFunction::ClosedForm { name, lo, hi, .. } => write!(f, "{name} on [{lo}, {hi}]"),
            MonotoneFunction::PiecewiseLinear(pl) => write!(f, "nondecreasing piecewise linear with {} knots", pl.knots.len()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn piecewise_linear_positive() {
        let f = PositiveFunction::piecewise_linear(PiecewiseLinear::new(vec![0.1, 0.2, 0.4], vec![1.0, 3.0, 2.0]).unwrap())
            .unwrap();
        assert!((f.eval(0.15).unwrap() - 2.0).abs() < 1e-15);
        assert_eq!(f.eval(0.4).unwrap(), 2.0);
        assert!((f.eval(0.05).unwrap() - 0.5).abs() < 1e-15);
        assert!(matches!(f.eval(0.5), Err(Error::OutsideDomain { .. })));
        assert!(matches!(f.eval(0.0), Err(Error::OutsideDomain { .. })));
    }

    #[test]
    fn piecewise_linear_validation() {
        assert!(PiecewiseLinear::new(vec![0.1, 0.1], vec![1.0, 2.0]).is_err());
        assert!(PiecewiseLinear::new(vec![0.1], vec![1.0]).is_err());
        let pl = PiecewiseLinear::new(vec![0.1, 0.2], vec![1.0, -1.0]).unwrap();
        assert!(PositiveFunction::piecewise_linear(pl.clone()).is_err());
        assert!(MonotoneFunction::piecewise_linear(pl).is_err());
    }

    #[test]
    fn closed_form_rejects_nonpositive_values() {
        let f = PositiveFunction::closed_form("x-1", 2.0, |x| x - 1.0);
        assert!(f.eval(1.5).is_ok());
        assert!(matches!(f.eval(0.5), Err(Error::Evaluation { .. })));
    }

    #[test]
    fn monotone_domain() {
        let g = MonotoneFunction::piecewise_linear(PiecewiseLinear::new(vec![-1.0, 0.0, 1.0], vec![0.0, 0.0, 2.0]).unwrap())
            .unwrap();
        assert_eq!(g.eval(0.5).unwrap(), 1.0);
        assert!(matches!(g.eval(1.5), Err(Error::OutsideDomain { .. })));
    }
}
