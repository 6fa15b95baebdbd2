use serde::Serialize;

use super::{GeometricGrid, LiminfEstimate, PositiveFunction, TOL_LIM};
use crate::bisect::solve_increasing;
use crate::error::{Error, Result};
use crate::profile::TOL_INV;

/// Tail values must fall below this fraction of the leading values to count as tending to 0.
pub const TAIL_FACTOR: f64 = 1e-2;

/// The descent sequence stops once a term falls below this value.
pub const DESCENT_FLOOR: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuotientCheck {
    pub estimate: LiminfEstimate,
    pub holds: bool,
}

fn check_tends_to_zero(label: &str, values: &[f64], window: usize) -> Result<()> {
    let head = values[..window].iter().copied().fold(0.0, f64::max);
    let tail = values[values.len() - window..].iter().copied().fold(0.0, f64::max);
    if tail < TAIL_FACTOR * head {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{label} does not tend to 0 on the grid (head {head:e}, tail {tail:e})")))
    }
}

/// Estimates `liminf h(φ(x)) / h(ψ(x))` and tests it against `1 + TOL_LIM`.
pub fn quotient_bound_check(
    h: &PositiveFunction,
    phi: &PositiveFunction,
    psi: &PositiveFunction,
    grid: &GeometricGrid,
) -> Result<QuotientCheck> {
    grid.validate()?;
    let points = grid.points();
    let mut psi_values = Vec::with_capacity(points.len());
    let mut h_psi = Vec::with_capacity(points.len());
    let mut retained = Vec::with_capacity(points.len());
    for &x in &points {
        let (p, q) = (phi.eval(x)?, psi.eval(x)?);
        if p > q {
            return Err(Error::Precondition(format!("phi({x:e}) = {p:e} exceeds psi({x:e}) = {q:e}")));
        }
        let (hp, hq) = (h.eval(p)?, h.eval(q)?);
        psi_values.push(q);
        h_psi.push(hq);
        retained.push((x, hp / hq));
    }
    let window = grid.window_size();
    check_tends_to_zero("psi", &psi_values, window)?;
    check_tends_to_zero("h", &h_psi, window)?;
    let estimate = LiminfEstimate::from_samples(*grid, retained)?;
    let holds = estimate.value <= 1.0 + TOL_LIM;
    Ok(QuotientCheck { estimate, holds })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DescentSequence {
    pub terms: Vec<f64>,
    /// `|ψ(x_{k+1}) - φ(x_k)|` for each step.
    pub residuals: Vec<f64>,
}

/// `x_{k+1} ∈ (0, x_k)` with `ψ(x_{k+1}) = φ(x_k)`, solved by bisection.
///
/// A bracket is found by halving from `x_k` until `ψ` drops to the target.
/// Stops after `count` terms or once a term is below [`DESCENT_FLOOR`].
pub fn descent_sequence(phi: &PositiveFunction, psi: &PositiveFunction, x0: f64, count: usize) -> Result<DescentSequence> {
    if count == 0 {
        return Err(Error::Argument("the sequence needs at least one term".into()));
    }
    let mut terms = vec![x0];
    let mut residuals = Vec::new();
    let mut x = x0;
    while terms.len() < count && x >= DESCENT_FLOOR {
        let (target, at_x) = (phi.eval(x)?, psi.eval(x)?);
        if !(target < at_x) {
            return Err(Error::Precondition(format!("need phi < psi, got phi({x:e}) = {target:e} >= psi = {at_x:e}")));
        }
        let mut hi = x;
        let mut lo = 0.5 * x;
        while psi.eval(lo)? > target {
            hi = lo;
            lo *= 0.5;
            if lo < f64::MIN_POSITIVE {
                return Err(Error::NoRoot { upper: x });
            }
        }
        let eval = |t: f64| psi.eval(t).unwrap_or(f64::NAN);
        let next = solve_increasing(eval, target, lo, hi, TOL_INV * target)?;
        if !(next < x) {
            return Err(Error::Postcondition(format!("descent did not decrease at {x:e}")));
        }
        residuals.push((psi.eval(next)? - target).abs());
        terms.push(next);
        x = next;
    }
    Ok(DescentSequence { terms, residuals })
}
