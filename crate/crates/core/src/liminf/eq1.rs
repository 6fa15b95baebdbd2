use serde::Serialize;

use super::{GeometricGrid, LiminfEstimate, MonotoneFunction, PositiveFunction, TOL_LIM};
use crate::error::{Error, Result};

/// Offsets `r < RESOLUTION |u|` are skipped: `g(u + r) - g(u - r)` would be dominated by
/// rounding in `u ± r`.
pub const RESOLUTION: f64 = 1e-7;

/// `I(u, r, w) = (g(u + r(w)) - g(u - r(w))) / (2 r(w))`.
pub fn derivative_quotient(g: &MonotoneFunction, u: f64, r: &PositiveFunction, w: f64) -> Result<f64> {
    let rw = r.eval(w)?;
    difference_quotient(g, u, rw)
}

fn difference_quotient(g: &MonotoneFunction, u: f64, r: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::Precondition(format!("offset must be positive, got {r}")));
    }
    Ok((g.eval(u + r)? - g.eval(u - r)?) / (2.0 * r))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Eq1Check {
    pub estimate: LiminfEstimate,
    pub holds: bool,
    /// Samples whose `ψ`-quotient vanished.
    pub degenerate: usize,
    /// Samples whose offsets fell below the resolution limit.
    pub unresolved: usize,
    /// More than half of the samples were skipped.
    pub low_confidence: bool,
}

impl Eq1Check {
    pub fn skipped(&self) -> usize {
        self.degenerate + self.unresolved
    }
}

/// Estimates `liminf_{h -> 0} I(u, φ, h) / I(u, ψ, h)`.
pub fn eq1_check(
    g: &MonotoneFunction,
    u: f64,
    phi: &PositiveFunction,
    psi: &PositiveFunction,
    grid: &GeometricGrid,
) -> Result<Eq1Check> {
    grid.validate()?;
    let points = grid.points();
    let floor = RESOLUTION * u.abs();
    let (mut degenerate, mut unresolved) = (0, 0);
    let mut retained = Vec::with_capacity(points.len());
    for &h in &points {
        let (p, q) = (phi.eval(h)?, psi.eval(h)?);
        if p > q {
            return Err(Error::Precondition(format!("phi({h:e}) = {p:e} exceeds psi({h:e}) = {q:e}")));
        }
        if p < floor || q < floor {
            unresolved += 1;
            continue;
        }
        let (ip, iq) = (difference_quotient(g, u, p)?, difference_quotient(g, u, q)?);
        if ip < 0.0 || iq < 0.0 {
            return Err(Error::Precondition(format!("g decreases near u = {u} at offset {h:e}")));
        }
        if iq == 0.0 {
            degenerate += 1;
            continue;
        }
        retained.push((h, ip / iq));
    }
    if retained.is_empty() && degenerate > 0 && unresolved == 0 {
        return Err(Error::AllDegenerate);
    }
    let estimate = LiminfEstimate::from_samples(*grid, retained)?;
    let holds = estimate.value <= 1.0 + TOL_LIM;
    let low_confidence = 2 * (degenerate + unresolved) > points.len();
    Ok(Eq1Check { estimate, holds, degenerate, unresolved, low_confidence })
}
