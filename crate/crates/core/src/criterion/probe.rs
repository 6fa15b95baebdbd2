use serde::Serialize;

use super::{exponent_ratio_term, KSelector};
use crate::error::{Error, Result};
use crate::profile::BasicFamily;

/// Geometric sample points `x_j = x0 ratio^j`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProbeGrid {
    pub x0: f64,
    pub ratio: f64,
    pub points: usize,
}

impl Default for ProbeGrid {
    fn default() -> Self {
        ProbeGrid { x0: 1e-3, ratio: 0.5, points: 40 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProbeRow {
    pub x: f64,
    pub numeric: f64,
    pub predicted: f64,
    pub relative_deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeTable {
    pub source: String,
    pub target: String,
    pub n: u32,
    pub m: u32,
    pub k: u32,
    pub rows: Vec<ProbeRow>,
    pub max_relative_deviation: f64,
}

/// Evaluates `t_k(p_m^{-1}(x) δ / p_n^{-1}(x)) / t_1(δ)` with `δ = p_n^{-1}(x)` through
/// the profile functions themselves and compares it with the closed-form term.
pub fn numeric_ratio_probe(
    source: &BasicFamily,
    target: &BasicFamily,
    n: u32,
    m: u32,
    k: u32,
    grid: &ProbeGrid,
) -> Result<ProbeTable> {
    if m <= n {
        return Err(Error::Argument(format!("need m > n, got n = {n}, m = {m}")));
    }
    if !(grid.x0 > 0.0 && grid.ratio > 0.0 && grid.ratio < 1.0 && grid.points > 0) {
        return Err(Error::Argument("probe grid needs x0 > 0, ratio in (0, 1) and at least one point".into()));
    }
    let term = exponent_ratio_term(source, target, n, m, KSelector::Index(k))?;
    let (pn, pm) = (source.profile(n), source.profile(m));
    let (tk, t1) = (target.profile(k), target.profile(1));

    let mut rows = Vec::with_capacity(grid.points);
    let mut x = grid.x0;
    for _ in 0..grid.points {
        let delta = pn.inverse(x)?;
        let z = pm.inverse(x)? * delta / pn.inverse(x)?;
        let numeric = tk.eval(z)? / t1.eval(delta)?;
        let predicted = term.eval(x);
        if !(numeric.is_finite() && predicted.is_finite() && predicted > 0.0) {
            return Err(Error::Evaluation { x, reason: format!("ratio {numeric} vs prediction {predicted}") });
        }
        rows.push(ProbeRow { x, numeric, predicted, relative_deviation: (numeric - predicted).abs() / predicted });
        x *= grid.ratio;
    }
    let max_relative_deviation = rows.iter().map(|r| r.relative_deviation).fold(0.0, f64::max);
    Ok(ProbeTable {
        source: source.name().to_string(),
        target: target.name().to_string(),
        n,
        m,
        k,
        rows,
        max_relative_deviation,
    })
}
