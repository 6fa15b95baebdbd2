//! Bracketed bisection for monotone scalar equations.

use crate::error::{Error, Result};

/// Iteration cap shared by every bisection in the crate.
pub const MAX_ITERATIONS: usize = 200;

/// Solves `f(x) = target` on `[lo, hi]` for a nondecreasing `f` with
/// `f(lo) <= target <= f(hi)`.
///
/// Stops once `|f(x) - target| <= tol` or the bracket can no longer shrink.
pub fn solve_increasing<F>(f: F, target: f64, mut lo: f64, mut hi: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let f_lo = f(lo);
    let f_hi = f(hi);
    if !(f_lo <= target && target <= f_hi) {
        return Err(Error::NoRoot { upper: hi });
    }
    if (f_lo - target).abs() <= tol {
        return Ok(lo);
    }
    if (f_hi - target).abs() <= tol {
        return Ok(hi);
    }
    let mut best = (hi, (f_hi - target).abs());
    for _ in 0..MAX_ITERATIONS {
        let mid = lo + 0.5 * (hi - lo);
        if mid <= lo || mid >= hi {
            break;
        }
        let value = f(mid);
        let residual = (value - target).abs();
        if residual < best.1 {
            best = (mid, residual);
        }
        if residual <= tol {
            return Ok(mid);
        }
        if value < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(best.0)
}
