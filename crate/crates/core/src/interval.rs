//! Closed intervals of doubles with outward rounding.
//!
//! Every operation rounds the lower endpoint down and the upper endpoint up
//! by a fixed number of ulps. Basic arithmetic widens by one ulp; libm
//! transcendental calls (`powf`, `tan`) widen by four, which covers their
//! documented error bounds.

use std::fmt;

use serde::{Deserialize, Serialize};

const ARITH_ULPS: u32 = 1;
const LIBM_ULPS: u32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

fn down(mut x: f64, ulps: u32) -> f64 {
    for _ in 0..ulps {
        x = x.next_down();
    }
    x
}

fn up(mut x: f64, ulps: u32) -> f64 {
    for _ in 0..ulps {
        x = x.next_up();
    }
    x
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(lo <= hi, "interval endpoints out of order: [{lo}, {hi}]");
        Interval { lo, hi }
    }

    /// Degenerate interval `[x, x]`; `x` is taken as exact.
    pub fn point(x: f64) -> Self {
        Interval { lo: x, hi: x }
    }

    /// Interval known to contain the real `x` given only its rounded value.
    pub fn around(x: f64) -> Self {
        Interval { lo: down(x, ARITH_ULPS), hi: up(x, ARITH_ULPS) }
    }

    pub fn unbounded_above(lo: f64) -> Self {
        Interval { lo, hi: f64::INFINITY }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn mid(&self) -> f64 {
        if self.hi.is_infinite() {
            self.hi
        } else {
            0.5 * (self.lo + self.hi)
        }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn is_positive(&self) -> bool {
        self.lo > 0.0
    }

    fn widened(lo: f64, hi: f64, ulps: u32) -> Self {
        Interval { lo: down(lo, ulps), hi: up(hi, ulps) }
    }

    pub fn mul(self, rhs: Interval) -> Interval {
        let products = [self.lo * rhs.lo, self.lo * rhs.hi, self.hi * rhs.lo, self.hi * rhs.hi];
        let lo = products.iter().copied().filter(|p| !p.is_nan()).fold(f64::INFINITY, f64::min);
        let hi = products.iter().copied().filter(|p| !p.is_nan()).fold(f64::NEG_INFINITY, f64::max);
        Self::widened(lo, hi, ARITH_ULPS)
    }

    /// Division by an interval bounded away from zero.
    pub fn div(self, rhs: Interval) -> Interval {
        assert!(rhs.lo > 0.0 || rhs.hi < 0.0, "division by an interval containing zero");
        let recip = Self::widened(1.0 / rhs.hi, 1.0 / rhs.lo, ARITH_ULPS);
        self.mul(recip)
    }

    /// `self^exponent` for a strictly positive base.
    pub fn powf(self, exponent: f64) -> Interval {
        assert!(self.lo > 0.0, "powf needs a positive base, got [{}, {}]", self.lo, self.hi);
        if exponent == 0.0 {
            return Interval::point(1.0);
        }
        let a = self.lo.powf(exponent);
        let b = self.hi.powf(exponent);
        Self::widened(a.min(b), a.max(b), LIBM_ULPS)
    }

    /// `tan` on an interval inside `(0, pi/2)`, where it is increasing.
    pub fn tan(self) -> Interval {
        assert!(
            self.lo > 0.0 && self.hi < std::f64::consts::FRAC_PI_2,
            "tan interval [{}, {}] leaves (0, pi/2)",
            self.lo,
            self.hi
        );
        Self::widened(self.lo.tan(), self.hi.tan(), LIBM_ULPS)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:.12}, {:.12}]", self.lo, self.hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn outward_rounding_encloses_exact_value() {
        // 0.1 * 3 is not exactly 0.3 in binary; the enclosure must still hold it.
        let x = Interval::around(0.1).mul(Interval::point(3.0));
        assert!(x.contains(0.3));
        assert!(x.lo() < x.hi());
    }

    #[test]
    fn tan_is_monotone_enclosure() {
        let t = Interval::point(std::f64::consts::FRAC_PI_4).tan();
        assert!(t.contains(1.0));
        assert!(t.width() < 1e-14);
    }

    #[test]
    fn powf_negative_exponent_swaps_ends() {
        let r = Interval::new(4.0, 9.0).powf(-0.5);
        assert!(r.lo() <= 1.0 / 3.0 && r.hi() >= 0.5);
    }

    #[test]
    fn division() {
        let q = Interval::point(1.0).div(Interval::point(3.0));
        assert!(q.contains(1.0 / 3.0));
    }
}
