//! The bounded component of `H \ (U(a, f_n) ∪ U(b, f_n))`.
//!
//! For intersecting neighbourhoods the component is
//! `C = {(u, w) : a < u < b, 0 <= w <= h(u)}` with roof
//! `h(u) = min(f̄(u - a), f̄(u - b))` and `f̄ = +inf` off the domain.
//! Arcs and the saddle point belong to `C`; the anchors `(a, 0)`, `(b, 0)`
//! do not, since they lie in the open neighbourhoods.

use serde::Serialize;

use super::{saddle_of, Point};
use crate::error::{Error, Result};
use crate::profile::{BasicFamily, ProfileFunction, TOL_INV};

#[derive(Debug, Clone)]
pub struct LensRegion {
    a: f64,
    b: f64,
    profile: ProfileFunction,
}

/// A lens point written as a saddle: `u = (c + d)/2`, `w = f_n((d - c)/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SaddleParams {
    pub u: f64,
    pub w: f64,
    pub c: f64,
    pub d: f64,
}

impl LensRegion {
    /// `a == b` is allowed and gives an empty lens.
    pub fn new(a: f64, b: f64, family: &BasicFamily, n: u32) -> Result<Self> {
        Self::from_profile(a, b, family.profile(n))
    }

    pub fn from_profile(a: f64, b: f64, profile: ProfileFunction) -> Result<Self> {
        if !(a <= b) {
            return Err(Error::Argument(format!("need a <= b, got a = {a}, b = {b}")));
        }
        Ok(LensRegion { a, b, profile })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn profile(&self) -> &ProfileFunction {
        &self.profile
    }

    pub fn intersecting(&self) -> bool {
        self.a < self.b && self.b - self.a < 2.0 * self.profile.half_width()
    }

    pub fn roof(&self, u: f64) -> f64 {
        self.profile.extended(u - self.a).min(self.profile.extended(u - self.b))
    }

    pub fn saddle(&self) -> Point {
        saddle_of(&self.profile, self.a, self.b)
    }
}

pub fn in_bounded_component(p: Point, lens: &LensRegion) -> bool {
    lens.intersecting() && lens.a < p.x && p.x < lens.b && 0.0 <= p.y && p.y <= lens.roof(p.x)
}

/// Recovers `c = u - f_n^{-1}(w)`, `d = u + f_n^{-1}(w)` for a lens point.
pub fn cd_parameters(u: f64, w: f64, lens: &LensRegion) -> Result<SaddleParams> {
    let profile = &lens.profile;
    if !in_bounded_component(Point::new(u, w), lens) || w > profile.cap() {
        return Err(Error::Membership { u, w });
    }
    let r = profile.inverse(w)?;
    let (c, d) = (u - r, u + r);
    if c < lens.a - TOL_INV || d > lens.b + TOL_INV {
        return Err(Error::Postcondition(format!("c = {c}, d = {d} leave [{}, {}]", lens.a, lens.b)));
    }
    let back = saddle_of(profile, c, d);
    if (back.x - u).abs() > TOL_INV || (back.y - w).abs() > TOL_INV {
        return Err(Error::Postcondition(format!("saddle of ({c}, {d}) is ({}, {})", back.x, back.y)));
    }
    Ok(SaddleParams { u, w, c, d })
}
