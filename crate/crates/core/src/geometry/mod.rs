//! Neighbourhoods `U(x0, f_n)` on the closed upper half-plane and the
//! constructions built on pairs of them.

mod lens;
mod power_map;
mod raster;
mod refine;
pub mod svg;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::profile::{BasicFamily, ProfileFunction};

pub use lens::{cd_parameters, in_bounded_component, LensRegion, SaddleParams};
pub use power_map::{power_map_image, power_map_point};
pub use raster::{raster_components, Agreement, RasterLabels};
pub use refine::{
    containment, mutual_refinement, neighborhood_contained, Containment, DirectionEntry, DirectionOutcome,
    RefinementReport, RefinementVerdict,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }
}

/// The set `U(x0, f_n) = {(x0, 0)} ∪ {(x, y) : |x - x0| <= a_n, f_n(x - x0) < y < cap}`.
#[derive(Debug, Clone)]
pub struct Neighborhood {
    anchor: f64,
    profile: ProfileFunction,
}

impl Neighborhood {
    pub fn new(family: &BasicFamily, n: u32, anchor: f64) -> Self {
        Neighborhood { anchor, profile: family.profile(n) }
    }

    pub fn from_profile(profile: ProfileFunction, anchor: f64) -> Self {
        Neighborhood { anchor, profile }
    }

    pub fn anchor(&self) -> f64 {
        self.anchor
    }

    pub fn profile(&self) -> &ProfileFunction {
        &self.profile
    }

    pub fn index(&self) -> u32 {
        self.profile.index()
    }

    /// Membership with exact floating comparisons; no tolerance slack.
    pub fn contains(&self, p: Point) -> Result<bool> {
        if p.y < 0.0 {
            return Err(Error::Argument(format!("point ({}, {}) is below the boundary line", p.x, p.y)));
        }
        Ok(self.contains_unchecked(p))
    }

    pub(crate) fn contains_unchecked(&self, p: Point) -> bool {
        if p.x == self.anchor && p.y == 0.0 {
            return true;
        }
        let floor = self.profile.extended(p.x - self.anchor);
        floor < p.y && p.y < self.profile.cap()
    }
}

/// `U(a, f_n) ∩ U(b, f_n) ≠ ∅`, which holds exactly when `b - a < 2 a_n`.
///
/// Over the column `x = (a + b)/2` both floors equal `f_n((b - a)/2)`, and
/// every other column has a larger maximum of the two floors, so the sets
/// meet iff that value is below the cap.
pub fn neighborhoods_intersect(a: f64, b: f64, family: &BasicFamily, n: u32) -> Result<bool> {
    if !(a < b) {
        return Err(Error::Argument(format!("need a < b, got a = {a}, b = {b}")));
    }
    Ok(b - a < 2.0 * family.profile(n).half_width())
}

/// `((c + d)/2, f_n((d - c)/2))` for `c <= d` within `2 a_n`.
pub(crate) fn saddle_of(profile: &ProfileFunction, c: f64, d: f64) -> Point {
    Point::new(0.5 * (c + d), profile.extended(0.5 * (d - c)))
}

/// Highest point of the lens, lowest point of `cl U(a) ∩ cl U(b)`.
pub fn saddle_point(a: f64, b: f64, family: &BasicFamily, n: u32) -> Result<Point> {
    if !neighborhoods_intersect(a, b, family, n)? {
        return Err(Error::Precondition(format!("U({a}, f_{n}) and U({b}, f_{n}) do not intersect")));
    }
    Ok(saddle_of(&family.profile(n), a, b))
}
