//! Profile functions and the basic families built from them.
//!
//! A profile `f_n` is an even map `[-a_n, a_n] -> [0, cap]`, increasing on
//! `[0, a_n]`, with `f_n(0) = 0` and `f_n(a_n) = cap`. For basic families the
//! cap is `1/n`; the power-map images of the geometry module reuse the same
//! type with a different cap.

mod axioms;
mod family;
pub mod spec;

use std::fmt;
use std::sync::Arc;

use crate::bisect;
use crate::error::{Error, Result};

pub use axioms::{nested_closure_exact, verify_basic, Axiom, AxiomCheck, AxiomReport, Violation};
pub use family::{BasicFamily, CoefficientForm, ExponentForm, FamilyKind, Germ, PowerLawDescriptor};

/// Exact rational exponents.
pub type Rational = num_rational::Ratio<i64>;

/// Endpoint and domain slack for closed-form profiles.
pub const TOL_F: f64 = 1e-12;
/// Round-trip tolerance for `inverse(eval(x))`.
pub const TOL_INV: f64 = 1e-10;

pub(crate) fn ratio_to_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Parses `p/q`, an integer, or a decimal whose value is a small rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    if let Some((p, q)) = text.split_once('/') {
        let (p, q): (i64, i64) = (p.trim().parse().ok()?, q.trim().parse().ok()?);
        return (q != 0).then(|| Rational::new(p, q));
    }
    if let Ok(i) = text.parse::<i64>() {
        return Some(Rational::from_integer(i));
    }
    let x: f64 = text.parse().ok()?;
    let r = Rational::approximate_float(x)?;
    ((ratio_to_f64(r) - x).abs() <= 1e-12 * x.abs().max(1.0)).then_some(r)
}

/// Closed form (or black box) of the right branch `t >= 0` of a profile.
#[derive(Clone)]
pub enum Shape {
    /// `coefficient * t^exponent`.
    Power { coefficient: f64, exponent: Rational },
    /// Lower arc of the circle of the given radius tangent to the axis at 0.
    Disc { radius: f64 },
    /// Arbitrary increasing branch; inverted by bisection.
    Custom(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl fmt::Debug for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::Power { coefficient, exponent } => {
                write!(f, "Power({coefficient} * |x|^{exponent})")
            }
            Shape::Disc { radius } => write!(f, "Disc(r = {radius})"),
            Shape::Custom(_) => write!(f, "Custom"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ProfileFunction {
    index: u32,
    half_width: f64,
    cap: f64,
    shape: Shape,
}

impl ProfileFunction {
    /// `f_n(x) = c |x|^e` with the half-width chosen so that `f_n(a_n) = 1/n`.
    pub fn power_law(index: u32, coefficient: f64, exponent: Rational) -> Self {
        Self::power_region(index, coefficient, exponent, 1.0 / index as f64)
    }

    /// `c |x|^e` capped at an arbitrary height.
    pub fn power_region(index: u32, coefficient: f64, exponent: Rational, cap: f64) -> Self {
        assert!(index >= 1, "profile index starts at 1");
        assert!(coefficient > 0.0 && *exponent.numer() > 0, "power profile needs c > 0, e > 0");
        let half_width = (cap / coefficient).powf(1.0 / ratio_to_f64(exponent));
        ProfileFunction { index, half_width, cap, shape: Shape::Power { coefficient, exponent } }
    }

    /// `f_n(x) = 1/n - sqrt(1/n^2 - x^2)` on `[-1/n, 1/n]`.
    pub fn disc(index: u32) -> Self {
        assert!(index >= 1, "profile index starts at 1");
        let radius = 1.0 / index as f64;
        ProfileFunction { index, half_width: radius, cap: radius, shape: Shape::Disc { radius } }
    }

    /// A profile given by an increasing branch on `[0, half_width]` with cap `1/n`.
    pub fn custom<F>(index: u32, half_width: f64, branch: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        assert!(index >= 1, "profile index starts at 1");
        ProfileFunction {
            index,
            half_width,
            cap: 1.0 / index as f64,
            shape: Shape::Custom(Arc::new(branch)),
        }
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn cap(&self) -> f64 {
        self.cap
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    /// Right branch at `t >= 0`; the caller guarantees `t <= a_n + TOL_F`.
    pub(crate) fn branch(&self, t: f64) -> f64 {
        let t = t.min(self.half_width);
        match &self.shape {
            Shape::Power { coefficient, exponent } => {
                if t == 0.0 {
                    0.0
                } else {
                    coefficient * t.powf(ratio_to_f64(*exponent))
                }
            }
            // r - sqrt(r^2 - t^2) rewritten to avoid cancellation near 0
            Shape::Disc { radius } => {
                let root = ((radius - t) * (radius + t)).max(0.0).sqrt();
                t * t / (radius + root)
            }
            Shape::Custom(f) => f(t),
        }
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        let t = x.abs();
        if !(t <= self.half_width + TOL_F) {
            return Err(Error::Domain { x, half_width: self.half_width });
        }
        Ok(self.branch(t))
    }

    /// `f_n(x)` on its domain and `+inf` outside it.
    pub fn extended(&self, x: f64) -> f64 {
        let t = x.abs();
        if t <= self.half_width {
            self.branch(t)
        } else {
            f64::INFINITY
        }
    }

    /// The unique `x` in `[0, a_n]` with `f_n(x) = y`.
    pub fn inverse(&self, y: f64) -> Result<f64> {
        if !(y >= -TOL_F && y <= self.cap + TOL_F) {
            return Err(Error::Range { y, cap: self.cap });
        }
        let y = y.clamp(0.0, self.cap);
        let x = match &self.shape {
            Shape::Power { coefficient, exponent } => {
                if y == 0.0 {
                    0.0
                } else {
                    (y / coefficient).powf(1.0 / ratio_to_f64(*exponent))
                }
            }
            Shape::Disc { radius } => (y * (2.0 * radius - y)).max(0.0).sqrt(),
            Shape::Custom(_) => {
                bisect::solve_increasing(|t| self.branch(t), y, 0.0, self.half_width, TOL_F * 1e-3)?
            }
        };
        Ok(x.min(self.half_width))
    }
}
