use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{ratio_to_f64, ProfileFunction, Rational};
use crate::error::{Error, Result};
use crate::interval::Interval;

/// How the coefficient `c_n` of `c_n |x|^{e_n}` depends on `n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum CoefficientForm {
    /// `c_n = n^p`
    Power { p: Rational },
    /// `c_n = c`
    Constant { c: f64 },
    /// `c_n = tan(alpha n / (n + 1))`
    Tangent { alpha: f64 },
}

/// How the exponent `e_n` depends on `n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum ExponentForm {
    /// `e_n = s`
    Constant { s: Rational },
    /// `e_n = (n + 1) / n`
    HarmonicShift,
}

impl CoefficientForm {
    pub fn at(&self, n: u32) -> f64 {
        match *self {
            CoefficientForm::Power { p } => (n as f64).powf(ratio_to_f64(p)),
            CoefficientForm::Constant { c } => c,
            CoefficientForm::Tangent { alpha } => (alpha * n as f64 / (n + 1) as f64).tan(),
        }
    }

    /// Outward-rounded enclosure of `c_n`.
    pub fn enclosure(&self, n: u32) -> Interval {
        match *self {
            CoefficientForm::Power { p } => {
                if *p.numer() == 0 {
                    Interval::point(1.0)
                } else {
                    Interval::point(n as f64).powf(ratio_to_f64(p))
                }
            }
            CoefficientForm::Constant { c } => Interval::point(c),
            CoefficientForm::Tangent { alpha } => Interval::point(alpha)
                .mul(Interval::point(n as f64))
                .div(Interval::point((n + 1) as f64))
                .tan(),
        }
    }

    /// `sup_n c_n` and whether some index attains it. `None` when unbounded.
    pub fn supremum(&self) -> Option<(f64, bool)> {
        match *self {
            CoefficientForm::Power { p } if *p.numer() > 0 => None,
            CoefficientForm::Power { .. } => Some((1.0, true)),
            CoefficientForm::Constant { c } => Some((c, true)),
            CoefficientForm::Tangent { alpha } => Some((alpha.tan(), false)),
        }
    }
}

impl ExponentForm {
    pub fn at(&self, n: u32) -> Rational {
        match *self {
            ExponentForm::Constant { s } => s,
            ExponentForm::HarmonicShift => Rational::new(n as i64 + 1, n as i64),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerLawDescriptor {
    pub coefficient: CoefficientForm,
    pub exponent: ExponentForm,
}

impl PowerLawDescriptor {
    pub fn profile(&self, n: u32) -> ProfileFunction {
        ProfileFunction::power_law(n, self.coefficient.at(n), self.exponent.at(n))
    }
}

/// Leading-order behaviour `scale * c_n * |x|^{e_n}` of `f_n` near 0.
///
/// Exact for power-law families (`scale = 1`); for discs it is `n x^2 / 2`,
/// which also bounds the disc profile from below.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Germ {
    pub scale: f64,
    pub descriptor: PowerLawDescriptor,
}

#[derive(Clone)]
pub enum FamilyKind {
    PowerLaw(PowerLawDescriptor),
    Disc,
    /// Image of the `power(s)` family under `(x, y) -> (x, y^{t/s})`.
    PowerImage { s: Rational, t: Rational },
    Custom {
        generator: Arc<dyn Fn(u32) -> ProfileFunction + Send + Sync>,
        germ: Option<Germ>,
    },
}

#[derive(Clone)]
pub struct BasicFamily {
    name: String,
    kind: FamilyKind,
}

impl fmt::Debug for BasicFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BasicFamily").field("name", &self.name).finish_non_exhaustive()
    }
}

impl fmt::Display for BasicFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl BasicFamily {
    pub fn power_law(name: impl Into<String>, descriptor: PowerLawDescriptor) -> Result<Self> {
        match descriptor.coefficient {
            CoefficientForm::Constant { c } if !(c > 0.0 && c.is_finite()) => {
                return Err(Error::Argument(format!("constant coefficient must be positive, got {c}")))
            }
            CoefficientForm::Tangent { alpha } if !(alpha > 0.0 && alpha < std::f64::consts::FRAC_PI_2) => {
                return Err(Error::Argument(format!("tangent angle must lie in (0, pi/2), got {alpha}")))
            }
            _ => {}
        }
        if let ExponentForm::Constant { s } = descriptor.exponent {
            if *s.numer() <= 0 {
                return Err(Error::Argument(format!("exponent must be positive, got {s}")));
            }
        }
        Ok(BasicFamily { name: name.into(), kind: FamilyKind::PowerLaw(descriptor) })
    }

    pub fn custom<G>(name: impl Into<String>, generator: G, germ: Option<Germ>) -> Self
    where
        G: Fn(u32) -> ProfileFunction + Send + Sync + 'static,
    {
        BasicFamily { name: name.into(), kind: FamilyKind::Custom { generator: Arc::new(generator), germ } }
    }

    /// `p_n(x) = n x^2` on `[-1/n, 1/n]`.
    pub fn parabolas() -> Self {
        BasicFamily {
            name: "parabolas".into(),
            kind: FamilyKind::PowerLaw(PowerLawDescriptor {
                coefficient: CoefficientForm::Power { p: Rational::from_integer(1) },
                exponent: ExponentForm::Constant { s: Rational::from_integer(2) },
            }),
        }
    }

    /// `n |x|^s` on `[-n^{-2/s}, n^{-2/s}]`.
    pub fn power(s: Rational) -> Result<Self> {
        Self::power_law(
            format!("power(s={s})"),
            PowerLawDescriptor {
                coefficient: CoefficientForm::Power { p: Rational::from_integer(1) },
                exponent: ExponentForm::Constant { s },
            },
        )
    }

    /// Triangles `|x| tan(alpha n / (n + 1))`, angle `alpha` in radians.
    pub fn triangles(alpha: f64) -> Result<Self> {
        Self::power_law(
            format!("triangles(alpha={alpha})"),
            PowerLawDescriptor {
                coefficient: CoefficientForm::Tangent { alpha },
                exponent: ExponentForm::Constant { s: Rational::from_integer(1) },
            },
        )
    }

    /// `w_n(x) = |x|^{(n+1)/n}` on `[-n^{-n/(n+1)}, n^{-n/(n+1)}]`.
    pub fn w() -> Self {
        BasicFamily {
            name: "w".into(),
            kind: FamilyKind::PowerLaw(PowerLawDescriptor {
                coefficient: CoefficientForm::Constant { c: 1.0 },
                exponent: ExponentForm::HarmonicShift,
            }),
        }
    }

    /// Tangent discs of radius `1/n`.
    pub fn discs() -> Self {
        BasicFamily { name: "discs".into(), kind: FamilyKind::Disc }
    }

    /// Images of `U(x, p_{s,n})` under `(x, y) -> (x, y^{t/s})`:
    /// coefficient `n^{t/s}`, exponent `t`, cap `n^{-t/s}`.
    pub fn power_image(s: Rational, t: Rational) -> Result<Self> {
        if *s.numer() <= 0 || *t.numer() <= 0 {
            return Err(Error::Argument(format!("power map needs s, t > 0, got s={s}, t={t}")));
        }
        Ok(BasicFamily { name: format!("power_image(s={s}, t={t})"), kind: FamilyKind::PowerImage { s, t } })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> &FamilyKind {
        &self.kind
    }

    pub fn power_law_descriptor(&self) -> Option<&PowerLawDescriptor> {
        match &self.kind {
            FamilyKind::PowerLaw(d) => Some(d),
            _ => None,
        }
    }

    pub fn profile(&self, n: u32) -> ProfileFunction {
        assert!(n >= 1, "family index starts at 1");
        match &self.kind {
            FamilyKind::PowerLaw(d) => d.profile(n),
            FamilyKind::Disc => ProfileFunction::disc(n),
            FamilyKind::PowerImage { s, t } => {
                let q = ratio_to_f64(*t / *s);
                ProfileFunction::power_region(n, (n as f64).powf(q), *t, (n as f64).powf(-q))
            }
            FamilyKind::Custom { generator, .. } => generator(n),
        }
    }

    pub fn germ(&self) -> Option<Germ> {
        match &self.kind {
            FamilyKind::PowerLaw(d) => Some(Germ { scale: 1.0, descriptor: *d }),
            FamilyKind::Disc => Some(Germ {
                scale: 0.5,
                descriptor: PowerLawDescriptor {
                    coefficient: CoefficientForm::Power { p: Rational::from_integer(1) },
                    exponent: ExponentForm::Constant { s: Rational::from_integer(2) },
                },
            }),
            FamilyKind::PowerImage { s, t } => Some(Germ {
                scale: 1.0,
                descriptor: PowerLawDescriptor {
                    coefficient: CoefficientForm::Power { p: *t / *s },
                    exponent: ExponentForm::Constant { s: *t },
                },
            }),
            FamilyKind::Custom { germ, .. } => *germ,
        }
    }
}
