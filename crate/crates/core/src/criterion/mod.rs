//! Refutation of homeomorphy between spaces induced by power-law families.
//!
//! A homeomorphism between the spaces of `{p_n}` and `{t_n}` forces, for
//! some `δ -> 0` and some `γ` with `liminf γ <= 1`, that every `m > n` has a
//! `k` with
//!
//! ```text
//! t_1(δ(x)) <= t_k(p_m^{-1}(x) δ(x) γ(x) / p_n^{-1}(x))   for small x > 0.
//! ```
//!
//! For `t_k(z) = C_k |z|^E` (exponent independent of `k`) and
//! `p_j(x) = c_j |x|^{e_j}`, dividing by `t_1(δ)` cancels `δ`; with `γ = 1`
//! the right-hand side becomes
//!
//! ```text
//! A_k(x) = (C_k / C_1) Q^E x^{E (1/e_m - 1/e_n)},   Q = c_n^{1/e_n} / c_m^{1/e_m}.
//! ```
//!
//! If some `m` makes `limsup A_k < 1` for every `k`, then along a sequence
//! where `γ` stays close to its lower limit the inequality fails, and the
//! spaces cannot be homeomorphic.

mod probe;
mod refute;

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::profile::{ratio_to_f64, BasicFamily, CoefficientForm, ExponentForm, PowerLawDescriptor, Rational};

pub use probe::{numeric_ratio_probe, ProbeGrid, ProbeRow, ProbeTable};
pub use refute::{
    refute, refute_orientation, ClosureRule, FailureReason, Orientation, RefuteConfig, Verdict, VerdictReport, Witness,
    WitnessSummary,
};

/// `K x^E` with `K` known up to an interval and `E` exact.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExponentTerm {
    pub coefficient: Interval,
    #[serde(serialize_with = "serialize_ratio")]
    pub x_exponent: Rational,
}

pub(crate) fn serialize_ratio<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

impl ExponentTerm {
    pub fn mul(self, rhs: ExponentTerm) -> ExponentTerm {
        ExponentTerm { coefficient: self.coefficient.mul(rhs.coefficient), x_exponent: self.x_exponent + rhs.x_exponent }
    }

    pub fn div(self, rhs: ExponentTerm) -> ExponentTerm {
        ExponentTerm { coefficient: self.coefficient.div(rhs.coefficient), x_exponent: self.x_exponent - rhs.x_exponent }
    }

    /// Value at `x` using the coefficient midpoint.
    pub fn eval(&self, x: f64) -> f64 {
        self.coefficient.mid() * x.powf(ratio_to_f64(self.x_exponent))
    }
}

/// Which `k` the target index takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KSelector {
    Index(u32),
    /// Envelope over all `k`: the coefficient becomes `sup_k C_k / C_1`.
    Supremum,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "class", content = "bound")]
pub enum LimsupClass {
    Zero,
    Finite(Interval),
    Infinite,
}

impl fmt::Display for LimsupClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LimsupClass::Zero => f.write_str("0"),
            LimsupClass::Finite(iv) => write!(f, "finite {iv}"),
            LimsupClass::Infinite => f.write_str("+inf"),
        }
    }
}

/// Limit superior of `K x^E` as `x -> 0+`.
pub fn limsup_class(term: &ExponentTerm) -> LimsupClass {
    match term.x_exponent.cmp(&Rational::from_integer(0)) {
        std::cmp::Ordering::Greater => LimsupClass::Zero,
        std::cmp::Ordering::Equal => LimsupClass::Finite(term.coefficient),
        std::cmp::Ordering::Less => LimsupClass::Infinite,
    }
}

pub(crate) fn descriptor(family: &BasicFamily) -> Result<&PowerLawDescriptor> {
    family.power_law_descriptor().ok_or_else(|| Error::UnsupportedFamily(family.name().to_string()))
}

pub(crate) fn target_exponent(family: &BasicFamily) -> Result<Rational> {
    match descriptor(family)?.exponent {
        ExponentForm::Constant { s } => Ok(s),
        ExponentForm::HarmonicShift => Err(Error::UnsupportedTarget(family.name().to_string())),
    }
}

/// `c_j^{1/e_j}`, the reciprocal scale of `p_j^{-1}(x) = (x / c_j)^{1/e_j}`.
fn inverse_scale(d: &PowerLawDescriptor, j: u32) -> Interval {
    d.coefficient.enclosure(j).powf(1.0 / ratio_to_f64(d.exponent.at(j)))
}

/// `sup_k C_k / C_1`, or `[1, inf)` when the coefficients are unbounded.
fn coefficient_envelope(form: &CoefficientForm) -> Interval {
    let c1 = form.enclosure(1);
    match *form {
        CoefficientForm::Power { p } if *p.numer() > 0 => Interval::unbounded_above(1.0),
        CoefficientForm::Power { .. } | CoefficientForm::Constant { .. } => Interval::point(1.0),
        CoefficientForm::Tangent { alpha } => Interval::point(alpha).tan().div(c1),
    }
}

/// Normal form of the ratio `A_k(x)` for source `{p_n}` and target `{t_n}`.
pub fn exponent_ratio_term(
    source: &BasicFamily,
    target: &BasicFamily,
    n: u32,
    m: u32,
    k: KSelector,
) -> Result<ExponentTerm> {
    if !(1 <= n && n < m) {
        return Err(Error::Argument(format!("need 1 <= n < m, got n = {n}, m = {m}")));
    }
    let src = descriptor(source)?;
    let tgt = descriptor(target)?;
    let e = target_exponent(target)?;

    let q = inverse_scale(src, n).div(inverse_scale(src, m));
    let q_pow = q.powf(ratio_to_f64(e));
    let c_ratio = match k {
        KSelector::Index(k) => {
            if k == 0 {
                return Err(Error::Argument("k starts at 1".into()));
            }
            tgt.coefficient.enclosure(k).div(tgt.coefficient.enclosure(1))
        }
        KSelector::Supremum => coefficient_envelope(&tgt.coefficient),
    };
    let coefficient = if c_ratio.hi().is_infinite() {
        Interval::unbounded_above(c_ratio.lo() * q_pow.lo())
    } else {
        c_ratio.mul(q_pow)
    };
    let (e_n, e_m) = (src.exponent.at(n), src.exponent.at(m));
    let x_exponent = e * (e_m.recip() - e_n.recip());
    Ok(ExponentTerm { coefficient, x_exponent })
}
