//! JSON family specification files.
//!
//! ```json
//! {"name": "parabolas", "kind": "power_law",
//!  "coefficient": {"form": "power", "param": 1},
//!  "exponent": {"form": "constant", "param": 2}}
//! ```
//!
//! Unknown fields are rejected.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{BasicFamily, CoefficientForm, ExponentForm, PowerLawDescriptor, Rational};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("field `{field}`: {message}")]
    Invalid { field: String, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpecKind {
    PowerLaw,
    Disc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoefficientName {
    Power,
    Constant,
    Tangent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExponentName {
    Constant,
    HarmonicShift,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoefficientSpec {
    pub form: CoefficientName,
    pub param: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExponentSpec {
    pub form: ExponentName,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub param: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub kind: SpecKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficient: Option<CoefficientSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exponent: Option<ExponentSpec>,
}

fn invalid(field: &str, message: impl Into<String>) -> SpecError {
    SpecError::Invalid { field: field.to_string(), message: message.into() }
}

fn rational(field: &str, x: f64) -> Result<Rational, SpecError> {
    if !x.is_finite() {
        return Err(invalid(field, format!("{x} is not finite")));
    }
    let r = Rational::approximate_float(x).ok_or_else(|| invalid(field, format!("{x} has no rational form")))?;
    if (super::ratio_to_f64(r) - x).abs() > 1e-12 * x.abs().max(1.0) {
        return Err(invalid(field, format!("{x} is not a small rational")));
    }
    Ok(r)
}

impl FamilySpec {
    pub fn parse(text: &str) -> Result<Self, SpecError> {
        serde_json::from_str(text).map_err(|e| SpecError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn into_family(self) -> Result<BasicFamily, SpecError> {
        match self.kind {
            SpecKind::Disc => {
                if self.coefficient.is_some() {
                    return Err(invalid("coefficient", "disc families take no coefficient"));
                }
                if self.exponent.is_some() {
                    return Err(invalid("exponent", "disc families take no exponent"));
                }
                Ok(BasicFamily::discs())
            }
            SpecKind::PowerLaw => {
                let c = self.coefficient.ok_or_else(|| invalid("coefficient", "required for power_law"))?;
                let e = self.exponent.ok_or_else(|| invalid("exponent", "required for power_law"))?;
                let coefficient = match c.form {
                    CoefficientName::Power => CoefficientForm::Power { p: rational("coefficient.param", c.param)? },
                    CoefficientName::Constant => CoefficientForm::Constant { c: c.param },
                    CoefficientName::Tangent => CoefficientForm::Tangent { alpha: c.param },
                };
                let exponent = match (e.form, e.param) {
                    (ExponentName::Constant, Some(s)) => ExponentForm::Constant { s: rational("exponent.param", s)? },
                    (ExponentName::Constant, None) => return Err(invalid("exponent.param", "required for constant")),
                    (ExponentName::HarmonicShift, None) => ExponentForm::HarmonicShift,
                    (ExponentName::HarmonicShift, Some(_)) => {
                        return Err(invalid("exponent.param", "harmonic_shift takes no parameter"))
                    }
                };
                let name = self.name.unwrap_or_else(|| "power_law".to_string());
                BasicFamily::power_law(name, PowerLawDescriptor { coefficient, exponent })
                    .map_err(|e| invalid("coefficient", e.to_string()))
            }
        }
    }
}

/// Parses a family specification file into a family.
pub fn parse_family(text: &str) -> Result<BasicFamily, SpecError> {
    FamilySpec::parse(text)?.into_family()
}
