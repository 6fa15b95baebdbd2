use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use super::{descriptor, exponent_ratio_term, limsup_class, serialize_ratio, KSelector, LimsupClass};
use crate::error::{Error, Result};
use crate::geometry::{mutual_refinement, RefinementVerdict};
use crate::interval::Interval;
use crate::profile::{BasicFamily, CoefficientForm, ExponentForm, FamilyKind, Rational};

/// Search limits for [`refute`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RefuteConfig {
    pub n_max: u32,
    pub m_max: u32,
    /// A bounded coefficient must stay below `1 - margin`.
    pub margin: f64,
    /// Number of individual `k` reported per witness.
    pub k_report: u32,
}

impl Default for RefuteConfig {
    fn default() -> Self {
        RefuteConfig { n_max: 8, m_max: 64, margin: 1e-9, k_report: 4 }
    }
}

/// Largest `k` tried when locating the first coefficient that reaches `1 - margin`.
const K_SEARCH: u32 = 1024;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Orientation {
    pub source: String,
    pub target: String,
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.source, self.target)
    }
}

/// Argument that extends the finite `n` range to every `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosureRule {
    /// Tangent target coefficients with `sup_k C_k / C_1 = tan(alpha) / tan(alpha/2)` and a
    /// source `c_n = n^p`, `p > 0`, with constant exponent `s`: `Q^E = (n/m)^{pE/s}`, so
    /// `m > n (tan(alpha)/tan(alpha/2))^{s/(pE)}` works for every `n`.
    TangentTargetPowerSource,
    /// Source exponent `(n+1)/n` and constant target exponent `E > 0`: `m = n + 1` gives
    /// `x`-exponent `E/(n(n+1)) > 0` for every `n`.
    HarmonicSourcePositiveExponent,
}

impl ClosureRule {
    pub fn statement(&self) -> &'static str {
        match self {
            ClosureRule::TangentTargetPowerSource => {
                "Q^E = (n/m)^(pE/s) and sup_k C_k/C_1 = tan(alpha)/tan(alpha/2), so every n has an m with limsup < 1"
            }
            ClosureRule::HarmonicSourcePositiveExponent => {
                "m = n + 1 gives x-exponent E/(n(n+1)) > 0, so limsup = 0 for every n and k"
            }
        }
    }

    fn applies(source: &BasicFamily, target: &BasicFamily) -> Option<ClosureRule> {
        let (src, tgt) = (source.power_law_descriptor()?, target.power_law_descriptor()?);
        let target_constant = matches!(tgt.exponent, ExponentForm::Constant { .. });
        if let ExponentForm::Constant { s } = tgt.exponent {
            if matches!(src.exponent, ExponentForm::HarmonicShift) && s > Rational::from_integer(0) {
                return Some(ClosureRule::HarmonicSourcePositiveExponent);
            }
        }
        let tangent_target = matches!(tgt.coefficient, CoefficientForm::Tangent { .. });
        let power_source = matches!(src.coefficient, CoefficientForm::Power { p } if *p.numer() > 0);
        let constant_source = matches!(src.exponent, ExponentForm::Constant { .. });
        (target_constant && tangent_target && power_source && constant_source)
            .then_some(ClosureRule::TangentTargetPowerSource)
    }
}

/// An `m` for which `limsup A_k < 1` holds for every `k`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub n: u32,
    pub m: u32,
    #[serde(serialize_with = "serialize_ratio")]
    pub x_exponent: Rational,
    /// Enclosure of `sup_k` of the limit when the exponent is zero.
    pub uniform_bound: Option<Interval>,
    /// `limsup A_k` for the first few `k`.
    pub per_k: Vec<(u32, LimsupClass)>,
}

/// Why a specific `(n, m, k)` does not produce a contradiction.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FailureReason {
    pub orientation: Orientation,
    pub n: Option<u32>,
    pub m: Option<u32>,
    pub k: Option<u32>,
    pub reason: String,
}

impl fmt::Display for FailureReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.orientation)?;
        for (label, v) in [("n", self.n), ("m", self.m), ("k", self.k)] {
            if let Some(v) = v {
                write!(f, " {label}={v}")?;
            }
        }
        write!(f, ": {}", self.reason)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    NotHomeomorphic {
        orientation: Orientation,
        witnesses: Vec<Witness>,
        closure_rule: ClosureRule,
        proxies: Vec<String>,
    },
    /// No contradiction found. This is not a claim that the spaces are homeomorphic.
    Inconclusive { reasons: Vec<FailureReason>, proxies: Vec<String> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WitnessSummary {
    pub n: u32,
    pub m: u32,
}

/// Serializable summary of a [`Verdict`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerdictReport {
    pub verdict: &'static str,
    pub orientation: Option<Orientation>,
    pub witnesses: Vec<WitnessSummary>,
    pub closure_rule: Option<ClosureRule>,
    pub certificate_lines: Vec<String>,
}

impl Verdict {
    pub fn is_not_homeomorphic(&self) -> bool {
        matches!(self, Verdict::NotHomeomorphic { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::NotHomeomorphic { .. } => "not_homeomorphic",
            Verdict::Inconclusive { .. } => "inconclusive",
        }
    }

    /// Human-readable certificate, one claim per line.
    pub fn certificate_lines(&self) -> Vec<String> {
        let mut lines = Vec::new();
        match self {
            Verdict::NotHomeomorphic { orientation, witnesses, closure_rule, proxies } => {
                lines.push(format!("NOT HOMEOMORPHIC via {orientation}"));
                for p in proxies {
                    lines.push(format!("proxy: {p}"));
                }
                for w in witnesses {
                    let bound = match &w.uniform_bound {
                        Some(iv) => format!("sup_k limsup A_k in {iv} < 1"),
                        None => "limsup A_k = 0 for every k".to_string(),
                    };
                    lines.push(format!("n={} m={} x-exponent={}: {bound}", w.n, w.m, w.x_exponent));
                }
                lines.push(format!("closure: {}", closure_rule.statement()));
            }
            Verdict::Inconclusive { reasons, proxies } => {
                lines.push("INCONCLUSIVE: no contradiction found; this is not a homeomorphy claim".to_string());
                for p in proxies {
                    lines.push(format!("proxy: {p}"));
                }
                lines.extend(reasons.iter().map(|r| r.to_string()));
            }
        }
        lines
    }

    pub fn report(&self) -> VerdictReport {
        let (orientation, witnesses, closure_rule) = match self {
            Verdict::NotHomeomorphic { orientation, witnesses, closure_rule, .. } => (
                Some(orientation.clone()),
                witnesses.iter().map(|w| WitnessSummary { n: w.n, m: w.m }).collect(),
                Some(*closure_rule),
            ),
            Verdict::Inconclusive { .. } => (None, Vec::new(), None),
        };
        VerdictReport { verdict: self.label(), orientation, witnesses, closure_rule, certificate_lines: self.certificate_lines() }
    }

    fn with_proxies(mut self, notes: &[String]) -> Self {
        match &mut self {
            Verdict::NotHomeomorphic { proxies, .. } | Verdict::Inconclusive { proxies, .. } => {
                proxies.extend(notes.iter().cloned())
            }
        }
        self
    }
}

fn per_k_classes(source: &BasicFamily, target: &BasicFamily, n: u32, m: u32, k_report: u32) -> Result<Vec<(u32, LimsupClass)>> {
    (1..=k_report)
        .map(|k| Ok((k, limsup_class(&exponent_ratio_term(source, target, n, m, KSelector::Index(k))?))))
        .collect()
}

/// First `k` whose limit reaches `1 - margin` at exponent zero.
fn first_bad_k(source: &BasicFamily, target: &BasicFamily, n: u32, m: u32, margin: f64) -> Result<Option<u32>> {
    for k in 1..=K_SEARCH {
        let term = exponent_ratio_term(source, target, n, m, KSelector::Index(k))?;
        if term.coefficient.hi() >= 1.0 - margin {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

fn evaluate_pair(
    source: &BasicFamily,
    target: &BasicFamily,
    orientation: &Orientation,
    n: u32,
    m: u32,
    config: &RefuteConfig,
) -> Result<std::result::Result<Witness, FailureReason>> {
    let envelope = exponent_ratio_term(source, target, n, m, KSelector::Supremum)?;
    let fail = |k: Option<u32>, reason: String| FailureReason {
        orientation: orientation.clone(),
        n: Some(n),
        m: Some(m),
        k,
        reason,
    };
    let witness = |uniform_bound| -> Result<Witness> {
        Ok(Witness {
            n,
            m,
            x_exponent: envelope.x_exponent,
            uniform_bound,
            per_k: per_k_classes(source, target, n, m, config.k_report)?,
        })
    };
    Ok(match limsup_class(&envelope) {
        LimsupClass::Zero => Ok(witness(None)?),
        LimsupClass::Infinite => Err(fail(None, format!("x-exponent {} < 0, A_k -> inf for every k", envelope.x_exponent))),
        LimsupClass::Finite(iv) if iv.hi() < 1.0 - config.margin => Ok(witness(Some(iv))?),
        LimsupClass::Finite(iv) => {
            let k = first_bad_k(source, target, n, m, config.margin)?;
            let reason = match k {
                Some(k) => {
                    let c = exponent_ratio_term(source, target, n, m, KSelector::Index(k))?.coefficient;
                    format!("limsup A_k in {c} is not below 1 - margin")
                }
                None => format!("sup over k of limsup A_k in {iv} is not below 1 - margin"),
            };
            Err(fail(k, reason))
        }
    })
}

/// Searches, for every `n <= n_max`, the smallest `m` in `(n, m_max]` with
/// `limsup A_k < 1` for every `k`, treating `source` as the domain family.
pub fn refute_orientation(source: &BasicFamily, target: &BasicFamily, config: &RefuteConfig) -> Result<Verdict> {
    if config.n_max == 0 || config.m_max <= config.n_max {
        return Err(Error::Argument(format!("need 1 <= n_max < m_max, got {} and {}", config.n_max, config.m_max)));
    }
    if !(config.margin >= 0.0 && config.margin < 1.0) {
        return Err(Error::Argument(format!("margin must lie in [0, 1), got {}", config.margin)));
    }
    descriptor(source)?;
    super::target_exponent(target)?;
    let orientation = Orientation { source: source.name().to_string(), target: target.name().to_string() };

    let per_n: Vec<std::result::Result<Witness, Vec<FailureReason>>> = (1..=config.n_max)
        .into_par_iter()
        .map(|n| {
            let mut reasons = Vec::new();
            for m in n + 1..=config.m_max {
                match evaluate_pair(source, target, &orientation, n, m, config)? {
                    Ok(w) => return Ok(Ok(w)),
                    Err(r) => reasons.push(r),
                }
            }
            Ok(Err(reasons))
        })
        .collect::<Result<_>>()?;

    let mut witnesses = Vec::new();
    let mut reasons = Vec::new();
    for outcome in per_n {
        match outcome {
            Ok(w) => witnesses.push(w),
            Err(r) => reasons.extend(r),
        }
    }
    if !reasons.is_empty() {
        return Ok(Verdict::Inconclusive { reasons, proxies: Vec::new() });
    }
    match ClosureRule::applies(source, target) {
        Some(closure_rule) => Ok(Verdict::NotHomeomorphic { orientation, witnesses, closure_rule, proxies: Vec::new() }),
        None => Ok(Verdict::Inconclusive {
            reasons: vec![FailureReason {
                orientation,
                n: None,
                m: None,
                k: None,
                reason: format!("witnesses exist for n <= {} but no rule extends them to every n", config.n_max),
            }],
            proxies: Vec::new(),
        }),
    }
}

/// Replaces a family without a power-law description by an equivalent one.
fn resolve(family: &BasicFamily, config: &RefuteConfig) -> Result<(BasicFamily, Option<String>)> {
    match family.kind() {
        FamilyKind::PowerLaw(_) => Ok((family.clone(), None)),
        FamilyKind::Disc => {
            let parabolas = BasicFamily::parabolas();
            let k_max = 4 * config.n_max.max(2);
            let report = mutual_refinement(family, &parabolas, config.n_max, k_max);
            if report.verdict != RefinementVerdict::Equivalent {
                return Err(Error::UnsupportedFamily(family.name().to_string()));
            }
            let note = format!(
                "{} replaced by {} (mutual refinement verified for n <= {}, k <= {})",
                family.name(),
                parabolas.name(),
                config.n_max,
                k_max
            );
            Ok((parabolas, Some(note)))
        }
        _ => Err(Error::UnsupportedFamily(family.name().to_string())),
    }
}

/// Tries both orientations and reports the first contradiction found.
pub fn refute(a: &BasicFamily, b: &BasicFamily, config: &RefuteConfig) -> Result<Verdict> {
    let (ra, note_a) = resolve(a, config)?;
    let (rb, note_b) = resolve(b, config)?;
    let proxies: Vec<String> = note_a.into_iter().chain(note_b).collect();

    let mut reasons = Vec::new();
    for (source, target) in [(&ra, &rb), (&rb, &ra)] {
        match refute_orientation(source, target, config) {
            Ok(v @ Verdict::NotHomeomorphic { .. }) => return Ok(v.with_proxies(&proxies)),
            Ok(Verdict::Inconclusive { reasons: r, .. }) => reasons.extend(r),
            Err(Error::UnsupportedTarget(name)) => reasons.push(FailureReason {
                orientation: Orientation { source: source.name().to_string(), target: target.name().to_string() },
                n: None,
                m: None,
                k: None,
                reason: format!("target {name} has an index-dependent exponent"),
            }),
            Err(e) => return Err(e),
        }
    }
    Ok(Verdict::Inconclusive { reasons, proxies })
}
