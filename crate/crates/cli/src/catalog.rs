//! Command-line names for families and functions.

use std::f64::consts::FRAC_PI_4;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use niemytzki_lab::liminf::{MonotoneFunction, PositiveFunction};
use niemytzki_lab::profile::{parse_rational, spec::parse_family, verify_basic, BasicFamily};

/// Index range and grid of the automatic axiom check on parsed families.
pub const AUTO_VERIFY_N_MAX: u32 = 8;
pub const AUTO_VERIFY_GRID: usize = 2000;

/// Parses a builtin family name or a JSON spec file.
///
/// Builtins: `parabolas`, `disc`/`discs`, `w`, `power:s=R`, `triangles[:alpha=A]`.
pub fn builtin_or_file(arg: &str) -> Result<BasicFamily> {
    let (name, param) = match arg.split_once(':') {
        Some((name, param)) => (name, Some(param)),
        None => (arg, None),
    };
    let value = |key: &str| -> Result<&str> {
        let param = param.ok_or_else(|| anyhow!("family {name} needs {key}=..."))?;
        param
            .strip_prefix(key)
            .and_then(|rest| rest.strip_prefix('='))
            .ok_or_else(|| anyhow!("family {name}: expected {key}=..., got {param}"))
    };
    let family = match name {
        "parabolas" if param.is_none() => BasicFamily::parabolas(),
        "disc" | "discs" if param.is_none() => BasicFamily::discs(),
        "w" if param.is_none() => BasicFamily::w(),
        "power" => {
            let s = value("s")?;
            BasicFamily::power(parse_rational(s).ok_or_else(|| anyhow!("power exponent {s} is not a rational"))?)?
        }
        "triangles" => {
            let alpha = match param {
                None => FRAC_PI_4,
                Some(_) => value("alpha")?.parse().with_context(|| format!("triangles angle in {arg}"))?,
            };
            BasicFamily::triangles(alpha)?
        }
        _ if Path::new(arg).is_file() => {
            let text = std::fs::read_to_string(arg).with_context(|| format!("reading {arg}"))?;
            parse_family(&text).map_err(|e| anyhow!("{arg}: {e}"))?
        }
        _ => bail!("unknown family {arg}: not a builtin and not a spec file"),
    };
    Ok(family)
}

/// Parses a family and, unless `verify` is false, checks the axioms on a small range.
pub fn family(arg: &str, verify: bool) -> Result<BasicFamily> {
    let family = builtin_or_file(arg)?;
    if verify {
        let report = verify_basic(&family, AUTO_VERIFY_N_MAX, AUTO_VERIFY_GRID)?;
        if let Some(failed) = report.checks.iter().find(|c| !c.passed) {
            let detail = failed.first_violation.as_ref().map(|v| v.detail.clone()).unwrap_or_default();
            bail!("family {} fails axiom {:?}: {detail}", family.name(), failed.axiom);
        }
    }
    Ok(family)
}

fn number(text: &str) -> Result<f64> {
    text.parse().with_context(|| format!("expected a number, got {text}"))
}

/// `C*x^P`, `x^P`, `x` or a constant; `h` may stand for `x`.
fn power_term(text: &str) -> Result<(f64, f64)> {
    let (c, rest) = match text.split_once('*') {
        Some((c, rest)) => (number(c)?, rest),
        None if text != "x" && !text.starts_with("x^") => return Ok((number(text)?, 0.0)),
        None => (1.0, text),
    };
    let p = match rest {
        "x" => 1.0,
        _ => number(rest.strip_prefix("x^").ok_or_else(|| anyhow!("expected x or x^P, got {rest}"))?)?,
    };
    Ok((c, p))
}

fn normalized(text: &str) -> String {
    text.chars().filter(|c| !c.is_whitespace()).map(|c| if c == 'h' { 'x' } else { c }).collect()
}

/// Positive functions: `2+sin(1/x)` or `C*x^P`, `x^P`, `x`, a constant.
pub fn positive_function(text: &str) -> Result<PositiveFunction> {
    let norm = normalized(text);
    if norm == "2+sin(1/x)" {
        return Ok(PositiveFunction::closed_form(text, f64::INFINITY, |x| 2.0 + (1.0 / x).sin()));
    }
    let (c, p) = power_term(&norm).with_context(|| format!("unknown positive function {text}"))?;
    if !(c > 0.0) {
        bail!("positive function {text} needs a positive coefficient");
    }
    Ok(PositiveFunction::closed_form(text, f64::INFINITY, move |x| c * x.powf(p)))
}

/// Nondecreasing functions on the real line: `x`, `x^P` (odd extension), `exp-1`, `arctan`.
pub fn monotone_function(text: &str) -> Result<MonotoneFunction> {
    let norm = normalized(text);
    let (lo, hi) = (f64::NEG_INFINITY, f64::INFINITY);
    Ok(match norm.as_str() {
        "exp-1" => MonotoneFunction::closed_form(text, lo, hi, f64::exp_m1),
        "arctan" => MonotoneFunction::closed_form(text, lo, hi, f64::atan),
        _ => {
            let (c, p) = power_term(&norm).with_context(|| format!("unknown monotone function {text}"))?;
            if !(c >= 0.0 && p > 0.0) {
                bail!("monotone function {text} needs C >= 0 and P > 0");
            }
            MonotoneFunction::closed_form(text, lo, hi, move |x| c * x.signum() * x.abs().powf(p))
        }
    })
}
