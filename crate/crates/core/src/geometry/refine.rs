//! Containment between anchored neighbourhoods and refinement of bases.
//!
//! `U(0, g) ⊆ U(0, f)` holds iff `cap_g <= cap_f`, `a_g <= a_f` and
//! `f(x) <= g(x)` on `[0, a_g]`: each column `x` of `U(0, g)` is the open
//! interval `(g(x), cap_g)`, which sits inside `(f(x), cap_f)` exactly under
//! those three conditions.

use std::cmp::Ordering;

use serde::Serialize;

use super::Neighborhood;
use crate::error::{Error, Result};
use crate::profile::{
    ratio_to_f64, BasicFamily, ExponentForm, Germ, ProfileFunction, Shape, TOL_F,
};

/// Relative slack when comparing two profile values.
const REL_TOL: f64 = 1e-10;
const UNIFORM_SAMPLES: usize = 2048;
const GEOMETRIC_SAMPLES: i32 = 60;
const REFINE_ROUNDS: usize = 3;
const REFINE_SAMPLES: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Containment {
    Contained,
    CapTooHigh,
    TooWide,
    /// `f_outer(x) > f_inner(x)` at this abscissa.
    ProfileBelow { x: f64 },
}

impl Containment {
    pub fn holds(&self) -> bool {
        matches!(self, Containment::Contained)
    }
}

fn leq(a: f64, b: f64) -> bool {
    a <= b + TOL_F * b.abs().max(1.0)
}

fn exceeds(outer: f64, inner: f64) -> bool {
    outer > inner * (1.0 + REL_TOL)
}

/// Containment `U(0, inner) ⊆ U(0, outer)` of anchored profile neighbourhoods.
pub fn containment(inner: &ProfileFunction, outer: &ProfileFunction) -> Containment {
    if !leq(inner.cap(), outer.cap()) {
        return Containment::CapTooHigh;
    }
    if !leq(inner.half_width(), outer.half_width()) {
        return Containment::TooWide;
    }
    match (inner.shape(), outer.shape()) {
        (
            Shape::Power { coefficient: c_in, exponent: e_in },
            Shape::Power { coefficient: c_out, exponent: e_out },
        ) => {
            // outer / inner = (c_out / c_in) x^{e_out - e_in} is monotone in x
            let a = inner.half_width();
            match e_out.cmp(e_in) {
                Ordering::Less => {
                    // ratio exceeds 1 below x* = (c_in / c_out)^{1/(e_out - e_in)}
                    let d = ratio_to_f64(*e_out - *e_in);
                    let x_star = (c_in / c_out).powf(1.0 / d);
                    Containment::ProfileBelow { x: 0.5 * x_star.min(a) }
                }
                Ordering::Equal if exceeds(*c_out, *c_in) => Containment::ProfileBelow { x: a },
                Ordering::Equal => Containment::Contained,
                Ordering::Greater => {
                    if exceeds(c_out * a.powf(ratio_to_f64(*e_out)), c_in * a.powf(ratio_to_f64(*e_in))) {
                        Containment::ProfileBelow { x: a }
                    } else {
                        Containment::Contained
                    }
                }
            }
        }
        _ => sampled_profile_check(inner, outer),
    }
}

fn sampled_profile_check(inner: &ProfileFunction, outer: &ProfileFunction) -> Containment {
    let a = inner.half_width();
    let slack = |x: f64| {
        let (fi, fo) = (inner.branch(x), outer.branch(x));
        if exceeds(fo, fi) {
            Err(x)
        } else if fi > 0.0 {
            Ok((fi - fo) / fi)
        } else {
            Ok(f64::INFINITY)
        }
    };

    let mut samples: Vec<f64> = (1..=UNIFORM_SAMPLES).map(|i| a * i as f64 / UNIFORM_SAMPLES as f64).collect();
    samples.extend((1..=GEOMETRIC_SAMPLES).map(|j| a * 2f64.powi(-j)));
    samples.sort_by(f64::total_cmp);

    let mut best = (f64::INFINITY, 0usize);
    for (i, &x) in samples.iter().enumerate() {
        match slack(x) {
            Err(x) => return Containment::ProfileBelow { x },
            Ok(s) if s < best.0 => best = (s, i),
            Ok(_) => {}
        }
    }

    // zoom in around the closest approach
    let (mut lo, mut hi) = (
        samples[best.1.saturating_sub(1)],
        samples[(best.1 + 1).min(samples.len() - 1)],
    );
    for _ in 0..REFINE_ROUNDS {
        let mut local = (f64::INFINITY, lo);
        for i in 0..=REFINE_SAMPLES {
            let x = lo + (hi - lo) * i as f64 / REFINE_SAMPLES as f64;
            if x <= 0.0 {
                continue;
            }
            match slack(x) {
                Err(x) => return Containment::ProfileBelow { x },
                Ok(s) if s < local.0 => local = (s, x),
                Ok(_) => {}
            }
        }
        let step = (hi - lo) / REFINE_SAMPLES as f64;
        lo = (local.1 - step).max(0.0);
        hi = (local.1 + step).min(a);
    }
    Containment::Contained
}

pub fn neighborhood_contained(inner: &Neighborhood, outer: &Neighborhood) -> Result<bool> {
    if inner.anchor() != outer.anchor() {
        return Err(Error::AnchorMismatch { inner: inner.anchor(), outer: outer.anchor() });
    }
    Ok(containment(inner.profile(), outer.profile()).holds())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RefinementVerdict {
    Equivalent,
    AFiner,
    BFiner,
    Incomparable,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum DirectionOutcome {
    /// Smallest `k <= k_max` with a contained neighbourhood.
    Witness { k: u32 },
    /// No index at all works (leading-order argument near the anchor).
    Disproved,
    /// Neither a witness up to `k_max` nor a disproof.
    Exhausted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DirectionEntry {
    pub n: u32,
    pub outcome: DirectionOutcome,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RefinementReport {
    pub family_a: String,
    pub family_b: String,
    pub n_max: u32,
    pub k_max: u32,
    pub verdict: RefinementVerdict,
    /// `U(0, B_k) ⊆ U(0, A_n)` per `n`: the B-topology refines the A-topology.
    pub b_refines_a: Vec<DirectionEntry>,
    /// `U(0, A_k) ⊆ U(0, B_n)` per `n`.
    pub a_refines_b: Vec<DirectionEntry>,
}

impl RefinementReport {
    pub fn witnesses(entries: &[DirectionEntry]) -> Option<Vec<u32>> {
        entries
            .iter()
            .map(|e| match e.outcome {
                DirectionOutcome::Witness { k } => Some(k),
                _ => None,
            })
            .collect()
    }
}

/// True when no `k` gives `U(0, inner_k) ⊆ U(0, outer)`.
///
/// Near the anchor the outer profile behaves like `C_o x^{E_o}` and the inner
/// ones like `C_i(k) x^{E_i(k)}`. Containment needs `outer <= inner` near 0,
/// which fails when `E_o < E_i(k)`, or `E_o = E_i(k)` and `C_o > C_i(k)`.
fn no_inner_index_fits(outer: &Germ, n: u32, inner: &Germ) -> bool {
    let e_o = outer.descriptor.exponent.at(n);
    let c_o = outer.scale * outer.descriptor.coefficient.at(n);
    match inner.descriptor.exponent {
        ExponentForm::HarmonicShift => e_o <= num_traits::One::one(),
        ExponentForm::Constant { s } => match e_o.cmp(&s) {
            Ordering::Less => true,
            Ordering::Greater => false,
            Ordering::Equal => match inner.descriptor.coefficient.supremum() {
                None => false,
                Some((sup, attained)) => {
                    let sup = inner.scale * sup;
                    if attained {
                        c_o > sup * (1.0 + REL_TOL)
                    } else {
                        c_o >= sup * (1.0 - REL_TOL)
                    }
                }
            },
        },
    }
}

fn direction(outer: &BasicFamily, inner: &BasicFamily, n_max: u32, k_max: u32) -> Vec<DirectionEntry> {
    (1..=n_max)
        .map(|n| {
            let target = outer.profile(n);
            let found = (1..=k_max).find(|&k| containment(&inner.profile(k), &target).holds());
            let outcome = match found {
                Some(k) => DirectionOutcome::Witness { k },
                None => match (outer.germ(), inner.germ()) {
                    (Some(o), Some(i)) if no_inner_index_fits(&o, n, &i) => DirectionOutcome::Disproved,
                    _ => DirectionOutcome::Exhausted,
                },
            };
            DirectionEntry { n, outcome }
        })
        .collect()
}

/// Compares the bases at the anchor `0` for `n <= n_max`, trying `k <= k_max`.
pub fn mutual_refinement(a: &BasicFamily, b: &BasicFamily, n_max: u32, k_max: u32) -> RefinementReport {
    let (b_refines_a, a_refines_b) = rayon::join(|| direction(a, b, n_max, k_max), || direction(b, a, n_max, k_max));
    let all = |v: &[DirectionEntry]| v.iter().all(|e| matches!(e.outcome, DirectionOutcome::Witness { .. }));
    let refuted = |v: &[DirectionEntry]| v.iter().any(|e| e.outcome == DirectionOutcome::Disproved);
    let verdict = match (all(&b_refines_a), all(&a_refines_b)) {
        (true, true) => RefinementVerdict::Equivalent,
        (true, false) if refuted(&a_refines_b) => RefinementVerdict::BFiner,
        (false, true) if refuted(&b_refines_a) => RefinementVerdict::AFiner,
        _ if refuted(&a_refines_b) && refuted(&b_refines_a) => RefinementVerdict::Incomparable,
        _ => RefinementVerdict::Unknown,
    };
    RefinementReport {
        family_a: a.name().to_string(),
        family_b: b.name().to_string(),
        n_max,
        k_max,
        verdict,
        b_refines_a,
        a_refines_b,
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::Rational;
    use std::f64::consts::PI;

    fn nb(family: &BasicFamily, n: u32) -> Neighborhood {
        Neighborhood::new(family, n, 0.0)
    }

    #[test]
    fn disc_parabola_sandwich() {
        let (p, d) = (BasicFamily::parabolas(), BasicFamily::discs());
        assert!(neighborhood_contained(&nb(&d, 2), &nb(&p, 1)).unwrap());
        assert!(neighborhood_contained(&nb(&p, 1), &nb(&d, 1)).unwrap());
        assert!(!neighborhood_contained(&nb(&d, 1), &nb(&p, 1)).unwrap());
        for n in 1..=20 {
            assert!(neighborhood_contained(&nb(&d, 2 * n), &nb(&p, n)).unwrap());
            assert!(!neighborhood_contained(&nb(&d, 2 * n - 1), &nb(&p, n)).unwrap());
            assert!(neighborhood_contained(&nb(&p, n), &nb(&d, n)).unwrap());
        }
    }

    #[test]
    fn anchor_mismatch() {
        let p = BasicFamily::parabolas();
        let r = neighborhood_contained(&Neighborhood::new(&p, 2, 0.0), &Neighborhood::new(&p, 1, 0.5));
        assert!(matches!(r, Err(Error::AnchorMismatch { .. })));
    }

    #[test]
    fn power_pairs_use_exact_algebra() {
        let p1 = BasicFamily::power(Rational::from_integer(1)).unwrap();
        let p3 = BasicFamily::power(Rational::from_integer(3)).unwrap();
        // n|x|^3 is below k|x| on the narrower domain once widths and caps fit
        assert!(neighborhood_contained(&nb(&p1, 4), &nb(&p3, 1)).unwrap());
        // |x| above k|x|^3 near 0 for every k
        assert!(!neighborhood_contained(&nb(&p3, 8), &nb(&p1, 1)).unwrap());
    }

    #[test]
    fn sampled_and_exact_paths_agree() {
        // wrap power profiles as custom so they go through the sampled path
        let wrap = |family: BasicFamily| {
            BasicFamily::custom(
                format!("sampled {family}"),
                move |n| {
                    let p = family.profile(n);
                    let q = p.clone();
                    ProfileFunction::custom(n, p.half_width(), move |t| q.branch(t))
                },
                None,
            )
        };
        let fams = [
            BasicFamily::parabolas(),
            BasicFamily::triangles(PI / 4.0).unwrap(),
            BasicFamily::power(Rational::from_integer(1)).unwrap(),
            BasicFamily::w(),
        ];
        for a in &fams {
            for b in &fams {
                let (wa, wb) = (wrap(a.clone()), wrap(b.clone()));
                for n in 1..=4 {
                    for k in 1..=8 {
                        let exact = containment(&b.profile(k), &a.profile(n)).holds();
                        let sampled = containment(&wb.profile(k), &wa.profile(n)).holds();
                        assert_eq!(exact, sampled, "{b}_{k} in {a}_{n}");
                    }
                }
            }
        }
    }

    #[test]
    fn parabolas_and_discs_are_equivalent() {
        let r = mutual_refinement(&BasicFamily::parabolas(), &BasicFamily::discs(), 8, 32);
        assert_eq!(r.verdict, RefinementVerdict::Equivalent);
        let k_disc: Vec<u32> = (1..=8).map(|n| 2 * n).collect();
        let k_par: Vec<u32> = (1..=8).collect();
        assert_eq!(RefinementReport::witnesses(&r.b_refines_a).unwrap(), k_disc);
        assert_eq!(RefinementReport::witnesses(&r.a_refines_b).unwrap(), k_par);
    }

    #[test]
    fn triangles_finer_than_discs() {
        let r = mutual_refinement(&BasicFamily::discs(), &BasicFamily::triangles(PI / 4.0).unwrap(), 6, 32);
        assert_eq!(r.verdict, RefinementVerdict::BFiner);
    }

    #[test]
    fn slim_triangles_finer_than_triangles() {
        let r = mutual_refinement(
            &BasicFamily::triangles(PI / 4.0).unwrap(),
            &BasicFamily::power(Rational::from_integer(1)).unwrap(),
            6,
            32,
        );
        assert_eq!(r.verdict, RefinementVerdict::BFiner);
    }

    #[test]
    fn self_refinement_is_identity() {
        let fams = [
            BasicFamily::parabolas(),
            BasicFamily::discs(),
            BasicFamily::w(),
            BasicFamily::triangles(PI / 6.0).unwrap(),
            BasicFamily::power(Rational::new(1, 2)).unwrap(),
        ];
        for f in &fams {
            let r = mutual_refinement(f, f, 6, 12);
            assert_eq!(r.verdict, RefinementVerdict::Equivalent, "{f}");
            assert_eq!(RefinementReport::witnesses(&r.b_refines_a).unwrap(), (1..=6).collect::<Vec<_>>());
        }
    }

    #[test]
    fn unknown_without_germs() {
        let opaque = BasicFamily::custom("opaque", |n| ProfileFunction::power_law(n, n as f64, Rational::from_integer(1)), None);
        let r = mutual_refinement(&BasicFamily::triangles(PI / 4.0).unwrap(), &opaque, 3, 8);
        assert_eq!(r.verdict, RefinementVerdict::Unknown);
    }
}
