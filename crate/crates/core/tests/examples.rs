use std::f64::consts::PI;

use approx::assert_abs_diff_eq;
use niemytzki_lab::criterion::{
    exponent_ratio_term, limsup_class, numeric_ratio_probe, refute, ExponentTerm, KSelector, LimsupClass, ProbeGrid,
    RefuteConfig, Verdict,
};
use niemytzki_lab::geometry::{
    cd_parameters, in_bounded_component, neighborhood_contained, neighborhoods_intersect, power_map_image,
    raster_components, saddle_point, LensRegion, Neighborhood, Point,
};
use niemytzki_lab::interval::Interval;
use niemytzki_lab::liminf::{derivative_quotient, MonotoneFunction, PositiveFunction};
use niemytzki_lab::profile::{spec::parse_family, verify_basic, BasicFamily, FamilyKind, Rational};
use niemytzki_lab::Error;

fn tri() -> BasicFamily {
    BasicFamily::triangles(PI / 4.0).unwrap()
}

#[test]
fn profile_values_and_inverses() {
    let p2 = BasicFamily::parabolas().profile(2);
    assert_abs_diff_eq!(p2.eval(0.5).unwrap(), 0.5, epsilon = 1e-15);
    assert_eq!(p2.eval(0.0).unwrap(), 0.0);
    assert_abs_diff_eq!(p2.inverse(0.125).unwrap(), 0.25, epsilon = 1e-15);
    assert_abs_diff_eq!(p2.inverse(0.5).unwrap(), 0.5, epsilon = 1e-15);
    assert_eq!(p2.inverse(0.0).unwrap(), 0.0);
    assert_abs_diff_eq!(BasicFamily::discs().profile(2).eval(0.3).unwrap(), 0.1, epsilon = 1e-15);
}

#[test]
fn builtin_families_are_basic() {
    for family in [BasicFamily::parabolas(), BasicFamily::w()] {
        assert!(verify_basic(&family, 8, 1000).unwrap().all_passed(), "{family}");
    }
}

#[test]
fn spec_documents() {
    let p = parse_family(
        r#"{"name":"parabolas","kind":"power_law","coefficient":{"form":"power","param":1},"exponent":{"form":"constant","param":2}}"#,
    )
    .unwrap();
    assert_eq!(p.power_law_descriptor(), BasicFamily::parabolas().power_law_descriptor());
    assert!(matches!(parse_family(r#"{"kind":"disc"}"#).unwrap().kind(), FamilyKind::Disc));
    assert!(parse_family(r#"{"kind":"power_law","exponnent":{"form":"constant","param":2}}"#).is_err());
}

#[test]
fn neighbourhood_membership() {
    let u = Neighborhood::new(&BasicFamily::parabolas(), 1, 0.0);
    assert!(u.contains(Point::new(0.0, 0.0)).unwrap());
    assert!(u.contains(Point::new(0.1, 0.02)).unwrap());
    assert!(!u.contains(Point::new(0.1, 0.005)).unwrap());
}

#[test]
fn intersections_and_saddles() {
    let p = BasicFamily::parabolas();
    assert!(neighborhoods_intersect(0.0, 0.4, &p, 2).unwrap());
    assert!(!neighborhoods_intersect(0.0, 1.2, &p, 2).unwrap());
    assert!(!neighborhoods_intersect(0.0, 1.0, &p, 2).unwrap());
    let s = saddle_point(0.0, 0.4, &p, 2).unwrap();
    assert_abs_diff_eq!(s.x, 0.2, epsilon = 1e-15);
    assert_abs_diff_eq!(s.y, 0.08, epsilon = 1e-15);
    let t = saddle_point(0.0, 1.0, &tri(), 1).unwrap();
    assert_abs_diff_eq!(t.y, 0.5 * (PI / 8.0).tan(), epsilon = 1e-12);
    assert!(matches!(saddle_point(0.0, 1.2, &p, 2), Err(Error::Precondition(_))));
}

#[test]
fn lens_parameters_and_membership() {
    let lens = LensRegion::new(0.0, 0.4, &BasicFamily::parabolas(), 2).unwrap();
    let sp = cd_parameters(0.25, 0.02, &lens).unwrap();
    assert_abs_diff_eq!(sp.c, 0.15, epsilon = 1e-12);
    assert_abs_diff_eq!(sp.d, 0.35, epsilon = 1e-12);
    let sp = cd_parameters(0.2, 0.0, &lens).unwrap();
    assert_eq!((sp.c, sp.d), (0.2, 0.2));
    assert!(in_bounded_component(Point::new(0.2, 0.05), &lens));
    assert!(!in_bounded_component(Point::new(0.2, 0.2), &lens));
    assert!(!in_bounded_component(Point::new(0.5, 0.01), &lens));
    assert!(matches!(cd_parameters(0.2, 0.2, &lens), Err(Error::Membership { .. })));
}

#[test]
fn raster_component_counts() {
    let p = BasicFamily::parabolas();
    let apart = raster_components(&LensRegion::new(0.0, 1.5, &p, 2).unwrap(), 200).unwrap();
    assert_eq!(apart.components, 1);
    let single = raster_components(&LensRegion::new(0.0, 0.0, &p, 2).unwrap(), 200).unwrap();
    assert_eq!(single.components, 1);
}

#[test]
fn containment_examples() {
    let at = |f: BasicFamily, n| Neighborhood::new(&f, n, 0.0);
    assert!(neighborhood_contained(&at(BasicFamily::discs(), 2), &at(BasicFamily::parabolas(), 1)).unwrap());
    assert!(neighborhood_contained(&at(BasicFamily::parabolas(), 1), &at(BasicFamily::discs(), 1)).unwrap());
    assert!(!neighborhood_contained(&at(BasicFamily::discs(), 1), &at(BasicFamily::parabolas(), 1)).unwrap());
}

#[test]
fn power_map_regions() {
    let two = Rational::from_integer(2);
    let image = power_map_image(two, Rational::from_integer(4), &Neighborhood::new(&BasicFamily::power(two).unwrap(), 1, 0.0))
        .unwrap();
    assert_abs_diff_eq!(image.profile().eval(0.5).unwrap(), 0.0625, epsilon = 1e-15);
    assert_abs_diff_eq!(image.profile().cap(), 1.0, epsilon = 1e-15);
    let image = power_map_image(two, Rational::from_integer(1), &Neighborhood::new(&BasicFamily::power(two).unwrap(), 4, 0.0))
        .unwrap();
    assert_abs_diff_eq!(image.profile().eval(0.1).unwrap(), 0.2, epsilon = 1e-15);
    assert_abs_diff_eq!(image.profile().cap(), 0.5, epsilon = 1e-15);
}

#[test]
fn limsup_classes() {
    let term = |k: f64, e: Rational| ExponentTerm { coefficient: Interval::point(k), x_exponent: e };
    assert_eq!(limsup_class(&term(0.98, Rational::from_integer(0))), LimsupClass::Finite(Interval::point(0.98)));
    assert_eq!(limsup_class(&term(5.0, Rational::new(1, 3))), LimsupClass::Zero);
    assert_eq!(limsup_class(&term(2.0, Rational::new(-1, 2))), LimsupClass::Infinite);
}

#[test]
fn ratio_terms() {
    let env = exponent_ratio_term(&BasicFamily::parabolas(), &tri(), 1, 6, KSelector::Supremum).unwrap();
    assert!(env.coefficient.hi() <= (1.0f64 / 6.0).sqrt() * (2f64.sqrt() + 1.0) + 1e-14);
    let w = exponent_ratio_term(&BasicFamily::w(), &BasicFamily::parabolas(), 1, 2, KSelector::Index(3)).unwrap();
    assert_eq!(w.x_exponent, Rational::new(1, 3));
    let same = exponent_ratio_term(&BasicFamily::parabolas(), &BasicFamily::parabolas(), 1, 4, KSelector::Index(1)).unwrap();
    assert!(same.coefficient.contains(0.25));
}

#[test]
fn probe_point_values() {
    let grid = ProbeGrid { x0: 1e-6, ratio: 0.5, points: 1 };
    let table = numeric_ratio_probe(&BasicFamily::w(), &BasicFamily::parabolas(), 1, 2, 1, &grid).unwrap();
    assert_abs_diff_eq!(table.rows[0].numeric, 0.01, epsilon = 1e-12);
    let table = numeric_ratio_probe(&BasicFamily::parabolas(), &tri(), 1, 6, 3, &ProbeGrid::default()).unwrap();
    assert!(table.max_relative_deviation < 1e-9);
}

#[test]
fn verdict_examples() {
    let cfg = RefuteConfig::default();
    for (a, b) in [(tri(), BasicFamily::discs()), (BasicFamily::w(), tri()), (BasicFamily::w(), BasicFamily::parabolas())] {
        assert!(refute(&a, &b, &cfg).unwrap().is_not_homeomorphic(), "{a} vs {b}");
    }
    let p1 = BasicFamily::power(Rational::from_integer(1)).unwrap();
    let p3 = BasicFamily::power(Rational::from_integer(3)).unwrap();
    let Verdict::Inconclusive { reasons, .. } = refute(&p1, &p3, &cfg).unwrap() else { panic!("power(1) vs power(3)") };
    assert!(reasons.iter().any(|r| r.orientation.source == p1.name()));
    assert!(reasons.iter().any(|r| r.orientation.source == p3.name()));
}

#[test]
fn derivative_quotient_examples() {
    let r = PositiveFunction::closed_form("w", 1.0, |w| w);
    let cube = MonotoneFunction::closed_form("x^3", -1.0, 1.0, |x| x * x * x);
    assert_abs_diff_eq!(derivative_quotient(&cube, 0.0, &r, 0.1).unwrap(), 0.01, epsilon = 1e-15);
    let id = MonotoneFunction::closed_form("x", -5.0, 5.0, |x| x);
    assert_abs_diff_eq!(derivative_quotient(&id, 1.3, &r, 0.4).unwrap(), 1.0, epsilon = 1e-15);
    let flat = MonotoneFunction::closed_form("c", -5.0, 5.0, |_| 2.0);
    assert_eq!(derivative_quotient(&flat, 1.3, &r, 0.4).unwrap(), 0.0);
}
