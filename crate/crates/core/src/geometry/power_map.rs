use super::{Neighborhood, Point};
use crate::error::{Error, Result};
use crate::profile::{ratio_to_f64, ProfileFunction, Rational, Shape};

/// `(x, y) -> (x, y^{t/s})`, the map carrying the `power(s)` base onto a
/// base equivalent to `power(t)`.
pub fn power_map_point(s: Rational, t: Rational, p: Point) -> Point {
    Point::new(p.x, p.y.powf(ratio_to_f64(t / s)))
}

/// Image of `U(x0, p_{s,n})` under the power map.
///
/// `y > n |x - x0|^s` iff `y^{t/s} > n^{t/s} |x - x0|^t`, so the image is the
/// profile region with coefficient `n^{t/s}`, exponent `t` and cap
/// `n^{-t/s}`; its half-width stays `n^{-2/s}`.
pub fn power_map_image(s: Rational, t: Rational, neigh: &Neighborhood) -> Result<Neighborhood> {
    if *s.numer() <= 0 || *t.numer() <= 0 {
        return Err(Error::Argument(format!("power map needs s, t > 0, got s={s}, t={t}")));
    }
    let profile = neigh.profile();
    let n = profile.index();
    let from_power_s = matches!(
        profile.shape(),
        Shape::Power { coefficient, exponent } if *exponent == s && (coefficient - n as f64).abs() <= 1e-12 * n as f64
    );
    if !from_power_s {
        return Err(Error::Argument(format!("neighbourhood is not from the power(s={s}) family")));
    }
    let q = ratio_to_f64(t / s);
    let nf = n as f64;
    Ok(Neighborhood::from_profile(ProfileFunction::power_region(n, nf.powf(q), t, nf.powf(-q)), neigh.anchor()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{mutual_refinement, RefinementVerdict};
    use crate::profile::BasicFamily;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn r(x: i64) -> Rational {
        Rational::from_integer(x)
    }

    #[test]
    fn identity_when_s_equals_t() {
        let u = Neighborhood::new(&BasicFamily::power(r(2)).unwrap(), 3, 0.5);
        let img = power_map_image(r(2), r(2), &u).unwrap();
        assert_abs_diff_eq!(img.profile().half_width(), u.profile().half_width(), epsilon = 1e-15);
        assert_abs_diff_eq!(img.profile().cap(), u.profile().cap(), epsilon = 1e-15);
        assert_eq!(img.anchor(), 0.5);
    }

    #[test]
    fn quartic_image() {
        let u = Neighborhood::new(&BasicFamily::power(r(2)).unwrap(), 1, 0.0);
        let img = power_map_image(r(2), r(4), &u).unwrap();
        assert_abs_diff_eq!(img.profile().cap(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(img.profile().eval(0.5).unwrap(), 0.0625, epsilon = 1e-15);
    }

    #[test]
    fn linear_image() {
        let u = Neighborhood::new(&BasicFamily::power(r(2)).unwrap(), 4, 0.0);
        let img = power_map_image(r(2), r(1), &u).unwrap();
        assert_abs_diff_eq!(img.profile().cap(), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(img.profile().eval(0.1).unwrap(), 0.2, epsilon = 1e-15);
    }

    #[test]
    fn rejects_bad_input() {
        let u = Neighborhood::new(&BasicFamily::power(r(2)).unwrap(), 1, 0.0);
        assert!(power_map_image(r(0), r(1), &u).is_err());
        assert!(power_map_image(r(3), r(1), &u).is_err());
        let d = Neighborhood::new(&BasicFamily::discs(), 1, 0.0);
        assert!(power_map_image(r(2), r(1), &d).is_err());
    }

    #[test]
    fn image_matches_pointwise_map() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let (s, t) = (r(2), Rational::new(1, 2));
        let u = Neighborhood::new(&BasicFamily::power(s).unwrap(), 3, 0.25);
        let img = power_map_image(s, t, &u).unwrap();
        for _ in 0..20_000 {
            let p = Point::new(rng.gen_range(-0.5..1.0), rng.gen_range(0.0..0.5));
            // skip points within rounding distance of the boundary curves
            let floor = u.profile().extended(p.x - 0.25);
            if (p.y - floor).abs() < 1e-9 || (p.y - u.profile().cap()).abs() < 1e-9 {
                continue;
            }
            assert_eq!(u.contains(p).unwrap(), img.contains(power_map_point(s, t, p)).unwrap(), "{p:?}");
        }
    }

    #[test]
    fn images_interleave_with_target_base() {
        for (s, t) in [(r(2), r(4)), (r(2), r(1)), (r(1), r(3)), (Rational::new(1, 2), r(2))] {
            let images = BasicFamily::power_image(s, t).unwrap();
            let report = mutual_refinement(&images, &BasicFamily::power(t).unwrap(), 3, 128);
            assert_eq!(report.verdict, RefinementVerdict::Equivalent, "s={s} t={t} {report:?}");
        }
    }
}
