//! Seeded generators of admissible quotient-bound instances.
//!
//! Every function is piecewise linear on geometric knots `2^-i`, `i = 0..=KNOTS`:
//! `ψ_i = x_i e^{u_i}`, `φ_i = f_i ψ_i` and `h_i = y_i e^{v_i}` with `u_i, v_i` uniform in
//! `[-1/2, 1/2]` and `f_i` uniform in `[F_MIN, F_MAX]`. Since `φ` and `ψ` share knots,
//! `φ < ψ` at the knots gives `φ < ψ` everywhere, and all three tend to 0.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{PiecewiseLinear, PositiveFunction};

/// Knot count below `1`; the smallest knot is `2^-KNOTS`.
pub const KNOTS: i32 = 80;
pub const F_MIN: f64 = 0.05;
pub const F_MAX: f64 = 0.95;

#[derive(Debug, Clone)]
pub struct QuotientInstance {
    pub seed: u64,
    pub h: PositiveFunction,
    pub phi: PositiveFunction,
    pub psi: PositiveFunction,
}

fn knots() -> Vec<f64> {
    (0..=KNOTS).rev().map(|i| 2f64.powi(-i)).collect()
}

fn build(knots: &[f64], values: Vec<f64>) -> PositiveFunction {
    let pl = PiecewiseLinear::new(knots.to_vec(), values).expect("geometric knots are increasing");
    PositiveFunction::piecewise_linear(pl).expect("generated values are positive")
}

/// Instance for one seed; the same seed always yields the same functions.
pub fn admissible_instance(seed: u64) -> QuotientInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let xs = knots();
    let psi: Vec<f64> = xs.iter().map(|&x| x * rng.gen_range(-0.5f64..=0.5).exp()).collect();
    let phi: Vec<f64> = psi.iter().map(|&p| p * rng.gen_range(F_MIN..=F_MAX)).collect();
    let h: Vec<f64> = xs.iter().map(|&y| y * rng.gen_range(-0.5f64..=0.5).exp()).collect();
    QuotientInstance { seed, h: build(&xs, h), phi: build(&xs, phi), psi: build(&xs, psi) }
}

/// `count` instances with seeds `base, base + 1, ...`.
pub fn admissible_instances(base: u64, count: usize) -> Vec<QuotientInstance> {
    (0..count as u64).map(|i| admissible_instance(base + i)).collect()
}
