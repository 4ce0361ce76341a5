//! Seeded random states, channels, angles and Grassmann elements for the
//! randomized suites.

use std::f64::consts::{FRAC_PI_2, PI};

use nalgebra::Vector3;
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::grassmann::{Generator, GrassmannElement};
use crate::green::AngleParams;
use crate::qubit::{is_cptp, CanonicalParams, QubitChannel, QubitState};

pub type SuiteRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SuiteRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform in the Bloch ball.
pub fn random_state<R: Rng>(rng: &mut R) -> QubitState {
    loop {
        let r = Vector3::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        if r.norm() <= 1.0 {
            return QubitState::from_bloch(&r).expect("inside the Bloch ball");
        }
    }
}

/// CPTP canonical channel with all six parameters generically nonzero,
/// by rejection from a box.
pub fn random_canonical<R: Rng>(rng: &mut R) -> CanonicalParams {
    loop {
        let lambda = [0; 3].map(|_| rng.gen_range(-1.0..1.0));
        let scale = rng.gen_range(0.0..0.5);
        let t = [0; 3].map(|_| rng.gen_range(-scale..scale));
        let p = CanonicalParams::new(t, lambda);
        if is_cptp(&QubitChannel::canonical(p)).is_cptp {
            return p;
        }
    }
}

/// `θ ∈ [0, π/2]`, `φ ∈ [0, 2π)`; `q` is 1 or 0 a quarter of the time each,
/// uniform otherwise.
pub fn random_angles<R: Rng>(rng: &mut R) -> AngleParams {
    let theta = rng.gen_range(0.0..FRAC_PI_2);
    let phi = rng.gen_range(0.0..2.0 * PI);
    let q = match rng.gen_range(0..4) {
        0 => 1.0,
        1 => 0.0,
        _ => rng.gen_range(0.0..1.0),
    };
    AngleParams::new(theta, phi, q)
}

pub fn random_gaussian<R: Rng>(rng: &mut R) -> CanonicalParams {
    random_angles(rng).canonical()
}

/// Mixture used for Gaussianity checks: generic channels, exact Gaussian
/// channels, and Gaussian channels nudged off the Gaussian set by 1e-6
/// (kept only when still CPTP).
pub fn random_mixed_family<R: Rng>(rng: &mut R) -> CanonicalParams {
    match rng.gen_range(0..3) {
        0 => random_canonical(rng),
        1 => random_gaussian(rng),
        _ => loop {
            let mut p = random_angles(rng).canonical();
            match rng.gen_range(0..3) {
                0 => p.t[0] += 1e-6,
                1 => p.t[1] -= 1e-6,
                _ => p.lambda[2] *= 1.0 - 1e-6,
            }
            if is_cptp(&QubitChannel::canonical(p)).is_cptp {
                break p;
            }
        },
    }
}

fn random_complex<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// Dense element with every coefficient drawn from the unit box.
pub fn random_element<R: Rng>(rng: &mut R) -> GrassmannElement {
    GrassmannElement::from_coefficients([0; 16].map(|_| random_complex(rng)))
}

/// Random linear combination of the four generators.
pub fn random_linear<R: Rng>(rng: &mut R) -> GrassmannElement {
    Generator::ALL
        .into_iter()
        .map(|g| GrassmannElement::generator(g).scale(random_complex(rng)))
        .fold(GrassmannElement::zero(), |acc, x| acc + x)
}
