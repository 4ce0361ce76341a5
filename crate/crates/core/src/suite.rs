//! Randomized self-verification suite: calibration, oracle equivalence,
//! Gaussianity, composition, dilation soundness and the integration
//! convention check.

use serde::Serialize;

use crate::charfunc::{char_function, state_from_char, CharFunction};
use crate::degradability::dilation_from_angles;
use crate::grassmann::{Convention, Generator, GrassmannElement};
use crate::green::{apply_green, apply_green_with, canonical_body, detect_gaussian, green_from_canonical};
use crate::qubit::{apply_channel, compose, QubitChannel, QubitState, ROUND_TRIP_TOL};
use crate::sampling::{self, random_angles, random_canonical, random_mixed_family, random_state};
use crate::spec::SCHEMA_VERSION;

/// Threshold of the Gaussianity criterion.
pub const GAUSSIAN_THRESHOLD: f64 = 1e-10;
pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_TRIALS: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub trials: usize,
    /// Bound on every residual the suite measures.
    pub tol: f64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            trials: DEFAULT_TRIALS,
            tol: ROUND_TRIP_TOL,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub trials: usize,
    pub max_residual: f64,
    pub failures: usize,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub schema_version: u32,
    pub config: SuiteConfig,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
    pub warnings: Vec<String>,
}

/// `1 + (2p−1)ξξ*/2 + γξ − γ*ξ*`.
pub fn closed_form_char(rho: &QubitState) -> GrassmannElement {
    let g = |x| GrassmannElement::generator(x);
    let gamma = rho.gamma();
    GrassmannElement::one()
        + g(Generator::Xi) * g(Generator::XiStar) * ((2.0 * rho.p() - 1.0) / 2.0)
        + g(Generator::Xi).scale(gamma)
        - g(Generator::XiStar).scale(gamma.conj())
}

struct Tally {
    name: &'static str,
    trials: usize,
    max_residual: f64,
    failures: usize,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            trials: 0,
            max_residual: 0.0,
            failures: 0,
        }
    }

    fn residual(&mut self, r: f64, tol: f64) {
        self.trials += 1;
        // NaN residuals count as failures
        if r.is_nan() || r > tol {
            self.failures += 1;
        }
        self.max_residual = self.max_residual.max(if r.is_nan() { f64::INFINITY } else { r });
    }

    fn outcome(&mut self, ok: bool) {
        self.trials += 1;
        if !ok {
            self.failures += 1;
        }
    }

    fn finish(self) -> CheckResult {
        CheckResult {
            name: self.name.to_string(),
            trials: self.trials,
            max_residual: self.max_residual,
            failures: self.failures,
            passed: self.failures == 0,
        }
    }
}

/// Residual of the Berezin-convolution path against the dense Bloch map.
pub fn oracle_residual(ch: &QubitChannel, rho: &QubitState) -> f64 {
    let params = ch.canonical_params().expect("canonical channel");
    let g = green_from_canonical(&params).expect("CPTP channel");
    let symbolic = apply_green(&g, &char_function(rho)).and_then(|chi| state_from_char(&chi));
    let dense = apply_channel(ch, rho).expect("CPTP channel");
    match symbolic {
        Ok(s) => s.max_abs_diff(&dense),
        Err(_) => f64::INFINITY,
    }
}

fn convention_residual(conv: Convention, ch: &QubitChannel, rho: &QubitState) -> f64 {
    let params = ch.canonical_params().expect("canonical channel");
    let body = canonical_body(&params, conv);
    let out = apply_green_with(&body, &char_function(rho), conv);
    let dense = apply_channel(ch, rho).expect("CPTP channel");
    out.max_abs_diff(char_function(&dense).body())
}

pub fn run_suite(config: &SuiteConfig) -> SuiteReport {
    let tol = config.tol;
    let mut rng = sampling::rng(config.seed);
    let mut calibration = Tally::new("calibration");
    let mut oracle = Tally::new("oracle_equivalence");
    let mut gaussianity = Tally::new("gaussianity_criterion");
    let mut composition = Tally::new("composition");
    let mut dilation = Tally::new("dilation_soundness");
    let mut conventions = Tally::new("integration_convention");

    for _ in 0..config.trials {
        let rho = random_state(&mut rng);
        calibration.residual(char_function(&rho).body().max_abs_diff(&closed_form_char(&rho)), tol);

        let p1 = random_canonical(&mut rng);
        let ch1 = QubitChannel::canonical(p1);
        oracle.residual(oracle_residual(&ch1, &rho), tol);

        let mixed = random_mixed_family(&mut rng);
        let detected = detect_gaussian(&green_from_canonical(&mixed).expect("CPTP sample")).is_some();
        let closed = mixed.t[0].abs() <= GAUSSIAN_THRESHOLD
            && mixed.t[1].abs() <= GAUSSIAN_THRESHOLD
            && (mixed.lambda[2] - mixed.lambda[0] * mixed.lambda[1]).abs() <= GAUSSIAN_THRESHOLD;
        gaussianity.outcome(detected == closed);

        let p2 = random_canonical(&mut rng);
        let ch2 = QubitChannel::canonical(p2);
        let g1 = green_from_canonical(&p1).expect("CPTP sample");
        let g2 = green_from_canonical(&p2).expect("CPTP sample");
        let twice = apply_green(&g1, &char_function(&rho)).and_then(|c| apply_green(&g2, &c));
        let composed = apply_channel(&compose(&ch2, &ch1), &rho).expect("composition of CPTP maps");
        composition.residual(
            twice.map_or(f64::INFINITY, |c: CharFunction| c.max_abs_diff(&char_function(&composed))),
            tol,
        );

        let ap = random_angles(&mut rng);
        let d = dilation_from_angles(&ap);
        let target = QubitChannel::canonical(ap.canonical());
        let dense = apply_channel(&target, &rho).expect("Gaussian channels are CPTP");
        let via_dilation = apply_channel(&d.system_channel(), &rho).expect("dilation channel is CPTP");
        let purity_ok = ((d.env_purity() - 1.0).abs() <= ROUND_TRIP_TOL) == ap.is_pure_environment();
        let r = via_dilation.max_abs_diff(&dense);
        dilation.residual(if purity_ok { r } else { f64::INFINITY }, tol);

        let passing: Vec<Convention> = Convention::ALL
            .into_iter()
            .filter(|c| convention_residual(*c, &ch1, &rho) <= tol.max(ROUND_TRIP_TOL))
            .collect();
        conventions.outcome(passing == [Convention::CALIBRATED]);
    }

    let checks: Vec<CheckResult> = [calibration, oracle, gaussianity, composition, dilation, conventions]
        .into_iter()
        .map(Tally::finish)
        .collect();
    let mut warnings = Vec::new();
    if config.trials == 0 {
        warnings.push("no trials requested; the suite passes vacuously".to_string());
    }
    SuiteReport {
        schema_version: SCHEMA_VERSION,
        config: *config,
        passed: checks.iter().all(|c| c.passed),
        checks,
        warnings,
    }
}
