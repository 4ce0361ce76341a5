//! Qubit-qubit dilations of Gaussian channels, their weakly complementary
//! channels, and numeric (anti-)degradability certificates.
//!
//! Two-qubit vectors are indexed `2·s + e` (system first). The dilation
//! unitary is two real rotations, one on `{|00⟩, |11⟩}` by `θ` and one on
//! `{|10⟩, |01⟩}` by `φ`; the environment starts in `diag(q, 1−q)`.

use nalgebra::{Matrix2, Matrix3, Matrix4};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::green::AngleParams;
use crate::qubit::{compose, is_cptp, QubitChannel, QubitState, EIGENVALUE_FLOOR};

/// Largest residual accepted for a witness.
pub const CERTIFICATE_TOL: f64 = 1e-9;
/// Singular values below this are dropped by the least-squares solve.
const SVD_CUTOFF: f64 = 1e-12;
/// `|cos2φ|` below this is reported as the ratio pole.
pub const BOUNDARY_TOL: f64 = 1e-12;

fn cr(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Unitary on system ⊗ environment plus the initial environment state.
#[derive(Debug, Clone, PartialEq)]
pub struct Dilation {
    pub unitary: Matrix4<Complex64>,
    pub env_state: QubitState,
}

pub fn dilation_from_angles(ap: &AngleParams) -> Dilation {
    let (ct, st) = (ap.theta.cos(), ap.theta.sin());
    let (cp, sp) = (ap.phi.cos(), ap.phi.sin());
    #[rustfmt::skip]
    let u = Matrix4::new(
        ct,  0.0, 0.0, -st,
        0.0, cp,  sp,  0.0,
        0.0, -sp, cp,  0.0,
        st,  0.0, 0.0, ct,
    );
    let q = ap.q.clamp(0.0, 1.0);
    Dilation {
        unitary: u.map(cr),
        env_state: QubitState::new(q, Complex64::new(0.0, 0.0)).expect("diagonal state with q in [0, 1]"),
    }
}

impl Dilation {
    /// `max |U†U − I|`.
    pub fn unitarity_defect(&self) -> f64 {
        (self.unitary.adjoint() * self.unitary - Matrix4::identity())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// `Tr ρ_E²` of the initial environment.
    pub fn env_purity(&self) -> f64 {
        let m = self.env_state.density_matrix();
        (m * m).trace().re
    }

    /// `U (ρ ⊗ ρ_E) U†`.
    pub fn joint_output(&self, rho: &QubitState) -> Matrix4<Complex64> {
        let joint = rho.density_matrix().kronecker(&self.env_state.density_matrix());
        self.unitary * joint * self.unitary.adjoint()
    }

    fn env_weights(&self) -> [f64; 2] {
        [self.env_state.p(), 1.0 - self.env_state.p()]
    }

    /// Kraus operators of `ρ ↦ Tr_E[U(ρ ⊗ ρ_E)U†]`.
    pub fn system_kraus(&self) -> Vec<Matrix2<Complex64>> {
        self.kraus(|out, traced| 2 * out + traced)
    }

    /// Kraus operators of `ρ ↦ Tr_S[U(ρ ⊗ ρ_E)U†]`.
    pub fn environment_kraus(&self) -> Vec<Matrix2<Complex64>> {
        self.kraus(|out, traced| 2 * traced + out)
    }

    fn kraus(&self, row: impl Fn(usize, usize) -> usize) -> Vec<Matrix2<Complex64>> {
        let mut ops = Vec::new();
        for (e0, w) in self.env_weights().into_iter().enumerate() {
            if w <= 0.0 {
                continue;
            }
            for traced in 0..2 {
                let a = Matrix2::from_fn(|out, s| self.unitary[(row(out, traced), 2 * s + e0)] * w.sqrt());
                ops.push(a);
            }
        }
        ops
    }

    /// The channel this dilation realizes on the system.
    pub fn system_channel(&self) -> QubitChannel {
        QubitChannel::from_kraus(self.system_kraus()).expect("partial trace of a unitary dilation is trace preserving")
    }
}

/// `Ñ(ρ) = Tr_S[U(ρ ⊗ ρ_E)U†]`.
pub fn weakly_complementary(d: &Dilation) -> QubitChannel {
    QubitChannel::from_kraus(d.environment_kraus()).expect("partial trace of a unitary dilation is trace preserving")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VerdictKind {
    WeaklyDegradable,
    AntiDegradable,
    NeitherCertified,
}

/// One linear solve `ptm(W)·ptm(source) ≈ ptm(target)` and its checks.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessAttempt {
    pub witness: QubitChannel,
    /// `max |ptm(W)·ptm(source) − ptm(target)|`.
    pub residual: f64,
    pub min_choi_eigenvalue: f64,
    pub accepted: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegradabilityVerdict {
    pub kind: VerdictKind,
    pub witness: Option<QubitChannel>,
    /// Residual and Choi minimum of the accepted attempt, or of the
    /// degrading attempt when nothing was certified.
    pub residual: f64,
    pub min_choi_eigenvalue: f64,
    pub degrading: WitnessAttempt,
    pub anti_degrading: WitnessAttempt,
}

/// Least-squares witness with `ptm(W)·ptm(source) = ptm(target)`.
///
/// Only the 3×3 block is solved for; the translation is then fixed so
/// that `W` maps the source's image of the maximally mixed state to the
/// target's, which keeps `W` trace preserving.
pub fn solve_witness(source: &QubitChannel, target: &QubitChannel, tol: f64) -> WitnessAttempt {
    let (ls, lt) = (source.block(), target.block());
    let pinv = ls.svd(true, true).pseudo_inverse(SVD_CUTOFF).unwrap_or_else(|_| Matrix3::zeros());
    let m = lt * pinv;
    let d = target.translation() - m * source.translation();

    let mut ptm = Matrix4::identity();
    ptm.fixed_view_mut::<3, 3>(1, 1).copy_from(&m);
    ptm.fixed_view_mut::<3, 1>(1, 0).copy_from(&d);
    let witness = QubitChannel::from_ptm(ptm).expect("first row is (1, 0, 0, 0) by construction");

    let residual = (compose(&witness, source).ptm() - target.ptm()).abs().max();
    let report = is_cptp(&witness);
    WitnessAttempt {
        accepted: residual <= tol && report.is_cptp,
        witness,
        residual,
        min_choi_eigenvalue: report.min_eigenvalue,
    }
}

/// Tries `Ñ = D∘N` first, then `N = D'∘Ñ`, accepting residuals up to
/// [`CERTIFICATE_TOL`].
pub fn certify(n_ch: &QubitChannel, comp: &QubitChannel) -> DegradabilityVerdict {
    certify_with_tol(n_ch, comp, CERTIFICATE_TOL)
}

pub fn certify_with_tol(n_ch: &QubitChannel, comp: &QubitChannel, tol: f64) -> DegradabilityVerdict {
    let degrading = solve_witness(n_ch, comp, tol);
    let anti_degrading = solve_witness(comp, n_ch, tol);
    let (kind, chosen) = if degrading.accepted {
        (VerdictKind::WeaklyDegradable, &degrading)
    } else if anti_degrading.accepted {
        (VerdictKind::AntiDegradable, &anti_degrading)
    } else {
        (VerdictKind::NeitherCertified, &degrading)
    };
    DegradabilityVerdict {
        kind,
        witness: (kind != VerdictKind::NeitherCertified).then(|| chosen.witness.clone()),
        residual: chosen.residual,
        min_choi_eigenvalue: chosen.min_choi_eigenvalue,
        degrading,
        anti_degrading,
    }
}

/// Re-checks a verdict's witness against the two channels.
pub fn verify_verdict(v: &DegradabilityVerdict, n_ch: &QubitChannel, comp: &QubitChannel) -> bool {
    let Some(w) = &v.witness else {
        return v.kind == VerdictKind::NeitherCertified;
    };
    let (source, target) = match v.kind {
        VerdictKind::WeaklyDegradable => (n_ch, comp),
        VerdictKind::AntiDegradable => (comp, n_ch),
        VerdictKind::NeitherCertified => return false,
    };
    let residual = (compose(w, source).ptm() - target.ptm()).abs().max();
    residual <= CERTIFICATE_TOL && is_cptp(w).min_eigenvalue >= EIGENVALUE_FLOOR
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PredictedKind {
    WeaklyDegradable,
    AntiDegradable,
    /// Mixed environment on the anti-degradable side: the claim is zero
    /// quantum capacity, with no explicit map.
    NullCapacityClaimed,
    /// `cos2φ = 0`, where the ratio has a pole.
    Boundary,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Prediction {
    pub kind: PredictedKind,
    /// `cos2θ / cos2φ`, absent at the pole.
    pub ratio: Option<f64>,
}

/// Sign test on `cos2θ / cos2φ`.
pub fn classify_by_angles(ap: &AngleParams) -> Prediction {
    let num = (2.0 * ap.theta).cos();
    let den = (2.0 * ap.phi).cos();
    if den.abs() < BOUNDARY_TOL {
        return Prediction {
            kind: PredictedKind::Boundary,
            ratio: None,
        };
    }
    let ratio = num / den;
    let kind = if ratio >= 0.0 {
        PredictedKind::WeaklyDegradable
    } else if ap.is_pure_environment() {
        PredictedKind::AntiDegradable
    } else {
        PredictedKind::NullCapacityClaimed
    };
    Prediction {
        kind,
        ratio: Some(ratio),
    }
}
