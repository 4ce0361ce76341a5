//! Green-function representation of qubit channels.
//!
//! A channel acts on characteristic functions by Berezin convolution,
//! `χ'(ξ) = ∫ d²ζ χ(ζ) G(ζ, ξ)`. For a canonical channel `(t, λ)`
//!
//! ```text
//! G = δ²(ζ − aξ − bξ*)·exp[−(t3/2) ξ*ξ] + (λ3 − λ1λ2) ξξ*
//!     + ((t1 − i t2)/2) ζζ*ξ − ((t1 + i t2)/2) ζζ*ξ*
//! ```
//!
//! with `a = (λ1+λ2)/2`, `b = (λ2−λ1)/2`; the extra terms add to the
//! delta–exponential product. The channel is Gaussian exactly when `G`
//! reduces to `δ²(ζ − aξ − bξ*)·exp[−c ξ*ξ]`.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::charfunc::{CharFunction, NORMALIZATION_TOL};
use crate::error::{Error, Result};
use crate::grassmann::{Convention, Generator, GrassmannElement};
use crate::qubit::{require_cptp, CanonicalParams, QubitChannel};

/// Per-coefficient tolerance of the Gaussian pattern match.
pub const GAUSSIAN_TOL: f64 = 1e-10;
/// Consistency slack when solving for angles.
pub const ANGLE_TOL: f64 = 1e-9;

use Generator::{Xi, XiStar, Zeta, ZetaStar};

fn gen(g: Generator) -> GrassmannElement {
    GrassmannElement::generator(g)
}

fn cr(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Symbolic kernel `G(ζ, ξ)` of a channel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GreenFunction {
    pub body: GrassmannElement,
    /// Canonical parameters the kernel was built from, if any.
    pub provenance: Option<CanonicalParams>,
}

impl fmt::Display for GreenFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.body.fmt(f)
    }
}

/// `(a, b, c)` of `δ²(ζ − aξ − bξ*)·exp[−c ξ*ξ]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianParams {
    pub a: Complex64,
    pub b: Complex64,
    pub c: f64,
}

impl GaussianParams {
    /// Canonical parameters, when `a` and `b` are real.
    pub fn canonical(&self) -> Option<CanonicalParams> {
        if self.a.im.abs() > ANGLE_TOL || self.b.im.abs() > ANGLE_TOL {
            return None;
        }
        let l1 = self.a.re - self.b.re;
        let l2 = self.a.re + self.b.re;
        Some(CanonicalParams::new([0.0, 0.0, 2.0 * self.c], [l1, l2, l1 * l2]))
    }

    pub fn green_body(&self) -> GrassmannElement {
        gaussian_body(self.a, self.b, self.c, Convention::CALIBRATED)
    }
}

/// `(θ, φ, q)` parametrization of a Gaussian channel:
/// `a = cosθ cosφ`, `b = −sinθ sinφ`, `c = (2q−1)(cos2θ − cos2φ)/4`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AngleParams {
    pub theta: f64,
    pub phi: f64,
    pub q: f64,
}

impl AngleParams {
    pub fn new(theta: f64, phi: f64, q: f64) -> Self {
        Self { theta, phi, q }
    }

    pub fn gaussian_params(&self) -> GaussianParams {
        GaussianParams {
            a: cr(self.theta.cos() * self.phi.cos()),
            b: cr(-self.theta.sin() * self.phi.sin()),
            c: (2.0 * self.q - 1.0) * ((2.0 * self.theta).cos() - (2.0 * self.phi).cos()) / 4.0,
        }
    }

    /// `λ = (cos(θ−φ), cos(θ+φ), λ1λ2)`, `t3 = (2q−1)(cos2θ − cos2φ)/2`.
    pub fn canonical(&self) -> CanonicalParams {
        let l1 = (self.theta - self.phi).cos();
        let l2 = (self.theta + self.phi).cos();
        let t3 = (2.0 * self.q - 1.0) * ((2.0 * self.theta).cos() - (2.0 * self.phi).cos()) / 2.0;
        CanonicalParams::new([0.0, 0.0, t3], [l1, l2, l1 * l2])
    }

    /// Green function written directly in the angle form
    /// `δ²(ζ − ξ cosθ cosφ + ξ* sinθ sinφ)·exp[(2q−1)(cos2θ − cos2φ)/4 · ξξ*]`.
    pub fn green_body(&self) -> GrassmannElement {
        let (th, ph) = (self.theta, self.phi);
        let arg = gen(Zeta) - gen(Xi) * (th.cos() * ph.cos()) + gen(XiStar) * (th.sin() * ph.sin());
        let kappa = (2.0 * self.q - 1.0) * ((2.0 * th).cos() - (2.0 * ph).cos()) / 4.0;
        let exp = GrassmannElement::one() + gen(Xi) * gen(XiStar) * kappa;
        Convention::CALIBRATED
            .delta_pair(&arg)
            .expect("angle-form delta argument is linear")
            * exp
    }

    pub fn is_pure_environment(&self) -> bool {
        self.q.abs() <= 1e-12 || (self.q - 1.0).abs() <= 1e-12
    }
}

fn gaussian_body(a: Complex64, b: Complex64, c: f64, conv: Convention) -> GrassmannElement {
    let arg = gen(Zeta) - gen(Xi).scale(a) - gen(XiStar).scale(b);
    // exp[−c ξ*ξ] = 1 + c ξξ*
    let exp = GrassmannElement::one() + gen(Xi) * gen(XiStar) * c;
    conv.delta_pair(&arg).expect("linear odd argument") * exp
}

pub(crate) fn canonical_body(p: &CanonicalParams, conv: Convention) -> GrassmannElement {
    let [t1, t2, t3] = p.t;
    let [l1, l2, l3] = p.lambda;
    let a = cr((l2 + l1) / 2.0);
    let b = cr((l2 - l1) / 2.0);
    let zz = gen(Zeta) * gen(ZetaStar);
    let xx = gen(Xi) * gen(XiStar);
    gaussian_body(a, b, t3 / 2.0, conv)
        + xx * (l3 - l1 * l2)
        + (zz * gen(Xi)).scale(Complex64::new(t1, -t2) / 2.0)
        - (zz * gen(XiStar)).scale(Complex64::new(t1, t2) / 2.0)
}

/// Green function of a CPTP canonical channel.
pub fn green_from_canonical(params: &CanonicalParams) -> Result<GreenFunction> {
    require_cptp(&QubitChannel::canonical(*params))?;
    Ok(GreenFunction {
        body: canonical_body(params, Convention::CALIBRATED),
        provenance: Some(*params),
    })
}

pub(crate) fn apply_green_with(g: &GrassmannElement, chi: &CharFunction, conv: Convention) -> GrassmannElement {
    let relabeled = chi.body().relabel_xi_to_zeta();
    conv.integrate_pair(&(relabeled * *g))
}

/// `χ'(ξ) = ∫ d²ζ χ(ζ) G(ζ, ξ)`.
pub fn apply_green(g: &GreenFunction, chi: &CharFunction) -> Result<CharFunction> {
    let out = apply_green_with(&g.body, chi, Convention::CALIBRATED);
    if (out.body() - cr(1.0)).norm() > NORMALIZATION_TOL {
        return Err(Error::NotNormalized {
            constant: format!("{}", out.body()),
        });
    }
    CharFunction::new(out)
}

/// Matches `G` against `δ²(ζ − aξ − bξ*)·exp[−c ξ*ξ]` coefficient by
/// coefficient (tolerance [`GAUSSIAN_TOL`]).
pub fn detect_gaussian(g: &GreenFunction) -> Option<GaussianParams> {
    use crate::grassmann::Monomial;
    let a = g.body.coefficient(Monomial::of(&[ZetaStar, Xi]));
    let b = g.body.coefficient(Monomial::of(&[ZetaStar, XiStar]));
    let c = g.body.coefficient(Monomial::of(&[Zeta, ZetaStar, Xi, XiStar]));
    if c.im.abs() > GAUSSIAN_TOL {
        return None;
    }
    let candidate = gaussian_body(a, b, c.re, Convention::CALIBRATED);
    g.body
        .approx_eq(&candidate, GAUSSIAN_TOL)
        .then_some(GaussianParams { a, b, c: c.re })
}

/// Solves for `(θ, φ, q)`.
///
/// Branch policy: `q ≥ 1/2` (and `q = 1` whenever `cos2θ = cos2φ`),
/// `θ ∈ [0, π/2]`, `φ ∈ [0, 2π)`.
pub fn angles_from_gaussian(gp: &GaussianParams) -> Result<AngleParams> {
    if gp.a.im.abs() > ANGLE_TOL || gp.b.im.abs() > ANGLE_TOL {
        return Err(Error::NoSolution("a and b must be real".into()));
    }
    let (a, b, c) = (gp.a.re, gp.b.re, gp.c);
    if a.abs() > 1.0 + ANGLE_TOL || b.abs() > 1.0 + ANGLE_TOL {
        return Err(Error::NoSolution(format!("|a| or |b| exceeds 1 (a = {a}, b = {b})")));
    }
    let l1 = a - b;
    let l2 = a + b;
    if l1.abs() > 1.0 + ANGLE_TOL || l2.abs() > 1.0 + ANGLE_TOL {
        return Err(Error::NoSolution(format!("cos(θ∓φ) out of range ({l1}, {l2})")));
    }
    // u = θ + φ, v = θ − φ
    let u0 = l2.clamp(-1.0, 1.0).acos();
    let v0 = l1.clamp(-1.0, 1.0).acos();
    let spread = 2.0 * u0.sin() * v0.sin(); // |cos2θ − cos2φ|

    let (sigma, q) = if spread <= ANGLE_TOL {
        if c.abs() > ANGLE_TOL {
            return Err(Error::NoSolution(format!("cos2θ = cos2φ forces c = 0, got {c}")));
        }
        (1.0, 1.0)
    } else {
        // cos2θ − cos2φ = −2 σ sin(u0) sin(v0); pick its sign to match c
        let sigma = if c >= 0.0 { -1.0 } else { 1.0 };
        let ratio = 4.0 * c.abs() / spread;
        if ratio > 1.0 + ANGLE_TOL {
            return Err(Error::NoSolution(format!("|2q − 1| = {ratio} exceeds 1")));
        }
        (sigma, ((1.0 + ratio.min(1.0)) / 2.0).clamp(0.0, 1.0))
    };

    let (mut theta, mut phi) = {
        let theta = (u0 + sigma * v0) / 2.0;
        if theta >= 0.0 {
            (theta, (u0 - sigma * v0) / 2.0)
        } else {
            (-theta, (-u0 + sigma * v0) / 2.0)
        }
    };
    if theta > FRAC_PI_2 {
        theta = PI - theta;
        phi = PI - phi;
    }
    phi = phi.rem_euclid(2.0 * PI);
    if phi >= 2.0 * PI - 1e-15 {
        phi = 0.0;
    }
    Ok(AngleParams { theta, phi, q })
}

/// Permutation of Bloch axes: new axis `i` takes old axis `perm[i]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxisPermutation(pub [usize; 3]);

impl AxisPermutation {
    pub const IDENTITY: AxisPermutation = AxisPermutation([0, 1, 2]);

    pub fn all() -> [AxisPermutation; 6] {
        [
            AxisPermutation([0, 1, 2]),
            AxisPermutation([0, 2, 1]),
            AxisPermutation([1, 0, 2]),
            AxisPermutation([1, 2, 0]),
            AxisPermutation([2, 0, 1]),
            AxisPermutation([2, 1, 0]),
        ]
    }

    pub fn apply(&self, v: [f64; 3]) -> [f64; 3] {
        [v[self.0[0]], v[self.0[1]], v[self.0[2]]]
    }
}

impl fmt::Display for AxisPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const AXES: [char; 3] = ['x', 'y', 'z'];
        write!(
            f,
            "(x,y,z) <- ({},{},{})",
            AXES[self.0[0]], AXES[self.0[1]], AXES[self.0[2]]
        )
    }
}

/// Looks for a relabeling of Bloch axes that makes the channel Gaussian.
///
/// Axis relabelings are realized by unitaries before and after the
/// channel (signed permutations of determinant one on both sides), so
/// the permuted channel is unitarily equivalent to the input. Returns the
/// identity when the channel is already Gaussian; among other matches the
/// first one with `|λ1'| ≥ |λ2'|` is preferred.
pub fn gaussian_equivalent(ch: &QubitChannel) -> Result<Option<(AxisPermutation, QubitChannel)>> {
    let params = ch.canonical_params()?;
    require_cptp(ch)?;
    let mut matches = AxisPermutation::all().into_iter().filter_map(|perm| {
        let candidate = CanonicalParams::new(perm.apply(params.t), perm.apply(params.lambda));
        let g = GreenFunction {
            body: canonical_body(&candidate, Convention::CALIBRATED),
            provenance: Some(candidate),
        };
        detect_gaussian(&g).map(|_| (perm, candidate))
    });
    let all: Vec<_> = matches.by_ref().collect();
    let pick = all
        .iter()
        .find(|(p, _)| *p == AxisPermutation::IDENTITY)
        .or_else(|| all.iter().find(|(_, c)| c.lambda[0].abs() >= c.lambda[1].abs()))
        .or_else(|| all.first());
    Ok(pick.map(|(p, c)| (*p, QubitChannel::canonical(*c))))
}
