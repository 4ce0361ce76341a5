//! Displacement operators and characteristic functions `χ(ξ) = Tr[ρ D(ξ)]`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grassmann::{Generator, GrassmannElement, Monomial, OperatorElement};
use crate::qubit::{QubitState, STATE_TOL};

/// Tolerance on the constant term of a characteristic function.
pub const NORMALIZATION_TOL: f64 = 1e-10;

/// Which conjugate pair of generators an object is written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorPair {
    Zeta,
    Xi,
}

impl GeneratorPair {
    pub fn generators(self) -> (Generator, Generator) {
        match self {
            GeneratorPair::Zeta => (Generator::Zeta, Generator::ZetaStar),
            GeneratorPair::Xi => (Generator::Xi, Generator::XiStar),
        }
    }
}

/// `D(±x) = exp(±(σ+ x − x* σ−))` on the chosen pair.
///
/// The exponential series is summed until it terminates, which nilpotency
/// guarantees by second order.
pub fn displacement(sign: f64, pair: GeneratorPair) -> OperatorElement {
    let (g, gs) = pair.generators();
    let x = GrassmannElement::generator(g) * sign;
    let xs = GrassmannElement::generator(gs) * sign;
    let exponent = OperatorElement::sigma_plus() * OperatorElement::scalar(x)
        - OperatorElement::scalar(xs) * OperatorElement::sigma_minus();

    let mut sum = OperatorElement::identity();
    let mut term = OperatorElement::identity();
    for k in 1..=4 {
        term = term * exponent * (1.0 / k as f64);
        if term.max_abs_diff(&OperatorElement::zero()) == 0.0 {
            break;
        }
        sum = sum + term;
    }
    sum
}

/// Characteristic function of a qubit state, supported on the `ξ` pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GrassmannElement", into = "GrassmannElement")]
pub struct CharFunction {
    body: GrassmannElement,
}

impl CharFunction {
    /// Wraps an element; rejects anything that mentions `ζ` or `ζ*`.
    pub fn new(body: GrassmannElement) -> Result<Self> {
        if !body.is_free_of(&[Generator::Zeta, Generator::ZetaStar]) {
            return Err(Error::Schema("characteristic function must not depend on ζ".into()));
        }
        Ok(Self { body })
    }

    pub fn body(&self) -> &GrassmannElement {
        &self.body
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.body.max_abs_diff(&other.body)
    }
}

impl TryFrom<GrassmannElement> for CharFunction {
    type Error = Error;
    fn try_from(body: GrassmannElement) -> Result<Self> {
        Self::new(body)
    }
}

impl From<CharFunction> for GrassmannElement {
    fn from(c: CharFunction) -> Self {
        c.body
    }
}

impl std::fmt::Display for CharFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.body.fmt(f)
    }
}

/// `Tr[ρ D(ξ)]`, with the numeric `ρ` multiplied on the left and the
/// trace taken entrywise.
pub fn char_function(rho: &QubitState) -> CharFunction {
    let rho_op = OperatorElement::from_matrix(&rho.density_matrix());
    let body = (rho_op * displacement(1.0, GeneratorPair::Xi)).trace();
    CharFunction { body }
}

/// Inverse of [`char_function`]: `p` from the `ξξ*` coefficient, `γ` from
/// the `ξ` coefficient.
pub fn state_from_char(chi: &CharFunction) -> Result<QubitState> {
    let constant = chi.body.body();
    if (constant - Complex64::new(1.0, 0.0)).norm() > NORMALIZATION_TOL {
        return Err(Error::NotNormalized {
            constant: format!("{constant}"),
        });
    }
    let xx = chi.body.coefficient(Monomial::of(&[Generator::Xi, Generator::XiStar]));
    let p = (2.0 * xx.re + 1.0) / 2.0;
    let gamma = chi.body.coefficient(Monomial::of(&[Generator::Xi]));
    let gamma_sq = gamma.norm_sqr();
    if !(-STATE_TOL..=1.0 + STATE_TOL).contains(&p) || gamma_sq > p * (1.0 - p) + STATE_TOL {
        return Err(Error::NotPhysical { p, gamma_sq });
    }
    QubitState::new(p, gamma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use Generator::*;

    fn g(x: Generator) -> GrassmannElement {
        GrassmannElement::generator(x)
    }

    fn xx() -> GrassmannElement {
        g(Xi) * g(XiStar)
    }

    #[test]
    fn displacement_matrix_entries() {
        let d = displacement(1.0, GeneratorPair::Xi);
        let one = GrassmannElement::one();
        assert_eq!(*d.entry(0, 0), one + xx() * 0.5);
        assert_eq!(*d.entry(0, 1), -g(XiStar));
        assert_eq!(*d.entry(1, 0), g(Xi));
        assert_eq!(*d.entry(1, 1), one - xx() * 0.5);
    }

    #[test]
    fn displacement_with_zeroed_generators_is_identity() {
        let d = displacement(-1.0, GeneratorPair::Zeta);
        let zero = [GrassmannElement::zero(); 4];
        let id = d.map_entries(|e| e.substitute(&zero));
        assert_eq!(id, OperatorElement::identity());
    }

    #[test]
    fn displacement_is_unitary_with_its_inverse() {
        // D(ξ)† = D(−ξ) in the graded sense; their product is the identity
        let d = displacement(1.0, GeneratorPair::Xi) * displacement(-1.0, GeneratorPair::Xi);
        assert!(d.max_abs_diff(&OperatorElement::identity()) < 1e-15);
    }

    #[test]
    fn ground_state_char_function() {
        let chi = char_function(&QubitState::basis(0));
        assert_eq!(*chi.body(), GrassmannElement::one() + xx() * 0.5);
    }

    #[test]
    fn maximally_mixed_char_function_is_one() {
        assert_eq!(*char_function(&QubitState::maximally_mixed()).body(), GrassmannElement::one());
    }

    #[test]
    fn inverse_of_known_forms() {
        let ground = CharFunction::new(GrassmannElement::one() + xx() * 0.5).unwrap();
        assert_eq!(state_from_char(&ground).unwrap(), QubitState::basis(0));
        let mixed = CharFunction::new(GrassmannElement::one()).unwrap();
        assert_eq!(state_from_char(&mixed).unwrap(), QubitState::maximally_mixed());
        let bad = CharFunction::new(GrassmannElement::one() + xx() * 1.5).unwrap();
        assert!(matches!(state_from_char(&bad), Err(Error::NotPhysical { .. })));
        let unnormalized = CharFunction::new(GrassmannElement::one() * 0.5).unwrap();
        assert!(matches!(state_from_char(&unnormalized), Err(Error::NotNormalized { .. })));
    }

    #[test]
    fn char_function_adjoint_is_grade_involution() {
        let rho = QubitState::new(0.3, Complex64::new(0.2, 0.35)).unwrap();
        let chi = char_function(&rho);
        assert_eq!(chi.body().adjoint(), chi.body().grade_involution());
    }

    #[test]
    fn rejects_zeta_dependence() {
        assert!(CharFunction::new(g(Zeta)).is_err());
    }
}
