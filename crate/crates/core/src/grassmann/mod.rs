//! Grassmann algebra on four generators `ζ, ζ*, ξ, ξ*`, Berezin integration
//! over the `ζ` pair, Grassmann delta functions and 2×2 operator-valued
//! elements.

mod element;
mod operator;

pub use element::{CoefficientTable, Generator, GrassmannElement, Monomial, PRINT_CUTOFF};
pub use operator::OperatorElement;

use crate::error::Result;

/// Which single-generator integral of the pair measure `d²ζ` acts first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairOrder {
    ZetaFirst,
    ZetaStarFirst,
}

/// Sign and ordering conventions of the pair integral and delta function.
///
/// None of these are observable on their own; only the end-to-end output
/// characteristic function is. [`Convention::CALIBRATED`] is the unique
/// choice under which the Berezin convolution with the canonical Green
/// function reproduces the dense Bloch-map action (see `green` tests, which
/// enumerate all four alternatives).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Convention {
    pub pair_order: PairOrder,
    pub delta_sign: f64,
}

impl Convention {
    pub const CALIBRATED: Convention = Convention {
        pair_order: PairOrder::ZetaFirst,
        delta_sign: 1.0,
    };

    pub const ALL: [Convention; 4] = [
        Convention { pair_order: PairOrder::ZetaFirst, delta_sign: 1.0 },
        Convention { pair_order: PairOrder::ZetaFirst, delta_sign: -1.0 },
        Convention { pair_order: PairOrder::ZetaStarFirst, delta_sign: 1.0 },
        Convention { pair_order: PairOrder::ZetaStarFirst, delta_sign: -1.0 },
    ];

    pub fn integrate_pair(&self, x: &GrassmannElement) -> GrassmannElement {
        let (first, second) = match self.pair_order {
            PairOrder::ZetaFirst => (Generator::Zeta, Generator::ZetaStar),
            PairOrder::ZetaStarFirst => (Generator::ZetaStar, Generator::Zeta),
        };
        x.berezin_integrate(first).berezin_integrate(second)
    }

    pub fn delta_pair(&self, argument: &GrassmannElement) -> Result<GrassmannElement> {
        argument.require_linear_odd()?;
        Ok((*argument * argument.adjoint()) * self.delta_sign)
    }
}

/// `∫ dv x` for a single generator.
pub fn berezin_integrate(x: &GrassmannElement, v: Generator) -> GrassmannElement {
    x.berezin_integrate(v)
}

/// `∫ d²ζ x` under the calibrated measure; the result is free of `ζ, ζ*`.
pub fn integrate_pair(x: &GrassmannElement) -> GrassmannElement {
    Convention::CALIBRATED.integrate_pair(x)
}

/// Grassmann delta `δ²(argument)` of the pair `(argument, argument†)`.
///
/// `argument` must be linear and odd, e.g. `ζ − aξ − bξ*`. Under the
/// calibrated convention `∫ d²ζ f(ζ, ζ*) δ²(ζ − η) = f(η, η†)`.
pub fn delta_pair(argument: &GrassmannElement) -> Result<GrassmannElement> {
    Convention::CALIBRATED.delta_pair(argument)
}
