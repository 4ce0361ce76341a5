use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One of the four anticommuting generators.
///
/// The declaration order is the global canonical order `ζ < ζ* < ξ < ξ*`;
/// monomials are always stored with their generators ascending in it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Generator {
    Zeta,
    ZetaStar,
    Xi,
    XiStar,
}

impl Generator {
    pub const ALL: [Generator; 4] = [
        Generator::Zeta,
        Generator::ZetaStar,
        Generator::Xi,
        Generator::XiStar,
    ];

    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    #[inline]
    pub fn bit(self) -> u8 {
        1 << self.index()
    }

    fn from_index(i: usize) -> Generator {
        Self::ALL[i]
    }

    /// The conjugate partner (`ζ ↔ ζ*`, `ξ ↔ ξ*`).
    pub fn conjugate(self) -> Generator {
        match self {
            Generator::Zeta => Generator::ZetaStar,
            Generator::ZetaStar => Generator::Zeta,
            Generator::Xi => Generator::XiStar,
            Generator::XiStar => Generator::Xi,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Generator::Zeta => "ζ",
            Generator::ZetaStar => "ζ*",
            Generator::Xi => "ξ",
            Generator::XiStar => "ξ*",
        }
    }
}

/// A basis monomial: a subset of the generators, read as their product in
/// ascending canonical order. Bit `k` is set iff generator `k` is present.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(u8);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);
    pub const COUNT: usize = 16;

    /// Monomial containing exactly the given generators (order of the slice
    /// is irrelevant; duplicates are collapsed).
    pub fn of(gens: &[Generator]) -> Monomial {
        Monomial(gens.iter().fold(0, |m, g| m | g.bit()))
    }

    #[inline]
    pub fn from_bits(bits: u8) -> Monomial {
        Monomial(bits & 0x0f)
    }

    #[inline]
    pub fn bits(self) -> u8 {
        self.0
    }

    #[inline]
    pub fn degree(self) -> u32 {
        self.0.count_ones()
    }

    #[inline]
    pub fn is_odd(self) -> bool {
        self.degree() % 2 == 1
    }

    #[inline]
    pub fn contains(self, g: Generator) -> bool {
        self.0 & g.bit() != 0
    }

    pub fn generators(self) -> impl Iterator<Item = Generator> {
        (0..4).filter(move |i| self.0 & (1 << i) != 0).map(Generator::from_index)
    }

    pub fn all() -> impl Iterator<Item = Monomial> {
        (0..16u8).map(Monomial)
    }

    /// Stable display order: even monomials before odd ones, then by
    /// degree, then lexicographically by canonical generator order.
    pub fn display_order() -> [Monomial; 16] {
        let mut all: Vec<Monomial> = Monomial::all().collect();
        all.sort_by_key(|m| {
            let lex: Vec<usize> = m.generators().map(Generator::index).collect();
            (m.is_odd(), m.degree(), lex)
        });
        let mut out = [Monomial::ONE; 16];
        out.copy_from_slice(&all);
        out
    }

    pub fn label(self) -> String {
        if self.0 == 0 {
            return "1".to_string();
        }
        self.generators().map(Generator::symbol).collect()
    }
}

/// Sign of `a · b` reordered into canonical order; 0 when they share a generator.
#[inline]
fn product_sign(a: u8, b: u8) -> f64 {
    if a & b != 0 {
        return 0.0;
    }
    let mut swaps = 0u32;
    for k in 0..4 {
        if b & (1 << k) != 0 {
            // generators of `a` above k must hop over it
            swaps += (a & !((2u8 << k) - 1)).count_ones();
        }
    }
    if swaps.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Element of the Grassmann algebra on `{ζ, ζ*, ξ, ξ*}` with complex
/// coefficients, stored as a dense table over the 16 canonical monomials.
#[derive(Clone, Copy, PartialEq)]
pub struct GrassmannElement {
    coeffs: [Complex64; 16],
}

impl Default for GrassmannElement {
    fn default() -> Self {
        Self::zero()
    }
}

impl GrassmannElement {
    pub fn zero() -> Self {
        Self {
            coeffs: [Complex64::new(0.0, 0.0); 16],
        }
    }

    pub fn one() -> Self {
        Self::scalar(Complex64::new(1.0, 0.0))
    }

    pub fn scalar(c: Complex64) -> Self {
        Self::term(c, Monomial::ONE)
    }

    pub fn generator(g: Generator) -> Self {
        Self::term(Complex64::new(1.0, 0.0), Monomial::of(&[g]))
    }

    pub fn term(c: Complex64, m: Monomial) -> Self {
        let mut out = Self::zero();
        out.coeffs[m.bits() as usize] = c;
        out
    }

    pub fn from_coefficients(coeffs: [Complex64; 16]) -> Self {
        Self { coeffs }
    }

    pub fn coefficients(&self) -> &[Complex64; 16] {
        &self.coeffs
    }

    #[inline]
    pub fn coefficient(&self, m: Monomial) -> Complex64 {
        self.coeffs[m.bits() as usize]
    }

    pub fn set_coefficient(&mut self, m: Monomial, c: Complex64) {
        self.coeffs[m.bits() as usize] = c;
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let mut out = *self;
        out.coeffs.iter_mut().for_each(|x| *x *= c);
        out
    }

    /// The degree-zero coefficient.
    pub fn body(&self) -> Complex64 {
        self.coeffs[0]
    }

    /// Largest coefficient modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.coeffs
            .iter()
            .zip(other.coeffs.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.max_abs_diff(other) <= tol
    }

    /// True when no generator from `gens` appears in any nonzero monomial.
    pub fn is_free_of(&self, gens: &[Generator]) -> bool {
        let mask = Monomial::of(gens).bits();
        Monomial::all().all(|m| m.bits() & mask == 0 || self.coefficient(m) == Complex64::new(0.0, 0.0))
    }

    pub fn even_part(&self) -> Self {
        self.filtered(|m| !m.is_odd())
    }

    pub fn odd_part(&self) -> Self {
        self.filtered(Monomial::is_odd)
    }

    fn filtered(&self, keep: impl Fn(Monomial) -> bool) -> Self {
        let mut out = Self::zero();
        for m in Monomial::all().filter(|&m| keep(m)) {
            out.set_coefficient(m, self.coefficient(m));
        }
        out
    }

    /// Grade involution: flips the sign of every odd monomial.
    pub fn grade_involution(&self) -> Self {
        let mut out = *self;
        for m in Monomial::all().filter(|m| m.is_odd()) {
            out.coeffs[m.bits() as usize] = -out.coeffs[m.bits() as usize];
        }
        out
    }

    /// Graded product.
    pub fn multiply(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (a, ca) in self.coeffs.iter().enumerate() {
            if ca.re == 0.0 && ca.im == 0.0 {
                continue;
            }
            for (b, cb) in rhs.coeffs.iter().enumerate() {
                let s = product_sign(a as u8, b as u8);
                if s != 0.0 {
                    out.coeffs[a | b] += ca * cb * s;
                }
            }
        }
        out
    }

    /// Conjugate-linear anti-automorphism: conjugates coefficients, swaps
    /// each generator with its partner and reverses factor order.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero();
        for m in Monomial::all() {
            let c = self.coefficient(m);
            if c == Complex64::new(0.0, 0.0) {
                continue;
            }
            let gens: Vec<Generator> = m.generators().collect();
            let image = gens
                .iter()
                .rev()
                .fold(Self::one(), |acc, g| acc * Self::generator(g.conjugate()));
            out += image.scale(c.conj());
        }
        out
    }

    /// Berezin integral `∫ dv x`: drops monomials without `v`, strips `v`
    /// from the others after commuting it to the leftmost position.
    pub fn berezin_integrate(&self, v: Generator) -> Self {
        let mut out = Self::zero();
        let vb = v.bit();
        for m in Monomial::all().filter(|m| m.contains(v)) {
            let before = (m.bits() & (vb - 1)).count_ones();
            let sign = if before.is_multiple_of(2) { 1.0 } else { -1.0 };
            out.coeffs[(m.bits() & !vb) as usize] += self.coefficient(m) * sign;
        }
        out
    }

    /// Algebra homomorphism sending each generator to the given odd image.
    ///
    /// Images must be odd so that they anticommute like the generators do.
    pub fn substitute(&self, images: &[GrassmannElement; 4]) -> Self {
        debug_assert!(images.iter().all(|e| e.even_part().max_abs_diff(&Self::zero()) == 0.0));
        let mut out = Self::zero();
        for m in Monomial::all() {
            let c = self.coefficient(m);
            if c == Complex64::new(0.0, 0.0) {
                continue;
            }
            let img = m
                .generators()
                .fold(Self::one(), |acc, g| acc * images[g.index()]);
            out += img.scale(c);
        }
        out
    }

    /// Relabels the `ξ` pair onto the `ζ` pair (`ξ → ζ`, `ξ* → ζ*`).
    pub fn relabel_xi_to_zeta(&self) -> Self {
        use Generator::*;
        self.substitute(&[
            Self::generator(Zeta),
            Self::generator(ZetaStar),
            Self::generator(Zeta),
            Self::generator(ZetaStar),
        ])
    }

    /// Checks that `self` is a linear odd element (only degree-one terms).
    pub fn require_linear_odd(&self) -> Result<()> {
        const NOISE: f64 = 1e-14;
        if let Some(m) = Monomial::all().find(|m| m.degree() != 1 && self.coefficient(*m).norm() > NOISE) {
            return Err(Error::InvalidDeltaArgument {
                monomial: m.label(),
            });
        }
        Ok(())
    }
}

impl Add for GrassmannElement {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl AddAssign for GrassmannElement {
    fn add_assign(&mut self, rhs: Self) {
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs.iter()) {
            *a += b;
        }
    }
}

impl Sub for GrassmannElement {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for GrassmannElement {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

impl Mul for GrassmannElement {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.multiply(&rhs)
    }
}

impl Mul<Complex64> for GrassmannElement {
    type Output = Self;
    fn mul(self, rhs: Complex64) -> Self {
        self.scale(rhs)
    }
}

impl Mul<f64> for GrassmannElement {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        self.scale(Complex64::new(rhs, 0.0))
    }
}

impl From<Generator> for GrassmannElement {
    fn from(g: Generator) -> Self {
        Self::generator(g)
    }
}

/// Coefficients below this modulus are omitted by the pretty-printer.
pub const PRINT_CUTOFF: f64 = 1e-13;

fn fmt_real(x: f64) -> String {
    // `{}` on f64 is the shortest round-trip form
    format!("{}", x)
}

/// Pretty-printed form, e.g. `1 + 0.5·ξξ* + (0.3-0.1i)·ξ`.
///
/// Terms follow [`Monomial::display_order`]. Real coefficients print in
/// shortest round-trip form with their sign folded into the separator,
/// unit coefficients are elided on non-constant monomials, complex ones
/// print as `(re±imi)`. Terms with modulus below [`PRINT_CUTOFF`] are
/// dropped and the empty sum prints as `0`.
impl fmt::Display for GrassmannElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for m in Monomial::display_order() {
            let c = self.coefficient(m);
            if c.norm() < PRINT_CUTOFF {
                continue;
            }
            let (negative, body) = if c.im.abs() < PRINT_CUTOFF {
                let mag = c.re.abs();
                let body = if m == Monomial::ONE {
                    fmt_real(mag)
                } else if mag == 1.0 {
                    m.label()
                } else {
                    format!("{}·{}", fmt_real(mag), m.label())
                };
                (c.re < 0.0, body)
            } else {
                let sign = if c.im < 0.0 { '-' } else { '+' };
                let z = format!("({}{}{}i)", fmt_real(c.re), sign, fmt_real(c.im.abs()));
                let body = if m == Monomial::ONE {
                    z
                } else {
                    format!("{}·{}", z, m.label())
                };
                (false, body)
            };
            match (first, negative) {
                (true, false) => write!(f, "{}", body)?,
                (true, true) => write!(f, "-{}", body)?,
                (false, false) => write!(f, " + {}", body)?,
                (false, true) => write!(f, " - {}", body)?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for GrassmannElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GrassmannElement({})", self)
    }
}

/// JSON coefficient table: all 16 monomials in canonical (bitmask) order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientTable {
    pub monomials: Vec<String>,
    pub coefficients: Vec<[f64; 2]>,
}

impl From<&GrassmannElement> for CoefficientTable {
    fn from(x: &GrassmannElement) -> Self {
        CoefficientTable {
            monomials: Monomial::all().map(Monomial::label).collect(),
            coefficients: x.coeffs.iter().map(|c| [c.re, c.im]).collect(),
        }
    }
}

impl TryFrom<&CoefficientTable> for GrassmannElement {
    type Error = Error;

    fn try_from(t: &CoefficientTable) -> Result<Self> {
        if t.coefficients.len() != 16 || t.monomials.len() != 16 {
            return Err(Error::Schema("coefficient table needs 16 entries".into()));
        }
        let mut out = GrassmannElement::zero();
        for (label, c) in t.monomials.iter().zip(t.coefficients.iter()) {
            let m = Monomial::all()
                .find(|m| &m.label() == label)
                .ok_or_else(|| Error::Schema(format!("unknown monomial `{label}`")))?;
            out.set_coefficient(m, Complex64::new(c[0], c[1]));
        }
        Ok(out)
    }
}

impl Serialize for GrassmannElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CoefficientTable::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for GrassmannElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let t = CoefficientTable::deserialize(d)?;
        GrassmannElement::try_from(&t).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Generator::*;

    fn g(x: Generator) -> GrassmannElement {
        GrassmannElement::generator(x)
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn xi_times_xi_star_is_canonical() {
        let p = g(Xi) * g(XiStar);
        assert_eq!(p.coefficient(Monomial::of(&[Xi, XiStar])), c(1.0, 0.0));
    }

    #[test]
    fn reversed_product_picks_up_sign() {
        let p = g(XiStar) * g(Xi);
        assert_eq!(p.coefficient(Monomial::of(&[Xi, XiStar])), c(-1.0, 0.0));
    }

    #[test]
    fn nilpotent_generators() {
        for x in Generator::ALL {
            assert_eq!(g(x) * g(x), GrassmannElement::zero());
        }
    }

    #[test]
    fn anticommutation_all_ordered_pairs() {
        for a in Generator::ALL {
            for b in Generator::ALL.into_iter().filter(|&b| b != a) {
                assert_eq!(g(a) * g(b), -(g(b) * g(a)));
            }
        }
    }

    #[test]
    fn adjoint_of_scaled_xi() {
        let gamma = c(0.3, -0.7);
        let x = g(Xi).scale(gamma);
        assert_eq!(x.adjoint(), g(XiStar).scale(gamma.conj()));
    }

    #[test]
    fn adjoint_fixes_xi_xi_star() {
        let x = g(Xi) * g(XiStar);
        assert_eq!(x.adjoint(), x);
    }

    #[test]
    fn berezin_basics() {
        assert_eq!(g(Xi).berezin_integrate(Xi), GrassmannElement::one());
        assert_eq!(GrassmannElement::one().berezin_integrate(Xi), GrassmannElement::zero());
        // ∫dζ (ζ* ζ) = -ζ*  (commute ζ to the front first)
        let x = g(ZetaStar) * g(Zeta);
        assert_eq!(x.berezin_integrate(Zeta), -g(ZetaStar));
    }

    #[test]
    fn pretty_print_reference_format() {
        let x = GrassmannElement::one()
            + (g(Xi) * g(XiStar)).scale(c(0.5, 0.0))
            + g(Xi).scale(c(0.3, -0.1));
        assert_eq!(x.to_string(), "1 + 0.5·ξξ* + (0.3-0.1i)·ξ");
    }

    #[test]
    fn pretty_print_signs_and_units() {
        let x = -g(Zeta) * g(ZetaStar) + g(XiStar).scale(c(-0.25, 0.0)) + g(Xi);
        assert_eq!(x.to_string(), "-ζζ* + ξ - 0.25·ξ*");
        assert_eq!(GrassmannElement::zero().to_string(), "0");
        assert_eq!(GrassmannElement::scalar(c(-2.0, 0.0)).to_string(), "-2");
    }

    #[test]
    fn display_order_is_even_then_odd() {
        let labels: Vec<String> = Monomial::display_order().iter().map(|m| m.label()).collect();
        assert_eq!(labels[0], "1");
        assert_eq!(labels[1], "ζζ*");
        assert_eq!(labels[7], "ζζ*ξξ*");
        assert_eq!(labels[8], "ζ");
        assert_eq!(labels[15], "ζ*ξξ*");
    }

    #[test]
    fn coefficient_table_round_trip() {
        let x = g(Zeta) * g(Xi) + GrassmannElement::scalar(c(0.0, 2.0));
        let json = serde_json::to_string(&x).unwrap();
        let back: GrassmannElement = serde_json::from_str(&json).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn linear_odd_check() {
        assert!((g(Zeta) - g(Xi)).require_linear_odd().is_ok());
        assert!((g(Zeta) + GrassmannElement::one()).require_linear_odd().is_err());
        assert!((g(Zeta) * g(Xi)).require_linear_odd().is_err());
    }
}
