use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::Matrix2;
use num_complex::Complex64;

use super::GrassmannElement;

/// A 2×2 operator with Grassmann-valued entries on the qubit space,
/// basis `(|0⟩, |1⟩)`.
///
/// Entries are kept in standard supermatrix format: `|0⟩` is the even basis
/// ket, `|1⟩` the odd one, and coefficients sit to the right of the kets.
/// In that format the graded operator product is plain matrix
/// multiplication, numeric matrices keep their usual entries, and a
/// Grassmann scalar `g` acts as `diag(g, ĝ)` with `ĝ` its grade
/// involution. Consequently `σ±` anticommute with odd generators while
/// `I` and `σ3` commute with everything.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct OperatorElement {
    entries: [[GrassmannElement; 2]; 2],
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

impl OperatorElement {
    pub fn from_entries(entries: [[GrassmannElement; 2]; 2]) -> Self {
        Self { entries }
    }

    pub fn entries(&self) -> &[[GrassmannElement; 2]; 2] {
        &self.entries
    }

    pub fn entry(&self, row: usize, col: usize) -> &GrassmannElement {
        &self.entries[row][col]
    }

    pub fn zero() -> Self {
        Self::from_entries([[GrassmannElement::zero(); 2]; 2])
    }

    pub fn identity() -> Self {
        Self::from_matrix(&Matrix2::identity())
    }

    /// Numeric operator with complex entries.
    pub fn from_matrix(m: &Matrix2<Complex64>) -> Self {
        let mut entries = [[GrassmannElement::zero(); 2]; 2];
        for (i, row) in entries.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = GrassmannElement::scalar(m[(i, j)]);
            }
        }
        Self { entries }
    }

    /// Left multiplication by a Grassmann scalar.
    pub fn scalar(g: GrassmannElement) -> Self {
        Self::from_entries([
            [g, GrassmannElement::zero()],
            [GrassmannElement::zero(), g.grade_involution()],
        ])
    }

    /// `σ+ = |1⟩⟨0|`.
    pub fn sigma_plus() -> Self {
        Self::from_matrix(&Matrix2::new(c(0.0), c(0.0), c(1.0), c(0.0)))
    }

    /// `σ− = |0⟩⟨1|`.
    pub fn sigma_minus() -> Self {
        Self::from_matrix(&Matrix2::new(c(0.0), c(1.0), c(0.0), c(0.0)))
    }

    pub fn sigma3() -> Self {
        Self::from_matrix(&Matrix2::new(c(1.0), c(0.0), c(0.0), c(-1.0)))
    }

    pub fn multiply(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for i in 0..2 {
            for j in 0..2 {
                out.entries[i][j] = self.entries[i][0] * rhs.entries[0][j]
                    + self.entries[i][1] * rhs.entries[1][j];
            }
        }
        out
    }

    /// Sum of the diagonal entries.
    pub fn trace(&self) -> GrassmannElement {
        self.entries[0][0] + self.entries[1][1]
    }

    /// Operator with every entry rewritten through `f`.
    pub fn map_entries(&self, f: impl Fn(&GrassmannElement) -> GrassmannElement) -> Self {
        let mut out = *self;
        for row in out.entries.iter_mut() {
            for e in row.iter_mut() {
                *e = f(e);
            }
        }
        out
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (0..2)
            .flat_map(|i| (0..2).map(move |j| (i, j)))
            .map(|(i, j)| self.entries[i][j].max_abs_diff(&other.entries[i][j]))
            .fold(0.0, f64::max)
    }
}

impl Mul for OperatorElement {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.multiply(&rhs)
    }
}

impl Add for OperatorElement {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for i in 0..2 {
            for j in 0..2 {
                self.entries[i][j] += rhs.entries[i][j];
            }
        }
        self
    }
}

impl Neg for OperatorElement {
    type Output = Self;
    fn neg(self) -> Self {
        self.map_entries(|e| -*e)
    }
}

impl Sub for OperatorElement {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul<f64> for OperatorElement {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        self.map_entries(|e| *e * rhs)
    }
}
