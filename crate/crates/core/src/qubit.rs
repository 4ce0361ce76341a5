//! Dense qubit states and channels: Pauli transfer matrices, Kraus lists,
//! Choi matrices and CPTP checks. This is the numeric reference that every
//! Grassmann-side computation is compared against.

use nalgebra::{Matrix2, Matrix3, Matrix4, SymmetricEigen, Vector3, Vector4};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Choi eigenvalues below this are treated as negative.
pub const EIGENVALUE_FLOOR: f64 = -1e-9;
/// Tolerance for algebraic identities (trace preservation, round trips).
pub const ROUND_TRIP_TOL: f64 = 1e-12;
/// Largest off-diagonal entry accepted in a canonical 3×3 block.
pub const DIAGONAL_TOL: f64 = 1e-10;
/// Slack on state positivity.
pub const STATE_TOL: f64 = 1e-9;

fn cr(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// `(I, σ1, σ2, σ3)`.
pub fn pauli(k: usize) -> Matrix2<Complex64> {
    let (o, l, i) = (cr(0.0), cr(1.0), Complex64::new(0.0, 1.0));
    match k {
        0 => Matrix2::new(l, o, o, l),
        1 => Matrix2::new(o, l, l, o),
        2 => Matrix2::new(o, -i, i, o),
        3 => Matrix2::new(l, o, o, -l),
        _ => panic!("pauli index {k} out of range"),
    }
}

/// Qubit density matrix `[[p, γ], [γ*, 1−p]]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QubitState {
    p: f64,
    gamma: Complex64,
}

impl QubitState {
    pub fn new(p: f64, gamma: Complex64) -> Result<Self> {
        let s = Self { p, gamma };
        s.validate()?;
        Ok(s)
    }

    fn validate(&self) -> Result<()> {
        let gamma_sq = self.gamma.norm_sqr();
        let ok = self.p.is_finite()
            && self.p >= -STATE_TOL
            && self.p <= 1.0 + STATE_TOL
            && gamma_sq <= self.p * (1.0 - self.p) + STATE_TOL;
        if ok {
            Ok(())
        } else {
            Err(Error::NotPhysical { p: self.p, gamma_sq })
        }
    }

    pub fn maximally_mixed() -> Self {
        Self { p: 0.5, gamma: cr(0.0) }
    }

    /// `|0⟩⟨0|` for `bit = 0`, `|1⟩⟨1|` otherwise.
    pub fn basis(bit: u8) -> Self {
        Self {
            p: if bit == 0 { 1.0 } else { 0.0 },
            gamma: cr(0.0),
        }
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn gamma(&self) -> Complex64 {
        self.gamma
    }

    /// Bloch vector `r` with `ρ = (I + r·σ)/2`.
    pub fn bloch(&self) -> Vector3<f64> {
        Vector3::new(2.0 * self.gamma.re, -2.0 * self.gamma.im, 2.0 * self.p - 1.0)
    }

    pub fn from_bloch(r: &Vector3<f64>) -> Result<Self> {
        Self::new((1.0 + r[2]) / 2.0, Complex64::new(r[0] / 2.0, -r[1] / 2.0))
    }

    pub fn density_matrix(&self) -> Matrix2<Complex64> {
        Matrix2::new(cr(self.p), self.gamma, self.gamma.conj(), cr(1.0 - self.p))
    }

    /// Reads `(p, γ)` from a Hermitian unit-trace matrix.
    pub fn from_density_matrix(m: &Matrix2<Complex64>) -> Result<Self> {
        let herm = (m[(0, 1)] - m[(1, 0)].conj()).norm() + m[(0, 0)].im.abs() + m[(1, 1)].im.abs();
        let tr = (m[(0, 0)] + m[(1, 1)] - cr(1.0)).norm();
        if herm > STATE_TOL || tr > STATE_TOL {
            return Err(Error::NotPhysical {
                p: m[(0, 0)].re,
                gamma_sq: m[(0, 1)].norm_sqr(),
            });
        }
        Self::new(m[(0, 0)].re, m[(0, 1)])
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self.p - other.p).abs().max((self.gamma - other.gamma).norm())
    }
}

/// Canonical-form parameters: `r ↦ t + diag(λ) r`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CanonicalParams {
    pub t: [f64; 3],
    pub lambda: [f64; 3],
}

impl CanonicalParams {
    pub fn new(t: [f64; 3], lambda: [f64; 3]) -> Self {
        Self { t, lambda }
    }

    pub fn identity() -> Self {
        Self::new([0.0; 3], [1.0; 3])
    }

    pub fn ptm(&self) -> Matrix4<f64> {
        let mut m = Matrix4::identity();
        for k in 0..3 {
            m[(k + 1, 0)] = self.t[k];
            m[(k + 1, k + 1)] = self.lambda[k];
        }
        m
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.t
            .iter()
            .chain(self.lambda.iter())
            .zip(other.t.iter().chain(other.lambda.iter()))
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Choi-positivity diagnostics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CptpReport {
    pub is_cptp: bool,
    pub min_eigenvalue: f64,
    pub eigenvalues: [f64; 4],
    pub trace_deviation: f64,
}

/// A qubit channel held as its Pauli transfer matrix, optionally with a
/// Kraus list it was built from.
#[derive(Debug, Clone, PartialEq)]
pub struct QubitChannel {
    ptm: Matrix4<f64>,
    kraus: Option<Vec<Matrix2<Complex64>>>,
}

impl QubitChannel {
    pub fn identity() -> Self {
        Self::canonical(CanonicalParams::identity())
    }

    /// Channel in canonical form. Complete positivity is not checked here;
    /// see [`is_cptp`].
    pub fn canonical(params: CanonicalParams) -> Self {
        Self {
            ptm: params.ptm(),
            kraus: None,
        }
    }

    pub fn from_kraus(kraus: Vec<Matrix2<Complex64>>) -> Result<Self> {
        let ptm = ptm_from_kraus(&kraus)?;
        Ok(Self {
            ptm,
            kraus: Some(kraus),
        })
    }

    /// Accepts any real 4×4 matrix whose first row is `(1, 0, 0, 0)`.
    pub fn from_ptm(ptm: Matrix4<f64>) -> Result<Self> {
        let deviation = (ptm[(0, 0)] - 1.0)
            .abs()
            .max(ptm[(0, 1)].abs())
            .max(ptm[(0, 2)].abs())
            .max(ptm[(0, 3)].abs());
        if deviation > ROUND_TRIP_TOL {
            return Err(Error::NotTracePreserving { deviation });
        }
        Ok(Self { ptm, kraus: None })
    }

    pub fn ptm(&self) -> &Matrix4<f64> {
        &self.ptm
    }

    pub fn kraus(&self) -> Option<&[Matrix2<Complex64>]> {
        self.kraus.as_deref()
    }

    /// Translation part `t` of the Bloch map.
    pub fn translation(&self) -> Vector3<f64> {
        Vector3::new(self.ptm[(1, 0)], self.ptm[(2, 0)], self.ptm[(3, 0)])
    }

    /// Linear part `T` of the Bloch map.
    pub fn block(&self) -> Matrix3<f64> {
        self.ptm.fixed_view::<3, 3>(1, 1).into_owned()
    }

    pub fn canonical_params(&self) -> Result<CanonicalParams> {
        canonical_from_ptm(&self.ptm)
    }

    /// Image of an arbitrary (not necessarily Hermitian) operator.
    pub fn apply_operator(&self, x: &Matrix2<Complex64>) -> Matrix2<Complex64> {
        let coeffs = Vector4::from_fn(|k, _| (pauli(k) * x).trace() / cr(2.0));
        let mut out = Matrix2::zeros();
        for m in 0..4 {
            let mut s = cr(0.0);
            for k in 0..4 {
                s += cr(self.ptm[(m, k)]) * coeffs[k];
            }
            out += pauli(m) * s;
        }
        out
    }

    /// `Σ_ij N(|i⟩⟨j|) ⊗ |i⟩⟨j|`, i.e. twice the normalized Choi state; trace 2.
    ///
    /// Rows and columns are indexed `2·out + ref`.
    pub fn choi(&self) -> Matrix4<Complex64> {
        let mut choi = Matrix4::zeros();
        for i in 0..2 {
            for j in 0..2 {
                let mut unit = Matrix2::zeros();
                unit[(i, j)] = cr(1.0);
                let image = match &self.kraus {
                    Some(ks) => ks.iter().map(|a| a * unit * a.adjoint()).sum(),
                    None => self.apply_operator(&unit),
                };
                for a in 0..2 {
                    for b in 0..2 {
                        choi[(2 * a + i, 2 * b + j)] = image[(a, b)];
                    }
                }
            }
        }
        choi
    }
}

impl Serialize for QubitChannel {
    /// Serialized as `{"ptm": [[f64; 4]; 4]}`, rows first.
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let rows: [[f64; 4]; 4] = std::array::from_fn(|i| std::array::from_fn(|j| self.ptm[(i, j)]));
        let mut st = serializer.serialize_struct("QubitChannel", 1)?;
        st.serialize_field("ptm", &rows)?;
        st.end()
    }
}

/// Pauli transfer matrix of a Kraus list:
/// `R_ij = Tr[σ_i Σ_k A_k σ_j A_k†] / 2`.
pub fn ptm_from_kraus(kraus: &[Matrix2<Complex64>]) -> Result<Matrix4<f64>> {
    let completeness: Matrix2<Complex64> = kraus.iter().map(|a| a.adjoint() * a).sum();
    let deviation = (completeness - Matrix2::identity())
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    if kraus.is_empty() || deviation > ROUND_TRIP_TOL {
        return Err(Error::NotTracePreserving {
            deviation: if kraus.is_empty() { 1.0 } else { deviation },
        });
    }
    Ok(Matrix4::from_fn(|i, j| {
        let image: Matrix2<Complex64> = kraus.iter().map(|a| a * pauli(j) * a.adjoint()).sum();
        (pauli(i) * image).trace().re / 2.0
    }))
}

/// Reads `(t, λ)` from a transfer matrix whose 3×3 block is diagonal.
pub fn canonical_from_ptm(ptm: &Matrix4<f64>) -> Result<CanonicalParams> {
    let mut max_off_diagonal: f64 = 0.0;
    for i in 1..4 {
        for j in 1..4 {
            if i != j {
                max_off_diagonal = max_off_diagonal.max(ptm[(i, j)].abs());
            }
        }
    }
    if max_off_diagonal > DIAGONAL_TOL {
        return Err(Error::NonDiagonalBlock { max_off_diagonal });
    }
    Ok(CanonicalParams::new(
        [ptm[(1, 0)], ptm[(2, 0)], ptm[(3, 0)]],
        [ptm[(1, 1)], ptm[(2, 2)], ptm[(3, 3)]],
    ))
}

fn hermitian_eigenvalues(m: &Matrix4<Complex64>) -> [f64; 4] {
    let herm = (m + m.adjoint()) * cr(0.5);
    let eig = SymmetricEigen::new(herm);
    let mut v = [0.0; 4];
    v.iter_mut().zip(eig.eigenvalues.iter()).for_each(|(a, b)| *a = *b);
    v.sort_by(|a, b| a.total_cmp(b));
    v
}

/// Choi positivity (eigenvalues ≥ −1e-9) plus trace preservation
/// (output partial trace of the Choi matrix equals `I` within 1e-12).
pub fn is_cptp(ch: &QubitChannel) -> CptpReport {
    let choi = ch.choi();
    let eigenvalues = hermitian_eigenvalues(&choi);
    let min_eigenvalue = eigenvalues[0];
    let mut trace_deviation: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            let partial = choi[(i, j)] + choi[(2 + i, 2 + j)];
            let target = if i == j { cr(1.0) } else { cr(0.0) };
            trace_deviation = trace_deviation.max((partial - target).norm());
        }
    }
    CptpReport {
        is_cptp: min_eigenvalue >= EIGENVALUE_FLOOR && trace_deviation <= ROUND_TRIP_TOL,
        min_eigenvalue,
        eigenvalues,
        trace_deviation,
    }
}

pub(crate) fn require_cptp(ch: &QubitChannel) -> Result<CptpReport> {
    let report = is_cptp(ch);
    if report.trace_deviation > ROUND_TRIP_TOL {
        return Err(Error::NotTracePreserving {
            deviation: report.trace_deviation,
        });
    }
    if !report.is_cptp {
        return Err(Error::NotCptp {
            min_eigenvalue: report.min_eigenvalue,
        });
    }
    Ok(report)
}

/// Output state: `Σ A ρ A†` for Kraus channels, Bloch map `t + T r` otherwise.
pub fn apply_channel(ch: &QubitChannel, rho: &QubitState) -> Result<QubitState> {
    require_cptp(ch)?;
    Ok(apply_unchecked(ch, rho))
}

/// [`apply_channel`] without the CPTP gate, for callers that already checked.
pub(crate) fn apply_unchecked(ch: &QubitChannel, rho: &QubitState) -> QubitState {
    let out = match ch.kraus() {
        Some(ks) => {
            let m = rho.density_matrix();
            let image: Matrix2<Complex64> = ks.iter().map(|a| a * m * a.adjoint()).sum();
            QubitState {
                p: image[(0, 0)].re,
                gamma: image[(0, 1)],
            }
        }
        None => {
            let r = ch.translation() + ch.block() * rho.bloch();
            QubitState {
                p: (1.0 + r[2]) / 2.0,
                gamma: Complex64::new(r[0] / 2.0, -r[1] / 2.0),
            }
        }
    };
    debug_assert!(out.validate().is_ok(), "CPTP image left the state space: {out:?}");
    out
}

/// `second ∘ first` at the transfer-matrix level.
pub fn compose(second: &QubitChannel, first: &QubitChannel) -> QubitChannel {
    QubitChannel {
        ptm: second.ptm * first.ptm,
        kraus: None,
    }
}
