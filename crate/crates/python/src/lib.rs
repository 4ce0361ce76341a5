//! Python bindings. Channels, states and Green functions are exposed as
//! classes; reports, listings and suite results cross the boundary as JSON
//! strings in the same format the command line tool writes.

use nalgebra::Matrix2;
use num_complex::Complex64;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use qcharfn::analysis::{analyze_spec, AnalysisOptions};
use qcharfn::catalog::{self, ChannelName, Params};
use qcharfn::charfunc::{char_function, state_from_char, CharFunction};
use qcharfn::degradability::{
    certify_with_tol, classify_by_angles, dilation_from_angles, weakly_complementary, DegradabilityVerdict, Dilation,
    CERTIFICATE_TOL,
};
use qcharfn::green::{angles_from_gaussian, apply_green, detect_gaussian, green_from_canonical, AngleParams, GreenFunction};
use qcharfn::qubit::{apply_channel, compose, is_cptp, CanonicalParams, QubitChannel, QubitState};
use qcharfn::spec::{parse_channel_spec, ChannelSpec};
use qcharfn::suite::{run_suite, SuiteConfig, DEFAULT_SEED, DEFAULT_TRIALS};

create_exception!(qcharfn, ParseError, PyValueError, "Malformed input.");
create_exception!(qcharfn, ValidationError, PyValueError, "Input that parses but is not physical.");

fn py_err(e: qcharfn::Error) -> PyErr {
    if e.is_validation() {
        ValidationError::new_err(e.to_string())
    } else {
        ParseError::new_err(e.to_string())
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("serializable")
}

type Rows = Vec<Vec<f64>>;

fn rows4(m: &nalgebra::Matrix4<f64>) -> Rows {
    (0..4).map(|i| (0..4).map(|j| m[(i, j)]).collect()).collect()
}

#[pyclass(name = "QubitState", module = "qcharfn", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyQubitState(QubitState);

#[pymethods]
impl PyQubitState {
    /// `ρ = [[p, γ], [γ*, 1 - p]]`.
    #[new]
    #[pyo3(signature = (p, gamma = Complex64::new(0.0, 0.0)))]
    fn new(p: f64, gamma: Complex64) -> PyResult<Self> {
        QubitState::new(p, gamma).map(Self).map_err(py_err)
    }

    #[staticmethod]
    fn from_bloch(x: f64, y: f64, z: f64) -> PyResult<Self> {
        QubitState::from_bloch(&nalgebra::Vector3::new(x, y, z)).map(Self).map_err(py_err)
    }

    #[getter]
    fn p(&self) -> f64 {
        self.0.p()
    }

    #[getter]
    fn gamma(&self) -> Complex64 {
        self.0.gamma()
    }

    fn bloch(&self) -> (f64, f64, f64) {
        let r = self.0.bloch();
        (r.x, r.y, r.z)
    }

    fn density_matrix(&self) -> Vec<Vec<Complex64>> {
        let m = self.0.density_matrix();
        (0..2).map(|i| (0..2).map(|j| m[(i, j)]).collect()).collect()
    }

    fn char_function(&self) -> PyCharFunction {
        PyCharFunction(char_function(&self.0))
    }

    fn max_abs_diff(&self, other: &PyQubitState) -> f64 {
        self.0.max_abs_diff(&other.0)
    }

    fn __repr__(&self) -> String {
        format!("QubitState(p={}, gamma={})", self.0.p(), self.0.gamma())
    }
}

#[pyclass(name = "CharFunction", module = "qcharfn", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyCharFunction(CharFunction);

#[pymethods]
impl PyCharFunction {
    /// Sixteen coefficients in bitmask order over ζ, ζ*, ξ, ξ*.
    fn coefficients(&self) -> Vec<Complex64> {
        self.0.body().coefficients().to_vec()
    }

    fn to_state(&self) -> PyResult<PyQubitState> {
        state_from_char(&self.0).map(PyQubitState).map_err(py_err)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }
}

#[pyclass(name = "GreenFunction", module = "qcharfn", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyGreenFunction(GreenFunction);

#[pymethods]
impl PyGreenFunction {
    fn coefficients(&self) -> Vec<Complex64> {
        self.0.body.coefficients().to_vec()
    }

    fn apply(&self, chi: &PyCharFunction) -> PyResult<PyCharFunction> {
        apply_green(&self.0, &chi.0).map(PyCharFunction).map_err(py_err)
    }

    /// `(a, b, c)` when Gaussian, else `None`.
    fn gaussian(&self) -> Option<(Complex64, Complex64, f64)> {
        detect_gaussian(&self.0).map(|g| (g.a, g.b, g.c))
    }

    /// `(θ, φ, q)` when Gaussian, else `None`.
    fn angles(&self) -> PyResult<Option<(f64, f64, f64)>> {
        match detect_gaussian(&self.0) {
            Some(g) => {
                let a = angles_from_gaussian(&g).map_err(py_err)?;
                Ok(Some((a.theta, a.phi, a.q)))
            }
            None => Ok(None),
        }
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }
}

#[pyclass(name = "Channel", module = "qcharfn", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyChannel(QubitChannel);

#[pymethods]
impl PyChannel {
    #[staticmethod]
    fn canonical(t: [f64; 3], lam: [f64; 3]) -> PyResult<Self> {
        let ch = QubitChannel::canonical(CanonicalParams::new(t, lam));
        let report = is_cptp(&ch);
        if !report.is_cptp {
            return Err(py_err(qcharfn::Error::NotCptp {
                min_eigenvalue: report.min_eigenvalue,
            }));
        }
        Ok(Self(ch))
    }

    #[staticmethod]
    fn named(name: &str, params: Params) -> PyResult<Self> {
        let name: ChannelName = name.parse().map_err(py_err)?;
        catalog::build(name, &params).map(Self).map_err(py_err)
    }

    /// Kraus operators as nested 2×2 lists of complex numbers.
    #[staticmethod]
    fn from_kraus(ops: Vec<[[Complex64; 2]; 2]>) -> PyResult<Self> {
        let ops = ops.iter().map(|k| Matrix2::new(k[0][0], k[0][1], k[1][0], k[1][1])).collect();
        QubitChannel::from_kraus(ops).map(Self).map_err(py_err)
    }

    /// Parses a channel spec document.
    #[staticmethod]
    fn from_json(spec: &str) -> PyResult<Self> {
        parse_channel_spec(spec).and_then(|s| s.to_channel()).map(Self).map_err(py_err)
    }

    fn ptm(&self) -> Rows {
        rows4(self.0.ptm())
    }

    /// `(t, λ)`; fails when the transfer block is not diagonal.
    fn canonical_params(&self) -> PyResult<([f64; 3], [f64; 3])> {
        self.0.canonical_params().map(|p| (p.t, p.lambda)).map_err(py_err)
    }

    /// `(is_cptp, min Choi eigenvalue, trace deviation)`.
    fn cptp(&self) -> (bool, f64, f64) {
        let r = is_cptp(&self.0);
        (r.is_cptp, r.min_eigenvalue, r.trace_deviation)
    }

    fn apply(&self, rho: &PyQubitState) -> PyResult<PyQubitState> {
        apply_channel(&self.0, &rho.0).map(PyQubitState).map_err(py_err)
    }

    /// `self ∘ first`.
    fn after(&self, first: &PyChannel) -> Self {
        Self(compose(&self.0, &first.0))
    }

    fn green(&self) -> PyResult<PyGreenFunction> {
        let p = self.0.canonical_params().map_err(py_err)?;
        green_from_canonical(&p).map(PyGreenFunction).map_err(py_err)
    }

    fn __repr__(&self) -> String {
        format!("Channel(ptm={:?})", self.ptm())
    }
}

#[pyclass(name = "Verdict", module = "qcharfn", frozen, skip_from_py_object)]
struct PyVerdict(DegradabilityVerdict);

#[pymethods]
impl PyVerdict {
    #[getter]
    fn kind(&self) -> String {
        format!("{:?}", self.0.kind)
    }

    #[getter]
    fn residual(&self) -> f64 {
        self.0.residual
    }

    #[getter]
    fn min_choi_eigenvalue(&self) -> f64 {
        self.0.min_choi_eigenvalue
    }

    #[getter]
    fn witness(&self) -> Option<PyChannel> {
        self.0.witness.clone().map(PyChannel)
    }

    fn to_json(&self) -> String {
        to_json(&self.0)
    }

    fn __repr__(&self) -> String {
        format!("Verdict(kind={:?}, residual={:e})", self.0.kind, self.0.residual)
    }
}

/// Qubit-qubit dilation `U` with environment `diag(q, 1 - q)`.
#[pyclass(name = "Dilation", module = "qcharfn", frozen, skip_from_py_object)]
struct PyDilation {
    angles: AngleParams,
    inner: Dilation,
}

#[pymethods]
impl PyDilation {
    #[new]
    fn new(theta: f64, phi: f64, q: f64) -> PyResult<Self> {
        if !(0.0..=1.0).contains(&q) {
            return Err(py_err(qcharfn::Error::OutOfRange { name: "q".into(), value: q }));
        }
        let angles = AngleParams::new(theta, phi, q);
        Ok(Self {
            inner: dilation_from_angles(&angles),
            angles,
        })
    }

    fn system_channel(&self) -> PyChannel {
        PyChannel(self.inner.system_channel())
    }

    fn complementary(&self) -> PyChannel {
        PyChannel(weakly_complementary(&self.inner))
    }

    /// Predicted kind from `cos2θ / cos2φ`.
    fn prediction(&self) -> String {
        format!("{:?}", classify_by_angles(&self.angles).kind)
    }

    #[pyo3(signature = (tol = CERTIFICATE_TOL))]
    fn certify(&self, tol: f64) -> PyVerdict {
        let ch = self.inner.system_channel();
        PyVerdict(certify_with_tol(&ch, &weakly_complementary(&self.inner), tol))
    }
}

/// Full analysis of a channel spec document, returned as report JSON.
#[pyfunction]
#[pyo3(signature = (spec, tol = CERTIFICATE_TOL))]
fn analyze(spec: &str, tol: f64) -> PyResult<String> {
    let spec = parse_channel_spec(spec).map_err(py_err)?;
    run_analysis(&spec, tol)
}

#[pyfunction]
#[pyo3(signature = (name, params, tol = CERTIFICATE_TOL))]
fn analyze_named(name: &str, params: Params, tol: f64) -> PyResult<String> {
    let name: ChannelName = name.parse().map_err(py_err)?;
    run_analysis(&ChannelSpec::named(name, params), tol)
}

fn run_analysis(spec: &ChannelSpec, tol: f64) -> PyResult<String> {
    let opts = AnalysisOptions {
        certificate_tol: tol,
        ..AnalysisOptions::default()
    };
    analyze_spec(spec, &opts).map(|r| to_json(&r)).map_err(py_err)
}

/// The named-channel listing as JSON.
#[pyfunction]
fn catalog_json() -> String {
    to_json(&catalog::listing())
}

/// Runs the randomized suite and returns its report as JSON.
#[pyfunction]
#[pyo3(signature = (seed = DEFAULT_SEED, trials = DEFAULT_TRIALS, tol = SuiteConfig::default().tol))]
fn verify(seed: u64, trials: usize, tol: f64) -> PyResult<String> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(ParseError::new_err(format!("tol must be positive, got {tol}")));
    }
    Ok(to_json(&run_suite(&SuiteConfig { seed, trials, tol })))
}

#[pymodule]
#[pyo3(name = "qcharfn")]
fn init(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyQubitState>()?;
    m.add_class::<PyCharFunction>()?;
    m.add_class::<PyGreenFunction>()?;
    m.add_class::<PyChannel>()?;
    m.add_class::<PyVerdict>()?;
    m.add_class::<PyDilation>()?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add_function(wrap_pyfunction!(analyze_named, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_json, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add("ParseError", m.py().get_type::<ParseError>())?;
    m.add("ValidationError", m.py().get_type::<ValidationError>())?;
    Ok(())
}
