//! The six named example channels: constructors, Kraus forms, the shipped
//! listing and the verdicts claimed for each.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use nalgebra::Matrix2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::degradability::PredictedKind;
use crate::error::{Error, Result};
use crate::qubit::{pauli, CanonicalParams, QubitChannel};

pub type Params = BTreeMap<String, f64>;

/// Offset from a classification boundary inside which claims are not
/// asserted.
pub const BOUNDARY_BAND: f64 = 0.02;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChannelName {
    BitFlip,
    PhaseFlip,
    BitPhaseFlip,
    Depolarizing,
    AmplitudeDamping,
    GeneralizedAmplitudeDamping,
}

impl ChannelName {
    pub const ALL: [ChannelName; 6] = [
        ChannelName::BitFlip,
        ChannelName::PhaseFlip,
        ChannelName::BitPhaseFlip,
        ChannelName::Depolarizing,
        ChannelName::AmplitudeDamping,
        ChannelName::GeneralizedAmplitudeDamping,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ChannelName::BitFlip => "bit_flip",
            ChannelName::PhaseFlip => "phase_flip",
            ChannelName::BitPhaseFlip => "bit_phase_flip",
            ChannelName::Depolarizing => "depolarizing",
            ChannelName::AmplitudeDamping => "amplitude_damping",
            ChannelName::GeneralizedAmplitudeDamping => "generalized_amplitude_damping",
        }
    }

    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            ChannelName::AmplitudeDamping => &["n"],
            ChannelName::GeneralizedAmplitudeDamping => &["n", "s"],
            _ => &["s"],
        }
    }

    pub fn entry(self) -> &'static CatalogEntry {
        listing()
            .iter()
            .find(|e| e.name == self)
            .expect("every channel has a catalog entry")
    }
}

impl fmt::Display for ChannelName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ChannelName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ChannelName::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::UnknownChannel(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamRange {
    pub name: String,
    pub min: f64,
    pub max: f64,
}

/// One row of the shipped listing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: ChannelName,
    pub title: String,
    pub description: String,
    pub params: Vec<ParamRange>,
    pub t: [String; 3],
    pub lambda: [String; 3],
    pub green: String,
    pub environment: String,
    pub gaussian: bool,
    pub claim: String,
}

#[derive(Deserialize)]
struct CatalogFile {
    schema_version: u32,
    channels: Vec<CatalogEntry>,
}

pub const CATALOG_JSON: &str = include_str!("../data/catalog.json");

pub fn listing() -> &'static [CatalogEntry] {
    static LISTING: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    LISTING.get_or_init(|| {
        let file: CatalogFile = serde_json::from_str(CATALOG_JSON).expect("bundled catalog parses");
        assert_eq!(file.schema_version, 1);
        file.channels
    })
}

fn check_params(name: ChannelName, params: &Params) -> Result<()> {
    for key in params.keys() {
        if !name.param_names().contains(&key.as_str()) {
            return Err(Error::UnexpectedParam(key.clone()));
        }
    }
    for &key in name.param_names() {
        let value = *params.get(key).ok_or_else(|| Error::MissingParam(key.to_string()))?;
        if !(0.0..=1.0).contains(&value) {
            return Err(Error::OutOfRange {
                name: key.to_string(),
                value,
            });
        }
    }
    Ok(())
}

/// Canonical parameters for a named channel.
pub fn canonical(name: ChannelName, params: &Params) -> Result<CanonicalParams> {
    check_params(name, params)?;
    let get = |k: &str| params[k];
    Ok(match name {
        ChannelName::BitFlip => {
            let l = 2.0 * get("s") - 1.0;
            CanonicalParams::new([0.0; 3], [1.0, l, l])
        }
        ChannelName::PhaseFlip => {
            let l = 2.0 * get("s") - 1.0;
            CanonicalParams::new([0.0; 3], [l, l, 1.0])
        }
        ChannelName::BitPhaseFlip => {
            let l = 2.0 * get("s") - 1.0;
            CanonicalParams::new([0.0; 3], [l, 1.0, l])
        }
        ChannelName::Depolarizing => {
            let l = 1.0 - get("s");
            CanonicalParams::new([0.0; 3], [l, l, l])
        }
        ChannelName::AmplitudeDamping => {
            let n = get("n");
            CanonicalParams::new([0.0, 0.0, 1.0 - n], [n.sqrt(), n.sqrt(), n])
        }
        ChannelName::GeneralizedAmplitudeDamping => {
            let (n, s) = (get("n"), get("s"));
            CanonicalParams::new([0.0, 0.0, (1.0 - n) * (2.0 * s - 1.0)], [n.sqrt(), n.sqrt(), n])
        }
    })
}

/// Canonical-form channel for a named channel.
pub fn build(name: ChannelName, params: &Params) -> Result<QubitChannel> {
    canonical(name, params).map(QubitChannel::canonical)
}

fn cr(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn real(a: f64, b: f64, c: f64, d: f64) -> Matrix2<Complex64> {
    Matrix2::new(cr(a), cr(b), cr(c), cr(d))
}

/// Textbook Kraus operators for a named channel.
pub fn kraus(name: ChannelName, params: &Params) -> Result<Vec<Matrix2<Complex64>>> {
    check_params(name, params)?;
    let get = |k: &str| params[k];
    let pauli_mix = |k: usize, s: f64| vec![pauli(0) * cr(s.sqrt()), pauli(k) * cr((1.0 - s).sqrt())];
    Ok(match name {
        ChannelName::BitFlip => pauli_mix(1, get("s")),
        ChannelName::PhaseFlip => pauli_mix(3, get("s")),
        ChannelName::BitPhaseFlip => pauli_mix(2, get("s")),
        ChannelName::Depolarizing => {
            let s = get("s");
            let mut ops = vec![pauli(0) * cr((1.0 - 0.75 * s).sqrt())];
            ops.extend((1..4).map(|k| pauli(k) * cr((s / 4.0).sqrt())));
            ops
        }
        ChannelName::AmplitudeDamping => {
            let n = get("n");
            vec![real(1.0, 0.0, 0.0, n.sqrt()), real(0.0, (1.0 - n).sqrt(), 0.0, 0.0)]
        }
        ChannelName::GeneralizedAmplitudeDamping => {
            let (n, s) = (get("n"), get("s"));
            let (a, b) = (s.sqrt(), (1.0 - s).sqrt());
            vec![
                real(1.0, 0.0, 0.0, n.sqrt()) * cr(a),
                real(0.0, (1.0 - n).sqrt(), 0.0, 0.0) * cr(a),
                real(n.sqrt(), 0.0, 0.0, 1.0) * cr(b),
                real(0.0, 0.0, (1.0 - n).sqrt(), 0.0) * cr(b),
            ]
        }
    })
}

/// Verdict claimed for a named channel, or `None` when no claim is made
/// (non-Gaussian channels) or the parameters sit within
/// [`BOUNDARY_BAND`] of a classification boundary.
pub fn claimed_verdict(name: ChannelName, params: &Params) -> Result<Option<PredictedKind>> {
    check_params(name, params)?;
    Ok(match name {
        ChannelName::BitFlip | ChannelName::BitPhaseFlip => Some(PredictedKind::WeaklyDegradable),
        ChannelName::PhaseFlip | ChannelName::Depolarizing => None,
        ChannelName::AmplitudeDamping | ChannelName::GeneralizedAmplitudeDamping => {
            let n = params["n"];
            if (n - 0.5).abs() < BOUNDARY_BAND {
                None
            } else if n > 0.5 {
                Some(PredictedKind::WeaklyDegradable)
            } else if name == ChannelName::AmplitudeDamping || params["s"] == 1.0 {
                Some(PredictedKind::AntiDegradable)
            } else {
                Some(PredictedKind::NullCapacityClaimed)
            }
        }
    })
}

/// Flags attached to in-range but unusual parameters.
pub fn parameter_flags(name: ChannelName, params: &Params) -> Vec<String> {
    let mut flags = Vec::new();
    if name == ChannelName::GeneralizedAmplitudeDamping && params.get("s") == Some(&1.0) {
        flags.push(
            "s = 1 is excluded from the usual generalized amplitude damping family; it reduces to plain amplitude damping"
                .to_string(),
        );
    }
    flags
}

/// Recognizes a canonical channel as a catalog member, trying the
/// families in listing order.
pub fn identify(p: &CanonicalParams, tol: f64) -> Option<(ChannelName, Params)> {
    let close = |a: &CanonicalParams| a.max_abs_diff(p) <= tol;
    let one = |k: &str, v: f64| Params::from([(k.to_string(), v)]);
    let mut candidates: Vec<(ChannelName, Params)> = vec![
        (ChannelName::BitFlip, one("s", (p.lambda[1] + 1.0) / 2.0)),
        (ChannelName::PhaseFlip, one("s", (p.lambda[0] + 1.0) / 2.0)),
        (ChannelName::BitPhaseFlip, one("s", (p.lambda[0] + 1.0) / 2.0)),
        (ChannelName::Depolarizing, one("s", 1.0 - p.lambda[0])),
        (ChannelName::AmplitudeDamping, one("n", p.lambda[2])),
    ];
    let n = p.lambda[2];
    if n < 1.0 {
        let s = (p.t[2] / (1.0 - n) + 1.0) / 2.0;
        candidates.push((
            ChannelName::GeneralizedAmplitudeDamping,
            Params::from([("n".to_string(), n), ("s".to_string(), s)]),
        ));
    }
    candidates.into_iter().find(|(name, params)| {
        canonical(*name, params).map(|c| close(&c)).unwrap_or(false)
    })
}
