//! Versioned JSON input format for channels.
//!
//! ```json
//! {"schema_version": 1, "type": "canonical", "t": [0, 0, 0.25], "lambda": [0.86, 0.86, 0.75]}
//! {"schema_version": 1, "type": "kraus", "matrices": [[[1,0],[0,0],[0,0],[0.5,0]], ...]}
//! {"schema_version": 1, "type": "named", "name": "amplitude_damping", "params": {"n": 0.75}}
//! ```
//!
//! Kraus matrices are lists of `[re, im]` pairs, either flat row-major
//! (four pairs) or nested as two rows of two.

use nalgebra::Matrix2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::catalog::{self, ChannelName, Params};
use crate::error::{Error, Result};
use crate::qubit::{CanonicalParams, QubitChannel};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum KrausMatrix {
    Flat([[f64; 2]; 4]),
    Nested([[[f64; 2]; 2]; 2]),
}

impl KrausMatrix {
    pub fn to_matrix(&self) -> Matrix2<Complex64> {
        let c = |p: [f64; 2]| Complex64::new(p[0], p[1]);
        match self {
            KrausMatrix::Flat(e) => Matrix2::new(c(e[0]), c(e[1]), c(e[2]), c(e[3])),
            KrausMatrix::Nested(r) => Matrix2::new(c(r[0][0]), c(r[0][1]), c(r[1][0]), c(r[1][1])),
        }
    }

    pub fn from_matrix(m: &Matrix2<Complex64>) -> Self {
        let p = |z: Complex64| [z.re, z.im];
        KrausMatrix::Flat([p(m[(0, 0)]), p(m[(0, 1)]), p(m[(1, 0)]), p(m[(1, 1)])])
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ChannelSpec {
    Canonical { t: [f64; 3], lambda: [f64; 3] },
    Kraus { matrices: Vec<KrausMatrix> },
    Named { name: String, params: Params },
}

impl ChannelSpec {
    pub fn canonical(p: &CanonicalParams) -> Self {
        ChannelSpec::Canonical {
            t: p.t,
            lambda: p.lambda,
        }
    }

    pub fn named(name: ChannelName, params: Params) -> Self {
        ChannelSpec::Named {
            name: name.as_str().to_string(),
            params,
        }
    }

    /// The channel, without CPTP checks beyond what its form requires
    /// (Kraus lists must be trace preserving).
    pub fn to_channel(&self) -> Result<QubitChannel> {
        match self {
            ChannelSpec::Canonical { t, lambda } => {
                if t.iter().chain(lambda).any(|x| !x.is_finite()) {
                    return Err(Error::Schema("canonical parameters must be finite".into()));
                }
                Ok(QubitChannel::canonical(CanonicalParams::new(*t, *lambda)))
            }
            ChannelSpec::Kraus { matrices } => {
                if matrices.is_empty() {
                    return Err(Error::Schema("kraus spec needs at least one matrix".into()));
                }
                QubitChannel::from_kraus(matrices.iter().map(KrausMatrix::to_matrix).collect())
            }
            ChannelSpec::Named { name, params } => catalog::build(name.parse()?, params),
        }
    }

    pub fn to_document(&self) -> ChannelDocument {
        ChannelDocument {
            schema_version: SCHEMA_VERSION,
            spec: self.clone(),
        }
    }
}

/// A [`ChannelSpec`] with its schema version.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChannelDocument {
    pub schema_version: u32,
    #[serde(flatten)]
    pub spec: ChannelSpec,
}

pub fn parse_channel_spec(json: &str) -> Result<ChannelSpec> {
    let value: serde_json::Value = serde_json::from_str(json).map_err(|e| Error::Schema(e.to_string()))?;
    match value.get("schema_version").and_then(|v| v.as_u64()) {
        Some(v) if v == SCHEMA_VERSION as u64 => {}
        Some(v) => return Err(Error::Schema(format!("unsupported schema_version {v}"))),
        None => return Err(Error::Schema("missing integer field `schema_version`".into())),
    }
    let doc: ChannelDocument = serde_json::from_value(value).map_err(|e| Error::Schema(e.to_string()))?;
    Ok(doc.spec)
}
