//! Qubit channels through Grassmann characteristic functions.
//!
//! States are encoded as characteristic functions `χ(ξ) = Tr[ρ D(ξ)]` over a
//! pair of Grassmann generators, channels as Green functions acting by
//! Berezin convolution. Gaussian channels get an explicit two-qubit
//! dilation and numeric weak-degradability / anti-degradability
//! certificates. Every symbolic result has a dense-matrix counterpart in
//! [`qubit`] that it is tested against.

pub mod analysis;
pub mod catalog;
pub mod charfunc;
pub mod degradability;
pub mod error;
pub mod grassmann;
pub mod green;
pub mod qubit;
pub mod sampling;
pub mod spec;
pub mod suite;

pub use error::{Error, Result};
