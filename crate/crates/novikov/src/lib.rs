//! Exact sweeping of filtered 2-dimensional Novikov chain complexes.
//!
//! The crate validates Novikov differentials over Z((t)), runs the spectral
//! sequence sweeping algorithm and the row cancellation algorithm, rebuilds
//! the spectral sequence pages, replays the induced critical-point
//! cancellations and reports periodic orbits born along the way.
//!
//! Arithmetic is generic over the integer coefficient type in [`ring`]; every
//! higher layer works with the arbitrary-precision aliases [`Poly`] and
//! [`Scalar`].

pub mod cancellation;
pub mod cli;
pub mod complex;
pub mod error;
pub mod ring;
pub mod spectral;
pub mod sssa;

pub use error::{Error, Result};

/// Laurent polynomial with arbitrary-precision integer coefficients.
pub type Poly = ring::LaurentPoly<num_bigint::BigInt>;
/// Element of Z((t)) used by every matrix in the crate.
pub type Scalar = ring::NovikovScalar<num_bigint::BigInt>;
