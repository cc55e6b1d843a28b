//! Binomial steady states and exact mixed volumes for mass-action reaction
//! networks.
//!
//! The pipeline is: parse a [`network::Network`], decide whether `ker Σ` has a
//! disjoint-support basis ([`binomiality`]), extract binomial generators,
//! certify partitionable conservation laws ([`partition`]) and compute the
//! mixed volume of the resulting square system, either as a single
//! determinant or with the independent routines in [`polyhedral`].

// index loops read better than iterator chains in the elimination code
#![allow(clippy::needless_range_loop)]

pub mod binomiality;
pub mod cycles;
pub mod error;
pub mod generic;
pub mod linalg;
pub mod network;
pub mod partition;
pub mod polyhedral;
pub mod polynomial;

pub use error::{Error, ParseErrorKind, Result};
pub use linalg::{IntegerMatrix, Rational, RationalMatrix};
pub use network::{parse_network, Network, RateAssignment};
