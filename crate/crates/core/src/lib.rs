//! Tree-independence-number machinery for geometric intersection graphs.
//!
//! The crate builds layered tree decompositions from geometric realizations,
//! turns them into general covers, and solves weighted independent packing
//! exactly over decompositions whose bags have small independence number.
//! Approximation schemes sit on top of those pieces, and every construction
//! can be checked against the brute-force oracles in [`graph::oracle`].

// `!(x > 0.0)` is how NaN gets rejected alongside non-positive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod decomposition;
pub mod error;
pub mod fat_cover;
pub mod geometry;
pub mod graph;
pub mod io;
pub mod layered;
pub mod packing;
pub mod ptas;
pub mod rng;
pub mod suite;
pub mod weight;

pub use error::{Error, Result};
pub use weight::Weight;
