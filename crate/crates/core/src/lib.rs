//! Evaluation codes of subspace arrangements over small prime fields, with
//! exact parameter computation for the binary skeleton codes K(ℓ, h, j).
//!
//! The crate is organised bottom-up:
//!
//! * [`linalg`]: matrices over GF(q) with a packed GF(2) layout.
//! * [`simplicial`]: simplicial complexes, face vectors, minimal non-faces.
//! * [`arrangement`]: subspace arrangements, intersection lattices and
//!   characteristic polynomials.
//! * [`evalcode`]: evaluation codes C(A, j) and the block layout of K(ℓ, h, j).
//! * [`params`]: dimension, minimum distance and weight distributions.
//! * [`formulas`]: closed-form parameter and row-sum weight formulas.
//! * [`hamming`]: Hamming codes and the equivalence certificate.

pub mod arrangement;
pub mod bits;
mod error;
pub mod evalcode;
pub mod formulas;
pub mod hamming;
pub mod linalg;
pub mod params;
pub mod simplicial;

pub use error::{Error, Result};
