//! Exact computational toolkit for A1-curves on complete intersection pairs.
//!
//! Given the defining polynomials of a pair (X, D) in projective space —
//! X a smooth complete intersection and D a smooth hypersurface section —
//! this crate builds the explicit equation systems for the moduli of
//! A1-lines through an interior point and for the node locus of reducible
//! A1-conics through two points, evaluates the associated numeric criteria
//! (log Fano, degree bounds, cyclic covers), and verifies every symbolic
//! construction against independent brute-force oracles over finite fields.

pub mod cipair;
pub mod error;
pub mod exactalg;
pub mod geomcheck;
pub mod moduli;

pub use error::{Error, Result};
