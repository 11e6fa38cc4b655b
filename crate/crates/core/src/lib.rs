//! Exact computation of limits of Weierstrass points on two-component nodal
//! curves.
//!
//! The crate follows the paper's structure: [`invariants`] holds the integer
//! bookkeeping, [`curvemodel`] the explicit component curves and their
//! Riemann–Roch spaces, [`nodalglue`] the glued sheaves of Lemma 1 and
//! Theorem 2, [`grassmann`] the torus orbits of Theorem 3, [`ramification`]
//! the Wronskian divisors of Theorem 4 and Corollary 5, and [`chains`] the
//! semi-stable chain models of §2. All arithmetic is exact.

pub mod algebra;
pub mod chains;
pub mod cli;
pub mod curvemodel;
pub mod error;
pub mod grassmann;
pub mod invariants;
pub mod nodalglue;
pub mod ramification;
pub mod rat;
pub mod scalar;

pub use error::{Error, Result};

use num_rational::BigRational;

/// Exact rational scalars used by every geometric module.
pub type Rat = BigRational;
/// Univariate polynomials over `Q`.
pub type RatPoly = algebra::Poly<Rat>;
/// Dense matrices over `Q`.
pub type RatMatrix = algebra::Matrix<Rat>;
