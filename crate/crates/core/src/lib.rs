//! Harmonic analysis on `(R^N, ||.||, dw)` where `dw` is the reflection-group
//! weighted measure `dw(x) = prod_{a in R} |<x,a>|^{k(a)} dx`.
//!
//! The crate provides the objects of rational Dunkl analysis at desk scale:
//! root systems and the weighted geometry they induce, the Dunkl kernel and
//! transform on truncated uniform grids, Dunkl translations and convolution,
//! the heat semigroup with its kernel estimates, an exact symbolic polynomial
//! engine, spectral multiplier operators with dyadic kernel estimates, and the
//! Calderon-Zygmund / Hardy-space machinery built on top of them.
//!
//! Floating-point work is done in [`Real`] (an alias kept at the crate root so
//! the scalar type is fixed in one place); the symbolic polynomial engine is
//! generic over its coefficient ring and is instantiated both at exact
//! rationals and at `Real`.

pub mod analysis;
pub mod error;
pub mod geometry;
pub mod grid;
pub mod heat;
pub mod linalg;
pub mod multiplier;
pub mod poly;
pub mod quad;
pub mod scalar;
pub mod special;
pub mod transform;
pub mod translation;

pub use error::{DunklError, Result};
pub use scalar::{Coeff, Rational, Real};

/// Complex scalar over [`Real`].
pub type Cplx = num_complex::Complex<Real>;
