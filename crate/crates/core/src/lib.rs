//! Orthonormal Bernstein polynomials.
//!
//! * [`basis`]: classical and orthonormal Bernstein bases on any interval,
//!   built from the explicit closed form.
//! * [`exact`]: exact rational checks of the orthonormality, mixed-integral,
//!   Gram–Schmidt and Sturm–Liouville identities.
//! * [`quadrature`]: composite Gauss–Legendre rules.
//! * [`approx`]: generalized Fourier fits of curves and surfaces and the
//!   triangular recovery of classical Bézier control points.
//! * [`testfns`]: the Lissajous, sinc and Langermann benchmarks.
//!
//! Heavy loops run on rayon when the `parallel` feature is on (the default)
//! and sequentially otherwise. Results do not depend on the choice.

pub mod approx;
pub mod basis;
mod dyadic;
pub mod error;
pub mod exact;
pub mod par;
pub mod poly;
pub mod quadrature;
pub mod sampled;
pub mod testfns;

pub use crate::basis::{
    bernstein_eval, bernstein_eval_all, binomial, onb_coeffs, onb_eval, onb_eval_all, BasisSpec,
    Interval, OrthoBasis, OrthoCoeffs, MAX_DEGREE,
};
pub use crate::error::{Error, Result};
pub use crate::poly::RationalPoly;
pub use crate::quadrature::QuadratureRule;
