//! Exact computer algebra for almost complex structures on spheres.
//!
//! - [`cayley_dickson`]: the Cayley–Dickson tower with exact rational coefficients.
//! - [`sphere_acs`]: the cross-product structure on S² and S⁶ and its Nijenhuis tensor.
//! - [`symfun`]: sparse multivariate polynomials, elementary symmetric and Newton polynomials.
//! - [`genera`]: truncated power series, Bernoulli numbers, L-polynomials, Chern character.
//! - [`char_class`]: characteristic classes in the cohomology of a sphere.
//! - [`obstruction`]: per-dimension classification with certificates.

pub mod cayley_dickson;
pub mod char_class;
pub mod error;
pub mod genera;
pub mod obstruction;
pub mod rational;
pub mod sampling;
pub mod sphere_acs;
pub mod symfun;

pub use error::{Error, Result};
pub use rational::Q;
