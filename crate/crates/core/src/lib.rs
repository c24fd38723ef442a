//! Transfer operators of the Kac-Baker spin chain.
//!
//! The chain has the two-body interaction `-J ξ_i ξ_j λ^|i-j|`. Two transfer
//! operators reproduce its periodic partition functions:
//!
//! * the Ruelle composition operator
//!   `L_β g(z) = e^{βz} g(λ + λz) + e^{-βz} g(-λ + λz)` acting on functions
//!   holomorphic in a disc, represented here by its exact Taylor-coefficient
//!   matrix ([`ruelle`]);
//! * the Kac-Gutzwiller integral operator with a Gaussian kernel, represented
//!   in the Hermite-function basis ([`kacg`]).
//!
//! Both are cross-checked against exhaustive lattice sums ([`model`]) and
//! against each other through the Segal-Bargmann transform ([`bargmann`]).
//! [`spectral`] turns the matrices into spectra, Fredholm determinants, values
//! of the Ruelle zeta function `ζ_R(z, β) = det(1 - zλL_β) / det(1 - zL_β)` and
//! the locations of its zeros and poles. [`cli`] drives batch scans and the
//! verification suite.
//!
//! The coupling `J` is absorbed into `β` throughout.

pub mod bargmann;
pub mod cli;
mod error;
pub mod kacg;
pub mod model;
pub(crate) mod numeric;
pub mod report;
pub mod ruelle;
pub mod spectral;

pub use error::{Error, Result};
pub use model::{Beta, ModelParams, SpinConfig};
pub use ruelle::{Basis, OperatorMatrix};

/// Complex scalar used for every operator entry and determinant.
pub type Complex = num_complex::Complex64;
