//! Special functions, the Kac and Kac-Gutzwiller kernels, Gutzwiller's
//! closed-form matrix and a quadrature-built Hermite-basis matrix of the
//! Kac-Gutzwiller operator.

mod bmatrix;
mod gmatrix;
mod hermite;
mod kernel;
mod laguerre;
mod quadrature;

pub use bmatrix::{b_matrix, trace_g_closed_form, BMatrix};
pub use gmatrix::{g_matrix_quadrature, g_matrix_quadrature_detailed, GQuadrature};
pub use hermite::{hermite_functions, hermite_h, HermiteBasis};
pub use kernel::{
    g_kernel, kac_kernel, kac_kernel_factored, ktilde_kernel, mehler_adaptive, mehler_sides,
    MehlerSides,
};
pub use laguerre::{laguerre_assoc, laguerre_sequence};
pub use quadrature::{GaussHermiteRule, GaussLaguerreRule};
