//! Special-function kernels: Kummer's 1F1, spherical Bessel functions and
//! their zeros, and Gauss-Legendre quadrature.

pub mod bessel;
pub mod kummer;
pub mod quadrature;

pub use bessel::{
    bessel_zero, derivative_from_sequence, spherical_bessel_j, spherical_bessel_j_derivative,
    spherical_bessel_sequence,
    L_MAX,
};
pub use kummer::{kummer_1f1, kummer_1f1_with_budget, kummer_series, ScaledSum, SplitParameter};
pub use quadrature::{composite_gauss_legendre, gauss_legendre, QuadratureRule};
