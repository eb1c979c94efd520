//! Shared numerical kernels: banded linear algebra, finite-difference
//! weights, Chebyshev machinery, adaptive Runge-Kutta and a simplex
//! minimizer.

pub mod banded;
pub mod chebyshev;
pub mod fornberg;
pub mod neldermead;
pub mod rk45;
