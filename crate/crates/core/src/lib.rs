//! Numerics for the semiclassical focusing nonlinear Schroedinger equation
//! near its point of gradient catastrophe.
//!
//! The crate builds the tritronquee solution of Painleve-I, solves the
//! dispersionless NLS by hodograph transform up to the elliptic-umbilic
//! critical point, evolves the full equation spectrally at small epsilon,
//! and compares the two against the multiscale description on rescaled
//! windows, including the log-log scaling fits of the observed errors.

pub mod hodograph;
pub mod numerics;
pub mod painleve;
