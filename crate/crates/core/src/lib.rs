//! Quasi-exactly solvable Pöschl–Teller potentials, their coordinate images
//! and oscillator limits: energy polynomials, algebraic spectra, closed-form
//! eigenfunctions and finite-difference cross-checks.

// `!(x > 0.0)` is used on purpose so that NaN inputs are rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod params;
pub mod polynomials;
pub mod potentials;
pub mod roots;
pub mod scalar;
pub mod spectra;
pub mod tridiag;
pub mod verify;
pub mod wavefunctions;

pub use error::{QesError, Result};
pub use params::{PTAnharmonicParams, PoschlTellerParams, SexticParams, TwoJ};
pub use potentials::{Domain, FamilyTag, PotentialFamily};
pub use scalar::{Extended, Precision};
pub use spectra::{SpectralMethod, SpectralSolution};
