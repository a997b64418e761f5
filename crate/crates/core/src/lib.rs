//! Numerics for rotated quadratures and fractional Fourier transforms.
//!
//! The crate covers Hermite-function expansions, uniform-grid signals, two
//! independent fractional Fourier transforms (exact spectral phases and a
//! chirp discretisation), Weyl displacements and the metaplectic action of
//! `SL(2, R)`, quadrature-line geometry, the construction of pure-state
//! pairs that share three or more quadrature intensities, and Wigner/Radon
//! cross-checks.
//!
//! Everything is `no_std` with `alloc`; file formats and the command-line
//! front end live in the `triquad` crate.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod angle;
pub mod counterexample;
pub mod error;
pub mod fft;
pub mod frft;
pub mod hermite;
pub mod phasespace;
pub mod signal;
pub mod symplectic;
pub mod weyl;

pub use angle::RationalAngle;
pub use counterexample::{CounterexampleReport, Verdict};
pub use error::{Error, Result};
pub use hermite::{HermiteExpansion, HermiteTable};
pub use num_complex::Complex64;
pub use phasespace::WignerGrid;
pub use signal::{Grid, IntensityProfile, SampledSignal};
pub use symplectic::{QuadratureLine, SymplecticMatrix2};
pub use weyl::PhasePoint;
