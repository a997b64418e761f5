//! Weyl displacements, characteristic functions and the metaplectic action.
//!
//! `W(q, p) = exp(i q p / 2) exp(-i q P) exp(i p Q)` acts on samples as
//! `(W psi)(t) = exp(-i q p / 2) exp(i p t) psi(t - q)`. Position shifts
//! are band-limited (DFT phase ramps), so any real `q` is allowed as long
//! as the shifted signal stays inside the grid.
//!
//! The metaplectic operator `U(S)` is realised through the factorisation
//! `S = R(theta) D(a) N(b)`:
//!
//! * `N(b) = [[1, 0], [b, 1]]` is multiplication by `exp(i b t^2 / 2)`,
//! * `D(a) = [[a, 0], [0, 1/a]]` is `psi(t) -> a^{-1/2} psi(t / a)`, resampled
//!   from the trigonometric interpolant,
//! * `R(theta)` is the fractional Fourier transform `F_{-theta}`.
//!
//! Every factor satisfies `U W(x) U* = W(S x)` exactly, so the product does
//! too; the global phase of `U(S)` is left unnormalised.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::fft;
use crate::frft::{frft_grid, quadrature_intensity};
use crate::hermite::HermiteExpansion;
use crate::signal::{inner_product, Grid, SampledSignal};
use crate::symplectic::{SymplecticMatrix2, DET_TOLERANCE};

/// Phase-space point `(q, p)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhasePoint {
    pub q: f64,
    pub p: f64,
}

impl PhasePoint {
    pub fn new(q: f64, p: f64) -> Self {
        PhasePoint { q, p }
    }

    pub fn origin() -> Self {
        PhasePoint { q: 0.0, p: 0.0 }
    }

    /// `(u sin theta, -u cos theta)`, the point of `L_theta` at parameter `u`.
    pub fn on_line(theta: f64, u: f64) -> Self {
        PhasePoint::new(u * theta.sin(), -u * theta.cos())
    }

    pub fn add(&self, o: &PhasePoint) -> PhasePoint {
        PhasePoint::new(self.q + o.q, self.p + o.p)
    }
}

/// `{(q, p), (u, v)} = q v - p u`.
pub fn symplectic_form(x: &PhasePoint, y: &PhasePoint) -> f64 {
    x.q * y.p - x.p * y.q
}

/// `psi(t - q)` through the trigonometric interpolant of the samples.
pub fn shift(psi: &SampledSignal, q: f64) -> SampledSignal {
    if q == 0.0 {
        return psi.clone();
    }
    let grid = *psi.grid();
    let n = grid.len();
    let mut spectrum = psi.values().to_vec();
    fft::forward(&mut spectrum);
    for (k, v) in spectrum.iter_mut().enumerate() {
        let omega = fft::bin_frequency(k, n, grid.dx());
        *v *= Complex64::from_polar(1.0 / n as f64, -omega * q);
    }
    fft::inverse(&mut spectrum);
    SampledSignal::new(grid, spectrum).expect("length matches grid")
}

/// `W(x) psi`.
///
/// Fails when `|q|` reaches the grid half-width or `|p|` exceeds half the
/// Nyquist frequency; such displacements would wrap around the grid.
pub fn weyl_apply(psi: &SampledSignal, x: PhasePoint) -> Result<SampledSignal> {
    if !x.q.is_finite() || !x.p.is_finite() {
        return Err(Error::NonFinite);
    }
    let grid = *psi.grid();
    let nyquist = PI / grid.dx();
    let span = 0.5 * (grid.end() - grid.x0());
    if x.q.abs() >= span || x.p.abs() > 0.5 * nyquist {
        return Err(Error::DisplacementOutOfRange { q: x.q, p: x.p });
    }
    let mut out = shift(psi, x.q);
    let global = -0.5 * x.q * x.p;
    for (j, v) in out.values_mut().iter_mut().enumerate() {
        let t = grid.point(j);
        *v *= Complex64::from_polar(1.0, global + x.p * t);
    }
    Ok(out)
}

/// `<psi, W(x) psi>`.
pub fn weyl_expectation(psi: &SampledSignal, x: PhasePoint) -> Result<Complex64> {
    inner_product(psi, &weyl_apply(psi, x)?)
}

/// `integral exp(-i u x) rho_theta(x) dx` from the quadrature density at
/// angle `theta`. Equals `<psi, W(u sin theta, -u cos theta) psi>`.
pub fn characteristic_function(
    e: &HermiteExpansion,
    theta: f64,
    u: f64,
    grid: &Grid,
) -> Result<Complex64> {
    if !u.is_finite() {
        return Err(Error::NonFinite);
    }
    let density = quadrature_intensity(e, theta, grid)?;
    Ok(density
        .density()
        .iter()
        .enumerate()
        .map(|(j, d)| Complex64::from_polar(d * grid.weight(j), -u * grid.point(j)))
        .sum())
}

/// Multiplication by `exp(i b t^2 / 2)`, the metaplectic image of `N(b)`.
pub fn shear(psi: &SampledSignal, b: f64) -> SampledSignal {
    let grid = *psi.grid();
    let mut out = psi.clone();
    for (j, v) in out.values_mut().iter_mut().enumerate() {
        let t = grid.point(j);
        *v *= Complex64::from_polar(1.0, 0.5 * b * t * t);
    }
    out
}

/// `t -> a^{-1/2} psi(t / a)`, the metaplectic image of `D(a)`.
///
/// The new samples come from the trigonometric interpolant of `psi`,
/// evaluated on the stretched grid with one chirp-z transform.
pub fn dilate(psi: &SampledSignal, a: f64) -> Result<SampledSignal> {
    if a <= 0.0 || !a.is_finite() {
        return Err(Error::NonFinite);
    }
    let grid = *psi.grid();
    let n = grid.len();
    let dx = grid.dx();
    let x0 = grid.x0();

    let mut spectrum = psi.values().to_vec();
    fft::forward(&mut spectrum);
    // bins in ascending signed order k = -n/2 .. n - n/2 - 1
    let low = n / 2;
    let step = 2.0 * PI / (n as f64 * dx);
    // evaluation points y_j - x0 = c + j dx / a
    let c = x0 / a - x0;
    let ordered: Vec<Complex64> = (0..n)
        .map(|i| {
            let k = (i + n - low) % n;
            let omega = (i as f64 - low as f64) * step;
            spectrum[k] * Complex64::from_polar(1.0 / n as f64, omega * c)
        })
        .collect();
    let w = step * dx / a;
    let raw = fft::chirp_z(&ordered, n, w);
    let scale = a.powf(-0.5);
    let (lo, hi) = (x0 - 0.5 * dx, grid.end() + 0.5 * dx);
    // the chirp-z sum counts frequencies from zero; shift back by -n/2 bins.
    // Points whose preimage leaves the grid would pick up the periodic
    // image, so they are set to zero.
    let values = raw
        .iter()
        .enumerate()
        .map(|(j, v)| {
            let y = grid.point(j) / a;
            if y < lo || y > hi {
                Complex64::new(0.0, 0.0)
            } else {
                v * Complex64::from_polar(scale, -(low as f64) * w * j as f64)
            }
        })
        .collect();
    SampledSignal::new(grid, values)
}

/// `U(S) psi` up to a global phase.
pub fn metaplectic_apply(psi: &SampledSignal, s: &SymplecticMatrix2) -> Result<SampledSignal> {
    let det = s.det();
    if !det.is_finite() || (det - 1.0).abs() > DET_TOLERANCE {
        return Err(Error::NotSymplectic { det });
    }
    let (theta, a, b) = s.iwasawa();
    let mut out = if b != 0.0 { shear(psi, b) } else { psi.clone() };
    if a != 1.0 {
        out = dilate(&out, a)?;
    }
    if theta != 0.0 {
        out = frft_grid(&out, -theta)?;
    }
    Ok(out)
}
