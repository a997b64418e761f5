//! Fractional Fourier transforms and rotated-quadrature intensities.
//!
//! Convention: `F_theta h_n = exp(-i n theta) h_n`, so `F_{pi/2}` is the
//! unitary Fourier transform with kernel `exp(-i x y) / sqrt(2 pi)` and
//! `F_pi` is the parity operator.
//!
//! Two independent routes are provided. [`frft_spectral`] multiplies Hermite
//! coefficients by their eigenphases and is exact up to roundoff.
//! [`frft_grid`] discretises the integral kernel
//!
//! ```text
//! K(u, x) = sqrt((1 - i cot a) / 2 pi) exp(i (u^2 + x^2) cot a / 2 - i u x / sin a)
//! ```
//!
//! as chirp multiply, chirp convolve, chirp multiply. The kernel is only
//! sampled for reduced angles in `[pi/4, 3pi/4]`, where its oscillation is
//! mild; other angles are reached by composing with the exact reflection
//! and one extra pass at `pi/2`.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::angle::{reduce_mod, RationalAngle};
use crate::error::{Error, Result};
use crate::fft;
use crate::hermite::{self, HermiteExpansion, HermiteTable};
use crate::signal::{Grid, IntensityProfile, SampledSignal};

/// `c_n -> exp(-i n theta) c_n`.
pub fn frft_spectral(e: &HermiteExpansion, theta: impl Into<RationalAngle>) -> HermiteExpansion {
    let theta = theta.into();
    e.map_coefficients(|n, c| c * theta.eigenphase(n))
}

/// Chirp-based fractional Fourier transform of a sampled signal, returned
/// on the same (symmetric) grid.
pub fn frft_grid(psi: &SampledSignal, theta: f64) -> Result<SampledSignal> {
    if !theta.is_finite() {
        return Err(Error::NonFinite);
    }
    if !psi.grid().is_symmetric() {
        return Err(Error::AsymmetricGrid);
    }
    let a = reduce_mod(theta, 2.0 * PI);
    let (b, flip) = if a >= PI { (a - PI, true) } else { (a, false) };

    let out = if b == 0.0 {
        psi.clone()
    } else if b < FRAC_PI_4 {
        // F_b = F_{b + pi/2} F_{-pi/2}, with F_{-pi/2} = parity . F_{pi/2}
        let quarter = chirp_transform(psi, FRAC_PI_2);
        chirp_transform(&quarter.reflect()?, b + FRAC_PI_2)
    } else if b <= 3.0 * FRAC_PI_4 {
        chirp_transform(psi, b)
    } else {
        let quarter = chirp_transform(psi, FRAC_PI_2);
        chirp_transform(&quarter, b - FRAC_PI_2)
    };

    if flip {
        out.reflect()
    } else {
        Ok(out)
    }
}

/// Direct kernel quadrature for `alpha` in `(0, pi)`, evaluated in
/// `O(n log n)` through one linear convolution.
fn chirp_transform(psi: &SampledSignal, alpha: f64) -> SampledSignal {
    let grid = *psi.grid();
    let n = grid.len();
    let dx = grid.dx();
    let (sin_a, cos_a) = (alpha.sin(), alpha.cos());
    let cot = cos_a / sin_a;
    // cot - csc = -tan(alpha/2)
    let outer = -(alpha / 2.0).tan();
    let amplitude = (Complex64::new(1.0, -cot) / (2.0 * PI)).sqrt();

    let premultiplied: Vec<Complex64> = psi
        .values()
        .iter()
        .enumerate()
        .map(|(j, v)| {
            let x = grid.point(j);
            v * Complex64::from_polar(grid.weight(j), 0.5 * outer * x * x)
        })
        .collect();
    let chirp: Vec<Complex64> = (0..2 * n - 1)
        .map(|i| {
            let m = i as f64 - (n as f64 - 1.0);
            Complex64::from_polar(1.0, m * m * dx * dx / (2.0 * sin_a))
        })
        .collect();
    let conv = fft::convolve(&premultiplied, &chirp);

    let values = (0..n)
        .map(|k| {
            let u = grid.point(k);
            amplitude * Complex64::from_polar(1.0, 0.5 * outer * u * u) * conv[k + n - 1]
        })
        .collect();
    SampledSignal::new(grid, values).expect("length matches grid")
}

/// Density `|F_theta psi|^2` of the rotated quadrature, computed on the
/// spectral route.
pub fn quadrature_intensity(
    e: &HermiteExpansion,
    theta: impl Into<RationalAngle>,
    grid: &Grid,
) -> Result<IntensityProfile> {
    let Some(max_index) = e.max_index() else {
        return Ok(IntensityProfile::from_raw(
            *grid,
            alloc::vec![0.0; grid.len()],
        ));
    };
    hermite::check_grid(grid, max_index)?;
    let table = HermiteTable::for_expansion(*grid, e);
    Ok(quadrature_intensity_with(&table, e, theta.into()))
}

/// [`quadrature_intensity`] against a precomputed table covering `e`.
pub fn quadrature_intensity_with(
    table: &HermiteTable,
    e: &HermiteExpansion,
    theta: RationalAngle,
) -> IntensityProfile {
    table.synthesize(&frft_spectral(e, theta)).intensity()
}

/// Grid wide and fine enough to integrate moments of `e` accurately.
pub(crate) fn moment_grid(max_index: usize) -> Grid {
    let halfwidth = (hermite::required_halfwidth(max_index) + 4.0).max(12.0);
    let n_points = (2.0 * halfwidth / 0.02).ceil() as usize + 1;
    Grid::symmetric(halfwidth, n_points).expect("positive half-width")
}

/// First moment of the quadrature density at angle `theta`; equals
/// `<Q> cos theta + <P> sin theta`.
pub fn quadrature_mean(e: &HermiteExpansion, theta: impl Into<RationalAngle>) -> f64 {
    let Some(max_index) = e.max_index() else {
        return 0.0;
    };
    let grid = moment_grid(max_index);
    quadrature_intensity(e, theta, &grid)
        .expect("moment grid covers the expansion")
        .mean()
}
