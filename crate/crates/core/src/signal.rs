//! Uniform-grid complex signals, inner products and intensity profiles.
//!
//! Integrals are trapezoid sums over the grid. For the smooth, rapidly
//! decaying functions this crate works with the trapezoid rule is
//! spectrally accurate, so no higher-order quadrature is used.

use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

/// Default verification grid: 1024 points on `[-12, 12]`.
pub const DEFAULT_HALFWIDTH: f64 = 12.0;
pub const DEFAULT_POINTS: usize = 1024;

/// Roundoff slack allowed below zero before a density entry is clamped.
const NEGATIVE_DENSITY_SLACK: f64 = -1e-12;

/// Uniform grid `x_j = x0 + j dx`, `j = 0..n_points`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    x0: f64,
    dx: f64,
    n_points: usize,
}

impl Grid {
    pub fn new(x0: f64, dx: f64, n_points: usize) -> Result<Self> {
        if !x0.is_finite() || !dx.is_finite() {
            return Err(Error::NonFinite);
        }
        if dx <= 0.0 {
            return Err(Error::InvalidGrid("spacing must be positive"));
        }
        if n_points < 2 {
            return Err(Error::InvalidGrid("at least two points are required"));
        }
        Ok(Grid { x0, dx, n_points })
    }

    /// `n_points` points spanning `[-halfwidth, halfwidth]`.
    pub fn symmetric(halfwidth: f64, n_points: usize) -> Result<Self> {
        if !halfwidth.is_finite() {
            return Err(Error::NonFinite);
        }
        if halfwidth <= 0.0 {
            return Err(Error::InvalidGrid("half-width must be positive"));
        }
        if n_points < 2 {
            return Err(Error::InvalidGrid("at least two points are required"));
        }
        let dx = 2.0 * halfwidth / (n_points - 1) as f64;
        Grid::new(-halfwidth, dx, n_points)
    }

    pub fn default_verification() -> Self {
        Grid::symmetric(DEFAULT_HALFWIDTH, DEFAULT_POINTS).expect("default grid is valid")
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn len(&self) -> usize {
        self.n_points
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn point(&self, j: usize) -> f64 {
        self.x0 + j as f64 * self.dx
    }

    pub fn end(&self) -> f64 {
        self.point(self.n_points - 1)
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_points).map(move |j| self.point(j))
    }

    /// Distance from the origin to the nearer endpoint (zero if the grid
    /// does not straddle the origin).
    pub fn halfwidth(&self) -> f64 {
        (-self.x0).min(self.end()).max(0.0)
    }

    pub fn is_symmetric(&self) -> bool {
        (self.x0 + self.end()).abs() <= 1e-9 * self.dx
    }

    /// Trapezoid weight of sample `j`.
    pub fn weight(&self, j: usize) -> f64 {
        if j == 0 || j + 1 == self.n_points {
            0.5 * self.dx
        } else {
            self.dx
        }
    }

    /// Same sample positions up to a relative tolerance of `1e-9` of `dx`.
    pub fn matches(&self, other: &Grid) -> bool {
        self.n_points == other.n_points
            && (self.dx - other.dx).abs() <= 1e-9 * self.dx
            && (self.x0 - other.x0).abs() <= 1e-9 * self.dx
    }

    pub fn integrate(&self, values: &[f64]) -> f64 {
        values
            .iter()
            .enumerate()
            .map(|(j, v)| self.weight(j) * v)
            .sum()
    }

    fn ensure_matches(&self, other: &Grid) -> Result<()> {
        if self.matches(other) {
            Ok(())
        } else {
            Err(Error::GridMismatch)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampledSignal {
    grid: Grid,
    values: Vec<Complex64>,
}

impl SampledSignal {
    pub fn new(grid: Grid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::LengthMismatch {
                expected: grid.len(),
                got: values.len(),
            });
        }
        Ok(SampledSignal { grid, values })
    }

    pub fn zeros(grid: Grid) -> Self {
        SampledSignal {
            grid,
            values: alloc::vec![Complex64::new(0.0, 0.0); grid.len()],
        }
    }

    pub fn from_fn(grid: Grid, f: impl Fn(f64) -> Complex64) -> Self {
        let values = grid.points().map(f).collect();
        SampledSignal { grid, values }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn norm_sqr(&self) -> f64 {
        self.values
            .iter()
            .enumerate()
            .map(|(j, v)| self.grid.weight(j) * v.norm_sqr())
            .sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&mut self, factor: Complex64) {
        for v in &mut self.values {
            *v *= factor;
        }
    }

    /// `x -> psi(-x)`; exact on a symmetric grid.
    pub fn reflect(&self) -> Result<SampledSignal> {
        if !self.grid.is_symmetric() {
            return Err(Error::AsymmetricGrid);
        }
        let mut values = self.values.clone();
        values.reverse();
        Ok(SampledSignal {
            grid: self.grid,
            values,
        })
    }

    /// `|psi|^2` as a density, with roundoff negatives clamped to zero.
    pub fn intensity(&self) -> IntensityProfile {
        IntensityProfile::from_raw(
            self.grid,
            self.values.iter().map(|v| v.norm_sqr()).collect(),
        )
    }
}

/// `<phi, psi>`, conjugate-linear in the first slot.
pub fn inner_product(phi: &SampledSignal, psi: &SampledSignal) -> Result<Complex64> {
    phi.grid.ensure_matches(&psi.grid)?;
    Ok(phi
        .values
        .iter()
        .zip(&psi.values)
        .enumerate()
        .map(|(j, (a, b))| a.conj() * b * phi.grid.weight(j))
        .sum())
}

/// Largest pointwise modulus of `a - e^{i phi} b` after choosing the
/// global phase `phi` that aligns `b` with `a` through their inner
/// product.
pub fn phase_aligned_sup_distance(a: &SampledSignal, b: &SampledSignal) -> Result<f64> {
    let overlap = inner_product(b, a)?;
    let phase = if overlap.norm() > 0.0 {
        overlap / overlap.norm()
    } else {
        Complex64::new(1.0, 0.0)
    };
    Ok(a.values
        .iter()
        .zip(&b.values)
        .map(|(x, y)| (x - y * phase).norm())
        .fold(0.0, f64::max))
}

/// Pointwise sup distance between two signals on the same grid.
pub fn sup_distance(a: &SampledSignal, b: &SampledSignal) -> Result<f64> {
    a.grid.ensure_matches(&b.grid)?;
    Ok(a.values
        .iter()
        .zip(&b.values)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max))
}

/// Nonnegative density sampled on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct IntensityProfile {
    grid: Grid,
    density: Vec<f64>,
}

impl IntensityProfile {
    /// Builds a profile, clamping negative roundoff down to `-1e-12` to zero
    /// and rejecting anything more negative.
    pub fn new(grid: Grid, density: Vec<f64>) -> Result<Self> {
        if density.len() != grid.len() {
            return Err(Error::LengthMismatch {
                expected: grid.len(),
                got: density.len(),
            });
        }
        if density.iter().any(|d| !d.is_finite()) {
            return Err(Error::NonFinite);
        }
        if density.iter().any(|&d| d < NEGATIVE_DENSITY_SLACK) {
            return Err(Error::NegativeDensity);
        }
        Ok(Self::from_raw(grid, density))
    }

    pub(crate) fn from_raw(grid: Grid, mut density: Vec<f64>) -> Self {
        for d in &mut density {
            if *d < 0.0 {
                *d = 0.0;
            }
        }
        IntensityProfile { grid, density }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn density(&self) -> &[f64] {
        &self.density
    }

    pub fn total(&self) -> f64 {
        self.grid.integrate(&self.density)
    }

    pub fn mean(&self) -> f64 {
        let weighted: Vec<f64> = self
            .grid
            .points()
            .zip(&self.density)
            .map(|(x, d)| x * d)
            .collect();
        self.grid.integrate(&weighted)
    }
}

/// `(1/2) * integral |p - q|`.
pub fn total_variation_distance(p: &IntensityProfile, q: &IntensityProfile) -> Result<f64> {
    p.grid.ensure_matches(&q.grid)?;
    let diff: Vec<f64> = p
        .density
        .iter()
        .zip(&q.density)
        .map(|(a, b)| (a - b).abs())
        .collect();
    Ok(0.5 * p.grid.integrate(&diff))
}

/// Largest pointwise density difference.
pub fn sup_density_difference(p: &IntensityProfile, q: &IntensityProfile) -> Result<f64> {
    p.grid.ensure_matches(&q.grid)?;
    Ok(p.density
        .iter()
        .zip(&q.density)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max))
}
