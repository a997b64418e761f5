//! Wigner functions and their Radon slices.
//!
//! Convention:
//!
//! ```text
//! W(q, p) = (1/pi) * integral conj(psi(q + y)) psi(q - y) exp(2 i p y) dy
//! ```
//!
//! so that integrating along the line through `x (cos t, sin t)` in the
//! direction `(-sin t, cos t)` gives the quadrature density `|F_t psi|^2(x)`
//! with no extra Jacobian.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::signal::{Grid, IntensityProfile, SampledSignal};

/// Largest imaginary part tolerated before the Wigner values are rejected.
pub const IMAGINARY_TOLERANCE: f64 = 1e-10;

/// Wigner function sampled on a `q x p` lattice, rows indexed by `q`.
#[derive(Debug, Clone, PartialEq)]
pub struct WignerGrid {
    q: Grid,
    p: Grid,
    values: Vec<f64>,
    imaginary_residue: f64,
}

impl WignerGrid {
    /// Wraps row-major values (`q` outer); the imaginary residue is taken
    /// as zero.
    pub fn new(q: Grid, p: Grid, values: Vec<f64>) -> Result<Self> {
        if values.len() != q.len() * p.len() {
            return Err(Error::LengthMismatch {
                expected: q.len() * p.len(),
                got: values.len(),
            });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(WignerGrid {
            q,
            p,
            values,
            imaginary_residue: 0.0,
        })
    }

    pub fn q_grid(&self) -> &Grid {
        &self.q
    }

    pub fn p_grid(&self) -> &Grid {
        &self.p
    }

    /// Row-major values, `values[i * p.len() + j] = W(q_i, p_j)`.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.p.len() + j]
    }

    /// Largest `|Im W|` discarded when the values were made real.
    pub fn imaginary_residue(&self) -> f64 {
        self.imaginary_residue
    }

    /// Trapezoid double integral.
    pub fn total(&self) -> f64 {
        let rows: Vec<f64> = (0..self.q.len())
            .map(|i| {
                let start = i * self.p.len();
                self.p.integrate(&self.values[start..start + self.p.len()])
            })
            .collect();
        self.q.integrate(&rows)
    }

    /// `integral W(q_i, p) dp` for every row.
    pub fn position_marginal(&self) -> Vec<f64> {
        (0..self.q.len())
            .map(|i| {
                let start = i * self.p.len();
                self.p.integrate(&self.values[start..start + self.p.len()])
            })
            .collect()
    }

    /// Radius of the largest origin-centred disc inside the lattice.
    pub fn disc_radius(&self) -> f64 {
        self.q.halfwidth().min(self.p.halfwidth())
    }

    /// Bicubic (Catmull-Rom) interpolation; samples beyond the lattice
    /// count as zero.
    pub fn interpolate(&self, q: f64, p: f64) -> f64 {
        let fi = (q - self.q.x0()) / self.q.dx();
        let fj = (p - self.p.x0()) / self.p.dx();
        let (nq, np) = (self.q.len() as i64, self.p.len() as i64);
        if !(fi > -1.0 && fj > -1.0) || fi >= nq as f64 || fj >= np as f64 {
            return 0.0;
        }
        let (i, j) = (fi.floor() as i64, fj.floor() as i64);
        let wu = catmull_rom(fi - i as f64);
        let wv = catmull_rom(fj - j as f64);
        let mut sum = 0.0;
        for (a, wa) in wu.iter().enumerate() {
            let r = i - 1 + a as i64;
            if r < 0 || r >= nq {
                continue;
            }
            let row = &self.values[(r * np) as usize..((r + 1) * np) as usize];
            let mut inner = 0.0;
            for (b, wb) in wv.iter().enumerate() {
                let c = j - 1 + b as i64;
                if c >= 0 && c < np {
                    inner += wb * row[c as usize];
                }
            }
            sum += wa * inner;
        }
        sum
    }
}

/// Weights of the four neighbours `-1, 0, 1, 2` at fractional offset `t`.
fn catmull_rom(t: f64) -> [f64; 4] {
    let t2 = t * t;
    let t3 = t2 * t;
    [
        0.5 * (-t3 + 2.0 * t2 - t),
        0.5 * (3.0 * t3 - 5.0 * t2 + 2.0),
        0.5 * (-3.0 * t3 + 4.0 * t2 + t),
        0.5 * (t3 - t2),
    ]
}

/// Wigner function of `psi` on the lattice `psi.grid() x pg`.
///
/// The `y` integral is a direct sum over the sample spacing, so the
/// momentum grid must stay below `pi / (2 dx)`.
pub fn wigner(psi: &SampledSignal, pg: &Grid) -> Result<WignerGrid> {
    let q = *psi.grid();
    let dx = q.dx();
    let limit = PI / (2.0 * dx);
    if pg.x0().abs() > limit || pg.end().abs() > limit {
        return Err(Error::InvalidGrid(
            "momentum grid exceeds the sampling limit pi/(2 dx)",
        ));
    }
    let n = q.len();
    let np = pg.len();
    let v = psi.values();
    let mut values = vec![0.0; n * np];
    let mut residue: f64 = 0.0;
    let mut products = Vec::with_capacity(n);
    for i in 0..n {
        // y = m dx with both q + y and q - y on the grid
        let reach = i.min(n - 1 - i);
        products.clear();
        products
            .extend((0..=reach).map(|m| (v[i + m].conj() * v[i - m], v[i - m].conj() * v[i + m])));
        for (j, p) in pg.points().enumerate() {
            let step = Complex64::from_polar(1.0, 2.0 * p * dx);
            let mut phase = Complex64::new(1.0, 0.0);
            let mut sum = products[0].0;
            for (m, (plus, minus)) in products.iter().enumerate().skip(1) {
                if m % 64 == 0 {
                    phase = Complex64::from_polar(1.0, 2.0 * p * dx * m as f64);
                } else {
                    phase *= step;
                }
                sum += plus * phase + minus * phase.conj();
            }
            let w = sum * (dx / PI);
            residue = residue.max(w.im.abs());
            values[i * np + j] = w.re;
        }
    }
    if residue > IMAGINARY_TOLERANCE {
        return Err(Error::ComplexWigner { residue });
    }
    Ok(WignerGrid {
        q,
        p: *pg,
        values,
        imaginary_residue: residue,
    })
}

/// Line integrals of `w` across the direction `theta`:
///
/// ```text
/// density(x) = integral W(x cos t - s sin t, x sin t + s cos t) ds
/// ```
///
/// sampled at step `min(dq, dp) / 2` with bicubic interpolation. The output
/// grid must lie inside the disc covered by the lattice.
pub fn radon_slice(w: &WignerGrid, theta: f64, g: &Grid) -> Result<IntensityProfile> {
    if !theta.is_finite() {
        return Err(Error::NonFinite);
    }
    let radius = w.disc_radius();
    if g.x0().abs() > radius || g.end().abs() > radius {
        return Err(Error::OutsideWignerDisc);
    }
    let step = 0.5 * w.q.dx().min(w.p.dx());
    let half = (radius / step).floor() as i64;
    let (sin, cos) = theta.sin_cos();
    let density = g
        .points()
        .map(|x| {
            let mut sum = 0.0;
            for m in -half..=half {
                let s = m as f64 * step;
                let weight = if m.abs() == half { 0.5 } else { 1.0 };
                sum += weight * w.interpolate(x * cos - s * sin, x * sin + s * cos);
            }
            sum * step
        })
        .collect();
    Ok(IntensityProfile::from_raw(*g, density))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frft::{frft_grid, quadrature_intensity};
    use crate::hermite::{synthesize, HermiteExpansion};
    use crate::signal::{sup_density_difference, total_variation_distance};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Direct quadrature of the defining integral at one point, on a fine
    /// grid, without the lattice machinery.
    fn wigner_point(e: &HermiteExpansion, q: f64, p: f64) -> f64 {
        let ys = Grid::symmetric(14.0, 4001).unwrap();
        // shifted[j] = psi(q + y_j), and psi(q - y_j) = shifted[n - 1 - j]
        let shifted = synthesize(e, &Grid::new(q - 14.0, ys.dx(), 4001).unwrap());
        let v = shifted.values();
        let n = ys.len();
        let integrand: Vec<f64> = ys
            .points()
            .enumerate()
            .map(|(j, y)| (v[j].conj() * v[n - 1 - j] * Complex64::from_polar(1.0, 2.0 * p * y)).re)
            .collect();
        ys.integrate(&integrand) / PI
    }

    fn random_state(rng: &mut ChaCha8Rng, max_index: usize) -> HermiteExpansion {
        let c: Vec<Complex64> = (0..=max_index)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let norm = c.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        HermiteExpansion::new(c.into_iter().map(|v| v / norm).collect())
    }

    fn lattice() -> (Grid, Grid) {
        (
            Grid::symmetric(10.0, 256).unwrap(),
            Grid::symmetric(10.0, 256).unwrap(),
        )
    }

    #[test]
    fn vacuum_is_a_gaussian() {
        let (qg, pg) = lattice();
        let e = HermiteExpansion::basis(0);
        let w = wigner(&synthesize(&e, &qg), &pg).unwrap();
        assert!(w.imaginary_residue() <= 1e-10);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let i = rng.gen_range(0..qg.len());
            let j = rng.gen_range(0..pg.len());
            let (q, p) = (qg.point(i), pg.point(j));
            let closed = (-(q * q + p * p)).exp() / PI;
            assert!((w.value(i, j) - closed).abs() < 1e-6);
            assert!((wigner_point(&e, q, p) - closed).abs() < 1e-6);
        }
        assert!((w.total() - 1.0).abs() < 1e-5);
    }

    #[test]
    fn position_marginal_is_position_density() {
        let (qg, pg) = lattice();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let psi = synthesize(&random_state(&mut rng, 6), &qg);
        let w = wigner(&psi, &pg).unwrap();
        let density = psi.intensity();
        for (m, d) in w.position_marginal().iter().zip(density.density()) {
            assert!((m - d).abs() < 1e-6);
        }
        assert!(w.imaginary_residue() <= 1e-10);
    }

    #[test]
    fn momentum_grid_is_limited_by_sampling() {
        let qg = Grid::symmetric(10.0, 65).unwrap();
        let pg = Grid::symmetric(20.0, 65).unwrap();
        let psi = synthesize(&HermiteExpansion::basis(0), &qg);
        assert!(matches!(wigner(&psi, &pg), Err(Error::InvalidGrid(_))));
    }

    #[test]
    fn gaussian_marginal_and_fourier_slice() {
        let (qg, pg) = lattice();
        let g = Grid::symmetric(8.0, 161).unwrap();
        let w0 = wigner(&synthesize(&HermiteExpansion::basis(0), &qg), &pg).unwrap();
        let slice = radon_slice(&w0, 0.0, &g).unwrap();
        for (x, d) in g.points().zip(slice.density()) {
            assert!((d - (-x * x).exp() / PI.sqrt()).abs() < 1e-4);
        }
        let e1 = HermiteExpansion::basis(1);
        let w1 = wigner(&synthesize(&e1, &qg), &pg).unwrap();
        let slice = radon_slice(&w1, core::f64::consts::FRAC_PI_2, &g).unwrap();
        let want = quadrature_intensity(&e1, core::f64::consts::FRAC_PI_2, &g).unwrap();
        assert!(total_variation_distance(&slice, &want).unwrap() < 1e-3);
        assert!(sup_density_difference(&slice, &want).unwrap() < 1e-3);
    }

    #[test]
    fn slices_outside_the_disc_are_rejected() {
        let (qg, pg) = lattice();
        let w = wigner(&synthesize(&HermiteExpansion::basis(0), &qg), &pg).unwrap();
        let g = Grid::symmetric(11.0, 50).unwrap();
        assert_eq!(radon_slice(&w, 0.3, &g), Err(Error::OutsideWignerDisc));
    }

    #[test]
    fn tomographic_consistency() {
        let (qg, pg) = lattice();
        let g = Grid::symmetric(9.0, 181).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..3 {
            let e = random_state(&mut rng, 8);
            let w = wigner(&synthesize(&e, &qg), &pg).unwrap();
            for _ in 0..3 {
                let theta = rng.gen_range(0.0..PI);
                let slice = radon_slice(&w, theta, &g).unwrap();
                let want = quadrature_intensity(&e, theta, &g).unwrap();
                let tv = total_variation_distance(&slice, &want).unwrap();
                assert!(tv <= 1e-3, "theta {theta}: tv {tv}");
            }
        }
    }

    #[test]
    fn rotation_covariance() {
        let (qg, pg) = lattice();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let e = random_state(&mut rng, 5);
        let theta = 0.7;
        let rotated = frft_grid(&synthesize(&e, &qg), theta).unwrap();
        let w = wigner(&rotated, &pg).unwrap();
        let (sin, cos) = theta.sin_cos();
        for _ in 0..15 {
            let i = rng.gen_range(64..192);
            let j = rng.gen_range(64..192);
            let (q, p) = (qg.point(i), pg.point(j));
            let want = wigner_point(&e, q * cos - p * sin, q * sin + p * cos);
            assert!((w.value(i, j) - want).abs() < 1e-4, "({q}, {p})");
        }
    }

    #[test]
    fn counterexample_pair_tomography() {
        let (qg, pg) = lattice();
        let g = Grid::symmetric(9.0, 181).unwrap();
        let (plus, minus) = crate::counterexample::build_pair(16).unwrap();
        let wp = wigner(&synthesize(&plus, &qg), &pg).unwrap();
        let wm = wigner(&synthesize(&minus, &qg), &pg).unwrap();
        for theta in [
            0.0,
            core::f64::consts::FRAC_PI_4,
            core::f64::consts::FRAC_PI_2,
        ] {
            let a = radon_slice(&wp, theta, &g).unwrap();
            let b = radon_slice(&wm, theta, &g).unwrap();
            assert!(sup_density_difference(&a, &b).unwrap() < 2e-3);
        }
        let theta = core::f64::consts::FRAC_PI_3;
        let a = radon_slice(&wp, theta, &g).unwrap();
        let b = radon_slice(&wm, theta, &g).unwrap();
        assert!(sup_density_difference(&a, &b).unwrap() > 1e-3);
    }
}
