//! Hermite functions and expansions over the Hermite basis.
//!
//! `h_n(x) = (2^n n! sqrt(pi))^{-1/2} H_n(x) exp(-x^2/2)` is evaluated with
//! the normalised three-term recurrence
//!
//! ```text
//! h_{n+1}(x) = sqrt(2/(n+1)) x h_n(x) - sqrt(n/(n+1)) h_{n-1}(x)
//! ```
//!
//! seeded by `h_0` and `h_1`. Neither `H_n` nor the Gaussian is formed on
//! its own, so nothing overflows for the indices used here.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::signal::{Grid, SampledSignal};

/// Extra half-width beyond the classical turning point required of a grid.
pub const TURNING_POINT_MARGIN: f64 = 4.0;

/// `h_n(x)`.
pub fn hermite_eval(n: usize, x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::NonFinite);
    }
    let mut values = vec![0.0; n + 1];
    fill_hermite(x, &mut values);
    Ok(values[n])
}

/// Writes `h_0(x), ..., h_{len-1}(x)` into `out`.
///
/// Far from the origin `h_0(x)` underflows while high-index functions are
/// still of order one, so the recurrence runs on a rescaled value with a
/// separate logarithmic scale `h_n = s_n exp(scale)`.
pub fn fill_hermite(x: f64, out: &mut [f64]) {
    if out.is_empty() {
        return;
    }
    const BIG: f64 = 1e200;
    const FOLD: f64 = -600.0;
    let log_h0 = -0.25 * PI.ln() - 0.5 * x * x;
    let (mut prev, mut scale) = if log_h0 > FOLD {
        (log_h0.exp(), 0.0)
    } else {
        (1.0, log_h0)
    };
    let emit = |s: f64, scale: f64| {
        if scale == 0.0 {
            s
        } else if s == 0.0 {
            0.0
        } else {
            s.signum() * (s.abs().ln() + scale).exp()
        }
    };
    out[0] = emit(prev, scale);
    if out.len() == 1 {
        return;
    }
    let mut cur = core::f64::consts::SQRT_2 * x * prev;
    out[1] = emit(cur, scale);
    for n in 1..out.len() - 1 {
        let nf = n as f64;
        let next = (2.0 / (nf + 1.0)).sqrt() * x * cur - (nf / (nf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
        if scale != 0.0 && cur.abs() > BIG {
            prev /= BIG;
            cur /= BIG;
            scale += BIG.ln();
            if scale > FOLD {
                let f = scale.exp();
                prev *= f;
                cur *= f;
                scale = 0.0;
            }
        }
        out[n + 1] = emit(cur, scale);
    }
}

/// Smallest grid half-width accepted for expansions up to `max_index`.
pub fn required_halfwidth(max_index: usize) -> f64 {
    (2.0 * max_index as f64 + 1.0).sqrt() + TURNING_POINT_MARGIN
}

pub fn check_grid(grid: &Grid, max_index: usize) -> Result<()> {
    let required = required_halfwidth(max_index);
    let halfwidth = grid.halfwidth();
    if halfwidth < required {
        return Err(Error::GridTooSmall {
            halfwidth,
            required,
            max_index,
        });
    }
    Ok(())
}

/// Largest index whose turning point plus margin fits inside the grid.
pub fn max_supported_index(grid: &Grid) -> Option<usize> {
    let reach = grid.halfwidth() - TURNING_POINT_MARGIN;
    if reach < 1.0 {
        return None;
    }
    Some(((reach * reach - 1.0) / 2.0).floor() as usize)
}

/// Finite expansion `sum_n c_n h_n`; coefficients past the end are zero.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct HermiteExpansion {
    coefficients: Vec<Complex64>,
}

impl HermiteExpansion {
    pub fn new(coefficients: Vec<Complex64>) -> Self {
        HermiteExpansion { coefficients }
    }

    pub fn empty() -> Self {
        HermiteExpansion::default()
    }

    /// The basis vector `h_n`.
    pub fn basis(n: usize) -> Self {
        let mut coefficients = vec![Complex64::new(0.0, 0.0); n + 1];
        coefficients[n] = Complex64::new(1.0, 0.0);
        HermiteExpansion { coefficients }
    }

    pub fn from_sparse(entries: &[(usize, Complex64)]) -> Self {
        let len = entries.iter().map(|(n, _)| n + 1).max().unwrap_or(0);
        let mut coefficients = vec![Complex64::new(0.0, 0.0); len];
        for &(n, c) in entries {
            coefficients[n] += c;
        }
        HermiteExpansion { coefficients }
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn coefficient(&self, n: usize) -> Complex64 {
        self.coefficients
            .get(n)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    /// `None` for the empty expansion.
    pub fn max_index(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    /// Indices of the nonzero coefficients, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.coefficients
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != Complex64::new(0.0, 0.0))
            .map(|(n, _)| n)
            .collect()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coefficients.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Coefficient-space inner product `<self, other>`.
    pub fn inner(&self, other: &HermiteExpansion) -> Complex64 {
        self.coefficients
            .iter()
            .zip(&other.coefficients)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn map_coefficients(&self, f: impl Fn(usize, Complex64) -> Complex64) -> Self {
        HermiteExpansion {
            coefficients: self
                .coefficients
                .iter()
                .enumerate()
                .map(|(n, &c)| f(n, c))
                .collect(),
        }
    }
}

/// Values `h_n(x_j)` on every point of a grid, for either every index up to
/// some maximum or a chosen sparse set of indices.
#[derive(Debug, Clone)]
pub struct HermiteTable {
    grid: Grid,
    // sorted, distinct
    indices: Vec<usize>,
    // row-major, one row per entry of `indices`
    values: Vec<f64>,
}

impl HermiteTable {
    /// Rows `h_0, ..., h_max_index`.
    pub fn new(grid: Grid, max_index: usize) -> Self {
        HermiteTable::build(grid, (0..=max_index).collect())
    }

    /// Rows for the given indices only; the recurrence still runs up to the
    /// largest one, but memory stays proportional to `indices.len()`.
    pub fn sparse(grid: Grid, indices: &[usize]) -> Self {
        let mut indices = indices.to_vec();
        indices.sort_unstable();
        indices.dedup();
        HermiteTable::build(grid, indices)
    }

    /// Rows for the nonzero coefficients of `e`.
    pub fn for_expansion(grid: Grid, e: &HermiteExpansion) -> Self {
        HermiteTable::sparse(grid, &e.support())
    }

    fn build(grid: Grid, indices: Vec<usize>) -> Self {
        let n_points = grid.len();
        let mut values = vec![0.0; indices.len() * n_points];
        if let Some(&top) = indices.last() {
            let mut column = vec![0.0; top + 1];
            for (j, x) in grid.points().enumerate() {
                fill_hermite(x, &mut column);
                for (r, &n) in indices.iter().enumerate() {
                    values[r * n_points + j] = column[n];
                }
            }
        }
        HermiteTable {
            grid,
            indices,
            values,
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    /// Largest tabulated index.
    pub fn max_index(&self) -> Option<usize> {
        self.indices.last().copied()
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn contains(&self, n: usize) -> bool {
        self.position(n).is_some()
    }

    fn position(&self, n: usize) -> Option<usize> {
        if self.indices.get(n) == Some(&n) {
            Some(n)
        } else {
            self.indices.binary_search(&n).ok()
        }
    }

    /// Row `h_n(x_j)`; panics if `n` was not tabulated.
    pub fn row(&self, n: usize) -> &[f64] {
        let r = self
            .position(n)
            .unwrap_or_else(|| panic!("index {n} not tabulated"));
        let len = self.grid.len();
        &self.values[r * len..(r + 1) * len]
    }

    /// `sum_n c_n h_n(x_j)`, skipping zero coefficients. Panics if a
    /// nonzero coefficient has no row.
    pub fn synthesize(&self, e: &HermiteExpansion) -> SampledSignal {
        let mut out = vec![Complex64::new(0.0, 0.0); self.grid.len()];
        for n in e.support() {
            let c = e.coefficient(n);
            for (o, h) in out.iter_mut().zip(self.row(n)) {
                *o += c * h;
            }
        }
        SampledSignal::new(self.grid, out).expect("length matches grid")
    }

    /// Trapezoid projections `<h_n, psi>` onto every tabulated row.
    pub fn project(&self, psi: &SampledSignal) -> Result<HermiteExpansion> {
        if !psi.grid().matches(&self.grid) {
            return Err(Error::GridMismatch);
        }
        let len = self.max_index().map_or(0, |m| m + 1);
        let mut coefficients = vec![Complex64::new(0.0, 0.0); len];
        for &n in &self.indices {
            coefficients[n] = self
                .row(n)
                .iter()
                .zip(psi.values())
                .enumerate()
                .map(|(j, (h, v))| v * (h * self.grid.weight(j)))
                .sum();
        }
        Ok(HermiteExpansion::new(coefficients))
    }
}

/// Projects a sampled signal onto `h_0, ..., h_max_index`.
pub fn expand(psi: &SampledSignal, max_index: usize) -> Result<HermiteExpansion> {
    check_grid(psi.grid(), max_index)?;
    HermiteTable::new(*psi.grid(), max_index).project(psi)
}

/// Samples `sum_n c_n h_n` on a grid.
pub fn synthesize(e: &HermiteExpansion, grid: &Grid) -> SampledSignal {
    match e.max_index() {
        None => SampledSignal::zeros(*grid),
        Some(_) => HermiteTable::for_expansion(*grid, e).synthesize(e),
    }
}

/// `<psi, Q psi>` from the ladder relation
/// `x h_m = sqrt(m/2) h_{m-1} + sqrt((m+1)/2) h_{m+1}`.
pub fn position_mean(e: &HermiteExpansion) -> f64 {
    let c = e.coefficients();
    let mut acc = Complex64::new(0.0, 0.0);
    for m in 1..c.len() {
        // <h_{m-1}| Q |h_m> = sqrt(m/2), and its mirror term
        let w = (m as f64 / 2.0).sqrt();
        acc += (c[m - 1].conj() * c[m] + c[m].conj() * c[m - 1]) * w;
    }
    acc.re
}

/// `<psi, P psi>` from `h_m' = sqrt(m/2) h_{m-1} - sqrt((m+1)/2) h_{m+1}`.
pub fn momentum_mean(e: &HermiteExpansion) -> f64 {
    let c = e.coefficients();
    let i = Complex64::new(0.0, 1.0);
    let mut acc = Complex64::new(0.0, 0.0);
    for m in 1..c.len() {
        // <h_{m-1}| P |h_m> = -i sqrt(m/2); <h_m| P |h_{m-1}> = i sqrt(m/2)
        let w = (m as f64 / 2.0).sqrt();
        acc += (-i * c[m - 1].conj() * c[m] + i * c[m].conj() * c[m - 1]) * w;
    }
    acc.re
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::FRAC_1_SQRT_2;

    /// Coefficients of the physicists' Hermite polynomial `H_n`, lowest
    /// degree first, from `H_{n+1} = 2x H_n - H_n'` in exact integers.
    fn hermite_poly_coeffs(n: usize) -> Vec<i128> {
        let mut h = vec![1i128];
        for _ in 0..n {
            let mut next = vec![0i128; h.len() + 1];
            for (k, &a) in h.iter().enumerate() {
                next[k + 1] += 2 * a;
                if k > 0 {
                    next[k - 1] -= k as i128 * a;
                }
            }
            h = next;
        }
        h
    }

    fn hermite_oracle(n: usize, x: f64) -> f64 {
        let poly: f64 = hermite_poly_coeffs(n)
            .iter()
            .rev()
            .fold(0.0, |acc, &a| acc * x + a as f64);
        let factorial: f64 = (1..=n).map(|k| k as f64).product();
        let norm = (2f64.powi(n as i32) * factorial * PI.sqrt()).sqrt();
        poly * (-x * x / 2.0).exp() / norm
    }

    #[test]
    fn low_order_values() {
        assert_eq!(hermite_eval(1, 0.0).unwrap(), 0.0);
        assert!((hermite_eval(0, 0.0).unwrap() - 0.751_125_544_464_942_5).abs() < 1e-15);
        assert_eq!(hermite_eval(3, f64::NAN), Err(Error::NonFinite));
    }

    #[test]
    fn h5_matches_exact_polynomial() {
        let want = hermite_oracle(5, 1.3);
        let got = hermite_eval(5, 1.3).unwrap();
        assert!(((got - want) / want).abs() <= 1e-12, "{got} vs {want}");
    }

    #[test]
    fn recurrence_matches_polynomial_oracle_up_to_12() {
        let mut state = 0x2545_f491_4f6c_dd1du64;
        for _ in 0..100 {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            let x = -6.0 + 12.0 * (state >> 11) as f64 / (1u64 << 53) as f64;
            for n in 0..=12 {
                let want = hermite_oracle(n, x);
                let got = hermite_eval(n, x).unwrap();
                let scale = want.abs().max(1e-300);
                // near a root the relative error is measured against the
                // function's local magnitude
                let tol = 1e-10 * scale.max(1e-6 * hermite_oracle(0, x).abs());
                assert!((got - want).abs() <= tol, "n={n} x={x}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn gram_matrix_is_identity() {
        let g = Grid::symmetric(12.0, 1024).unwrap();
        let table = HermiteTable::new(g, 20);
        for m in 0..=20 {
            for n in 0..=20 {
                let ip: f64 = table
                    .row(m)
                    .iter()
                    .zip(table.row(n))
                    .enumerate()
                    .map(|(j, (a, b))| a * b * g.weight(j))
                    .sum();
                let want = if m == n { 1.0 } else { 0.0 };
                assert!((ip - want).abs() <= 1e-8, "({m},{n}) = {ip}");
            }
        }
    }

    #[test]
    fn expand_recovers_basis_vector() {
        let g = Grid::default_verification();
        let psi = synthesize(&HermiteExpansion::basis(3), &g);
        let e = expand(&psi, 8).unwrap();
        for n in 0..=8 {
            let want = if n == 3 { 1.0 } else { 0.0 };
            assert!((e.coefficient(n) - want).norm() <= 1e-8);
        }
    }

    #[test]
    fn expand_is_linear() {
        let g = Grid::default_verification();
        let s = Complex64::new(FRAC_1_SQRT_2, 0.0);
        let psi = synthesize(&HermiteExpansion::from_sparse(&[(0, s), (2, s)]), &g);
        let e = expand(&psi, 4).unwrap();
        assert!((e.coefficient(0) - s).norm() <= 1e-8);
        assert!((e.coefficient(2) - s).norm() <= 1e-8);
    }

    #[test]
    fn expand_rejects_small_grid() {
        let g = Grid::symmetric(1.0, 256).unwrap();
        let psi = synthesize(&HermiteExpansion::basis(0), &g);
        assert!(matches!(
            expand(&psi, 0),
            Err(Error::GridTooSmall { max_index: 0, .. })
        ));
    }

    #[test]
    fn synthesize_edge_cases() {
        let g = Grid::default_verification();
        let zero = synthesize(&HermiteExpansion::empty(), &g);
        assert!(zero.values().iter().all(|v| *v == Complex64::new(0.0, 0.0)));

        let h0 = synthesize(&HermiteExpansion::basis(0), &g);
        for (x, v) in g.points().zip(h0.values()) {
            assert!((v.re - PI.powf(-0.25) * (-x * x / 2.0).exp()).abs() < 1e-15);
        }

        let h16 = synthesize(&HermiteExpansion::basis(16), &g);
        assert!((h16.norm_sqr() - 1.0).abs() <= 1e-8);
    }

    #[test]
    fn supported_index_respects_margin() {
        let g = Grid::default_verification();
        let n = max_supported_index(&g).unwrap();
        assert!(check_grid(&g, n).is_ok());
        assert!(check_grid(&g, n + 1).is_err());
    }

    #[test]
    fn ladder_moments() {
        let s = Complex64::new(FRAC_1_SQRT_2, 0.0);
        let e = HermiteExpansion::from_sparse(&[(0, s), (1, s)]);
        assert!((position_mean(&e) - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!(momentum_mean(&e).abs() < 1e-15);
        // (h0 + i h1)/sqrt2 is displaced in momentum
        let e = HermiteExpansion::from_sparse(&[(0, s), (1, Complex64::new(0.0, FRAC_1_SQRT_2))]);
        assert!(position_mean(&e).abs() < 1e-15);
        assert!((momentum_mean(&e) - FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn sparse_table_rows_match_dense_rows() {
        let g = Grid::symmetric(12.0, 301).unwrap();
        let dense = HermiteTable::new(g, 30);
        let sparse = HermiteTable::sparse(g, &[30, 0, 7, 7]);
        assert_eq!(sparse.indices(), &[0, 7, 30]);
        assert!(!sparse.contains(8));
        for n in [0, 7, 30] {
            assert_eq!(sparse.row(n), dense.row(n));
        }
        let e = HermiteExpansion::from_sparse(&[(7, Complex64::new(0.3, -0.2))]);
        assert_eq!(sparse.synthesize(&e), dense.synthesize(&e));
    }

    #[test]
    fn high_index_functions_survive_gaussian_underflow() {
        // turning point of h_2000 is near 63, well past where h_0 underflows
        let n = 2000;
        let g = Grid::symmetric(75.0, 30001).unwrap();
        let table = HermiteTable::sparse(g, &[n - 2, n]);
        let a = table.row(n);
        let b = table.row(n - 2);
        let norm = g.integrate(&a.iter().map(|v| v * v).collect::<Vec<_>>());
        let cross = g.integrate(&a.iter().zip(b).map(|(u, v)| u * v).collect::<Vec<_>>());
        assert!((norm - 1.0).abs() < 1e-9, "norm {norm}");
        assert!(cross.abs() < 1e-9, "cross {cross}");
        let x = 50.0;
        assert!(hermite_eval(n, x).unwrap().abs() > 1e-3);
    }
}
