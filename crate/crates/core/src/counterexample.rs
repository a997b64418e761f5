//! Pairs of distinct pure states that share quadrature intensities.
//!
//! For a finite set of angles whose differences are rational multiples of
//! `pi`, the states `(h_0 +- i h_k) / sqrt 2` have identical intensities at
//! every angle with `k theta = 0 mod 2 pi`. Any three distinct angles can be
//! carried onto `(0, pi/4, pi/2)` by a symplectic matrix, and the metaplectic
//! image of the `k = 16` pair then works for the original three.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::angle::{reduce_mod, RationalAngle};
use crate::error::{Error, Result};
use crate::frft::{frft_grid, frft_spectral};
use crate::hermite::{self, HermiteExpansion, HermiteTable};
use crate::signal::{
    inner_product, sup_density_difference, total_variation_distance, Grid, IntensityProfile,
    SampledSignal,
};
use crate::symplectic::{canonical_triple_matrix, map_line, QuadratureLine, SymplecticMatrix2};
use crate::weyl::metaplectic_apply;

/// Angles closer than this (modulo `pi`) are merged.
pub const DUPLICATE_TOLERANCE: f64 = 1e-12;

/// The index used for the canonical triple `(0, pi/4, pi/2)`.
pub const CANONICAL_K: u64 = 16;

/// Tolerance for the resampled three-angle construction.
pub const THREE_ANGLE_TOLERANCE: f64 = 1e-5;

/// Angles scanned when looking for a discriminating quadrature.
pub const SCAN_ANGLES: usize = 50;

/// Difference that counts as a discriminating quadrature.
pub const DISCRIMINATION_THRESHOLD: f64 = 1e-3;

/// Reduces modulo `pi`, sorts and merges near-duplicates.
pub fn normalize_angles(angles: &[f64]) -> Result<Vec<f64>> {
    if angles.is_empty() {
        return Err(Error::EmptyAngles);
    }
    if angles.iter().any(|a| !a.is_finite()) {
        return Err(Error::NonFinite);
    }
    let mut out: Vec<f64> = angles.iter().map(|a| reduce_mod(*a, PI)).collect();
    out.sort_by(|a, b| a.total_cmp(b));
    out.dedup_by(|b, a| (*b - *a).abs() <= DUPLICATE_TOLERANCE);
    // the ends of [0, pi) describe the same line
    if out.len() > 1 && PI - out[out.len() - 1] + out[0] <= DUPLICATE_TOLERANCE {
        out.pop();
    }
    Ok(out)
}

/// Exact counterpart of [`normalize_angles`]: reduces modulo `pi`, sorts by
/// value and drops repeats.
pub fn normalize_rational_angles(angles: &[RationalAngle]) -> Result<Vec<RationalAngle>> {
    if angles.is_empty() {
        return Err(Error::EmptyAngles);
    }
    let mut out: Vec<RationalAngle> = angles.iter().map(|a| a.mod_pi()).collect();
    out.sort_by(|a, b| a.value().total_cmp(&b.value()));
    out.dedup();
    Ok(out)
}

/// Index choices for a rational angle list.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndexChoice {
    /// `2 p_2 ... p_n` over the reduced denominators of `theta_j - theta_1`.
    pub recipe: u64,
    /// Smallest `k >= 1` with `k (theta_j - theta_1) = 0 mod 2 pi` for all `j`.
    pub minimal: u64,
}

/// The index `k` for the pair `(h_0 +- i h_k) / sqrt 2` that is blind to
/// every angle of the list after rotating the first one to zero.
pub fn rational_angle_k(angles: &[RationalAngle]) -> Result<IndexChoice> {
    if angles.iter().any(|a| !a.is_rational()) {
        return Err(Error::NonRationalDifference);
    }
    let angles = normalize_rational_angles(angles)?;
    let first = angles[0];
    let mut recipe: u64 = 2;
    let mut minimal: u64 = 1;
    for a in &angles[1..] {
        let (q, p) = a
            .sub(&first)
            .as_fraction()
            .ok_or(Error::NonRationalDifference)?;
        recipe = recipe.checked_mul(p).ok_or(Error::IndexOverflow)?;
        // k q / p must be even: k is a multiple of 2p / gcd(q, 2p)
        let need = 2 * p / gcd(q as u64, 2 * p);
        minimal = lcm(minimal, need).ok_or(Error::IndexOverflow)?;
    }
    Ok(IndexChoice { recipe, minimal })
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn lcm(a: u64, b: u64) -> Option<u64> {
    (a / gcd(a, b)).checked_mul(b)
}

/// `((h_0 + i h_k) / sqrt 2, (h_0 - i h_k) / sqrt 2)`.
pub fn build_pair(k: u64) -> Result<(HermiteExpansion, HermiteExpansion)> {
    if k < 1 {
        return Err(Error::InvalidIndex);
    }
    let k = usize::try_from(k).map_err(|_| Error::IndexOverflow)?;
    let c0 = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let ck = Complex64::new(0.0, FRAC_1_SQRT_2);
    Ok((
        HermiteExpansion::from_sparse(&[(0, c0), (k, ck)]),
        HermiteExpansion::from_sparse(&[(0, c0), (k, -ck)]),
    ))
}

/// Comparison of two intensity profiles at one angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleDeviation {
    pub angle: f64,
    pub sup_difference: f64,
    pub total_variation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub tolerance: f64,
    pub deviations: Vec<AngleDeviation>,
    /// True iff every sup difference is within `tolerance`.
    pub indistinguishable: bool,
}

impl Verdict {
    fn from_deviations(deviations: Vec<AngleDeviation>, tolerance: f64) -> Self {
        let indistinguishable = deviations.iter().all(|d| d.sup_difference <= tolerance);
        Verdict {
            tolerance,
            deviations,
            indistinguishable,
        }
    }

    pub fn max_sup_difference(&self) -> f64 {
        self.deviations
            .iter()
            .fold(0.0, |m, d| m.max(d.sup_difference))
    }
}

fn compare(angle: f64, a: &IntensityProfile, b: &IntensityProfile) -> Result<AngleDeviation> {
    Ok(AngleDeviation {
        angle,
        sup_difference: sup_density_difference(a, b)?,
        total_variation: total_variation_distance(a, b)?,
    })
}

/// Compares the spectral-route intensities of two expansions at each
/// angle.
pub fn indistinguishability_verdict(
    e1: &HermiteExpansion,
    e2: &HermiteExpansion,
    angles: &[RationalAngle],
    grid: &Grid,
    tol: f64,
) -> Result<Verdict> {
    let mut support = e1.support();
    support.extend(e2.support());
    if let Some(&top) = support.iter().max() {
        hermite::check_grid(grid, top)?;
    }
    let table = HermiteTable::sparse(*grid, &support);
    indistinguishability_verdict_with(&table, e1, e2, angles, tol)
}

/// [`indistinguishability_verdict`] against a precomputed table covering
/// the supports of both expansions.
pub fn indistinguishability_verdict_with(
    table: &HermiteTable,
    e1: &HermiteExpansion,
    e2: &HermiteExpansion,
    angles: &[RationalAngle],
    tol: f64,
) -> Result<Verdict> {
    let mut deviations = Vec::with_capacity(angles.len());
    for theta in angles {
        let a = table.synthesize(&frft_spectral(e1, *theta)).intensity();
        let b = table.synthesize(&frft_spectral(e2, *theta)).intensity();
        deviations.push(compare(theta.value(), &a, &b)?);
    }
    Ok(Verdict::from_deviations(deviations, tol))
}

/// Compares the grid-route intensities of two sampled signals.
pub fn sampled_verdict(
    psi1: &SampledSignal,
    psi2: &SampledSignal,
    angles: &[f64],
    tol: f64,
) -> Result<Verdict> {
    if !psi1.grid().matches(psi2.grid()) {
        return Err(Error::GridMismatch);
    }
    let mut deviations = Vec::with_capacity(angles.len());
    for &theta in angles {
        let a = frft_grid(psi1, theta)?.intensity();
        let b = frft_grid(psi2, theta)?.intensity();
        deviations.push(compare(theta, &a, &b)?);
    }
    Ok(Verdict::from_deviations(deviations, tol))
}

/// The angle among `SCAN_ANGLES` equally spaced ones in `[0, pi)` with the
/// largest intensity difference, and that difference.
pub fn discriminating_angle(psi1: &SampledSignal, psi2: &SampledSignal) -> Result<(f64, f64)> {
    let angles: Vec<f64> = (0..SCAN_ANGLES)
        .map(|j| PI * (j as f64 + 0.5) / SCAN_ANGLES as f64)
        .collect();
    let verdict = sampled_verdict(psi1, psi2, &angles, 0.0)?;
    Ok(verdict.deviations.iter().fold((angles[0], 0.0), |best, d| {
        if d.sup_difference > best.1 {
            (d.angle, d.sup_difference)
        } else {
            best
        }
    }))
}

/// Matrix sending `L_t1, L_t2, L_t3` to `L_0, L_{pi/4}, L_{pi/2}` together
/// with the three image lines.
pub fn reduce_triple(
    t1: f64,
    t2: f64,
    t3: f64,
) -> Result<(SymplecticMatrix2, [QuadratureLine; 3])> {
    let s = canonical_triple_matrix(t1, t2, t3)?;
    let images = [t1, t2, t3].map(|t| map_line(&s, &QuadratureLine::new(t)));
    Ok((s, images))
}

/// Summary of a constructed pair.
#[derive(Debug, Clone, PartialEq)]
pub struct CounterexampleReport {
    pub angles: Vec<f64>,
    pub k: u64,
    /// Set when a smaller index would also have worked.
    pub minimal_k: Option<u64>,
    /// `|<psi_+, psi_->|`.
    pub overlap: f64,
    pub verdict: Verdict,
    /// The reducing matrix, for the three-angle construction.
    pub matrix: Option<SymplecticMatrix2>,
}

/// Radius in phase space outside which `(h_0 +- i h_k) / sqrt 2` is
/// negligible.
fn pair_radius(k: u64) -> f64 {
    hermite::required_halfwidth(k as usize)
}

/// Smallest symmetric grid (at least the default) on which the index-`k`
/// pair is covered and its fastest oscillation is resolved.
pub fn rational_grid(k: u64) -> Grid {
    grid_for_extents(pair_radius(k), pair_radius(k))
}

fn grid_for_extents(position: f64, momentum: f64) -> Grid {
    let halfwidth = position.max(crate::signal::DEFAULT_HALFWIDTH);
    let dx = PI / (1.25 * momentum);
    let needed = (2.0 * halfwidth / dx).ceil() as usize + 1;
    let n_points = needed
        .next_power_of_two()
        .max(crate::signal::DEFAULT_POINTS);
    Grid::symmetric(halfwidth, n_points).expect("positive half-width")
}

/// Builds the pair for an all-rational angle list and checks it on the
/// spectral route.
///
/// The pair is blind to the angles measured from the first one, so both
/// states are rotated back by `F_{-theta_1}`; the returned expansions and the
/// verdict refer to the angles as given.
pub fn rational_counterexample(
    angles: &[RationalAngle],
    grid: &Grid,
    tol: f64,
) -> Result<(HermiteExpansion, HermiteExpansion, CounterexampleReport)> {
    let normalized = normalize_rational_angles(angles)?;
    let choice = rational_angle_k(&normalized)?;
    let (plus, minus) = build_pair(choice.recipe)?;
    let back = normalized[0].neg();
    let (plus, minus) = (frft_spectral(&plus, back), frft_spectral(&minus, back));
    let verdict = indistinguishability_verdict(&plus, &minus, &normalized, grid, tol)?;
    let report = CounterexampleReport {
        angles: normalized.iter().map(|a| a.value()).collect(),
        k: choice.recipe,
        minimal_k: (choice.minimal < choice.recipe).then_some(choice.minimal),
        overlap: plus.inner(&minus).norm(),
        verdict,
        matrix: None,
    };
    Ok((plus, minus, report))
}

/// Phase-space extents needed by `metaplectic_apply(psi, t)` for a state
/// supported in the disc of radius `r`, followed by grid-route transforms
/// at arbitrary angles: the largest position and momentum reached by any
/// intermediate stage or rotation of the output.
fn metaplectic_extents(t: &SymplecticMatrix2, r: f64) -> (f64, f64) {
    let (theta, a, b) = t.iwasawa();
    let n = SymplecticMatrix2::shear(b);
    let dn = SymplecticMatrix2::dilation(a).mul(&n);
    let rdn = SymplecticMatrix2::from_iwasawa(theta, a, b);
    let rows = |m: &SymplecticMatrix2| (m.a11.hypot(m.a12) * r, m.a21.hypot(m.a22) * r);
    let mut q = r;
    let mut p = r;
    for m in [n, dn] {
        let (mq, mp) = rows(&m);
        q = q.max(mq);
        p = p.max(mp);
    }
    // rotations, inside the construction or in the verdict, sweep the
    // output ellipse through every orientation
    let reach = rdn.max_stretch() * r;
    (q.max(reach), p.max(reach))
}

/// Grid on which the three-angle construction for `(t1, t2, t3)` fits.
pub fn counterexample_grid(t1: f64, t2: f64, t3: f64) -> Result<Grid> {
    let (s, _) = reduce_triple(t1, t2, t3)?;
    let (q, p) = metaplectic_extents(&s.inverse(), pair_radius(CANONICAL_K));
    Ok(grid_for_extents(q, p))
}

fn check_metaplectic_grid(grid: &Grid, t: &SymplecticMatrix2, r: f64) -> Result<()> {
    let (q, p) = metaplectic_extents(t, r);
    let nyquist = PI / grid.dx();
    if grid.halfwidth() < q || nyquist < p {
        return Err(Error::GridTooSmall {
            halfwidth: grid.halfwidth(),
            required: q,
            max_index: CANONICAL_K as usize,
        });
    }
    Ok(())
}

/// Two orthogonal sampled states whose intensities agree at `t1, t2, t3`.
///
/// The angles must satisfy `0 <= t1 < t2 < t3 < pi`. The `k = 16` pair is
/// moved by the metaplectic operator of the inverse reducing matrix and the
/// result is checked on the grid route at tolerance
/// [`THREE_ANGLE_TOLERANCE`].
pub fn three_angle_counterexample(
    t1: f64,
    t2: f64,
    t3: f64,
    grid: &Grid,
) -> Result<(SampledSignal, SampledSignal, CounterexampleReport)> {
    let (s, _) = reduce_triple(t1, t2, t3)?;
    let inverse = s.inverse();
    check_metaplectic_grid(grid, &inverse, pair_radius(CANONICAL_K))?;
    let (plus, minus) = build_pair(CANONICAL_K)?;
    let table = HermiteTable::for_expansion(*grid, &plus);
    let phi_plus = metaplectic_apply(&table.synthesize(&plus), &inverse)?;
    let phi_minus = metaplectic_apply(&table.synthesize(&minus), &inverse)?;
    let angles = vec![t1, t2, t3];
    let verdict = sampled_verdict(&phi_plus, &phi_minus, &angles, THREE_ANGLE_TOLERANCE)?;
    let overlap = inner_product(&phi_plus, &phi_minus)?.norm();
    let report = CounterexampleReport {
        angles,
        k: CANONICAL_K,
        minimal_k: None,
        overlap,
        verdict,
        matrix: Some(s),
    };
    Ok((phi_plus, phi_minus, report))
}
