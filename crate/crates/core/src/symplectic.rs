//! `SL(2, R)` matrices acting on quadrature lines.
//!
//! The line of the quadrature at angle `theta` is
//! `L_theta = { u (sin theta, -cos theta) : u in R }`; lines are identified
//! modulo `pi` and always stored as an angle in `[0, pi)`.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

#[allow(unused_imports)]
use num_traits::Float;

use crate::angle::{reduce_mod, RationalAngle};
use crate::error::{Error, Result};
use crate::weyl::PhasePoint;

/// Allowed deviation of the determinant from one.
pub const DET_TOLERANCE: f64 = 1e-12;

/// Target triples closer than this in `|cot a - cot b|` are skipped by the
/// obstruction search.
pub const COT_SEPARATION: f64 = 1e-12;

/// Printed next to every obstruction-search result.
pub const OBSTRUCTION_CAVEAT: &str =
    "caveat: a positive minimum over bounded denominators is consistent \
with, but does not prove, the transcendence obstruction";

/// Real 2x2 matrix with unit determinant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymplecticMatrix2 {
    pub a11: f64,
    pub a12: f64,
    pub a21: f64,
    pub a22: f64,
}

impl SymplecticMatrix2 {
    pub fn new(a11: f64, a12: f64, a21: f64, a22: f64) -> Result<Self> {
        if ![a11, a12, a21, a22].iter().all(|v| v.is_finite()) {
            return Err(Error::NonFinite);
        }
        let det = a11 * a22 - a12 * a21;
        if (det - 1.0).abs() > DET_TOLERANCE {
            return Err(Error::NotSymplectic { det });
        }
        Ok(SymplecticMatrix2 { a11, a12, a21, a22 })
    }

    pub fn identity() -> Self {
        SymplecticMatrix2 {
            a11: 1.0,
            a12: 0.0,
            a21: 0.0,
            a22: 1.0,
        }
    }

    /// `[[cos, -sin], [sin, cos]]`; carries `L_phi` to `L_{phi + theta}`.
    pub fn rotation(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        SymplecticMatrix2 {
            a11: c,
            a12: -s,
            a21: s,
            a22: c,
        }
    }

    /// `[[a, 0], [0, 1/a]]` for `a > 0`.
    pub fn dilation(a: f64) -> Self {
        SymplecticMatrix2 {
            a11: a,
            a12: 0.0,
            a21: 0.0,
            a22: 1.0 / a,
        }
    }

    /// Lower shear `[[1, 0], [b, 1]]`.
    pub fn shear(b: f64) -> Self {
        SymplecticMatrix2 {
            a11: 1.0,
            a12: 0.0,
            a21: b,
            a22: 1.0,
        }
    }

    /// `rotation(theta) * dilation(a) * shear(b)`.
    pub fn from_iwasawa(theta: f64, a: f64, b: f64) -> Self {
        SymplecticMatrix2::rotation(theta)
            .mul(&SymplecticMatrix2::dilation(a))
            .mul(&SymplecticMatrix2::shear(b))
    }

    /// Parameters `(theta, a, b)` with `self = R(theta) D(a) N(b)` and
    /// `a > 0`.
    pub fn iwasawa(&self) -> (f64, f64, f64) {
        // second column of R D N is (1/a) R e_2 = (1/a) (-sin, cos)
        let col_norm = self.a12.hypot(self.a22);
        let a = 1.0 / col_norm;
        let theta = (-self.a12).atan2(self.a22);
        let lower = SymplecticMatrix2::rotation(-theta).mul(self);
        // lower = [[a, 0], [b/a, 1/a]]
        let b = lower.a21 * a;
        (theta, a, b)
    }

    pub fn det(&self) -> f64 {
        self.a11 * self.a22 - self.a12 * self.a21
    }

    pub fn mul(&self, o: &SymplecticMatrix2) -> SymplecticMatrix2 {
        SymplecticMatrix2 {
            a11: self.a11 * o.a11 + self.a12 * o.a21,
            a12: self.a11 * o.a12 + self.a12 * o.a22,
            a21: self.a21 * o.a11 + self.a22 * o.a21,
            a22: self.a21 * o.a12 + self.a22 * o.a22,
        }
    }

    /// Inverse using the unit determinant.
    pub fn inverse(&self) -> SymplecticMatrix2 {
        SymplecticMatrix2 {
            a11: self.a22,
            a12: -self.a12,
            a21: -self.a21,
            a22: self.a11,
        }
    }

    pub fn apply(&self, x: PhasePoint) -> PhasePoint {
        PhasePoint::new(
            self.a11 * x.q + self.a12 * x.p,
            self.a21 * x.q + self.a22 * x.p,
        )
    }

    pub fn apply_vec(&self, v: (f64, f64)) -> (f64, f64) {
        (
            self.a11 * v.0 + self.a12 * v.1,
            self.a21 * v.0 + self.a22 * v.1,
        )
    }

    /// Largest singular value.
    pub fn max_stretch(&self) -> f64 {
        let f2 =
            self.a11 * self.a11 + self.a12 * self.a12 + self.a21 * self.a21 + self.a22 * self.a22;
        // singular values s, 1/s with s^2 + s^-2 = f2
        let half = 0.5 * f2;
        (half + (half * half - 1.0).max(0.0).sqrt()).sqrt()
    }

    pub fn max_abs_diff(&self, o: &SymplecticMatrix2) -> f64 {
        [
            self.a11 - o.a11,
            self.a12 - o.a12,
            self.a21 - o.a21,
            self.a22 - o.a22,
        ]
        .iter()
        .fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// Line through the origin, stored by its angle in `[0, pi)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureLine {
    angle: f64,
}

impl QuadratureLine {
    /// Any real angle, reduced modulo `pi`.
    pub fn new(theta: f64) -> Self {
        QuadratureLine {
            angle: reduce_mod(theta, PI),
        }
    }

    /// Line spanned by `(vx, vy)`; the zero vector maps to `L_0`.
    pub fn from_direction(vx: f64, vy: f64) -> Self {
        // (vx, vy) = s (sin t, -cos t)
        QuadratureLine::new(vx.atan2(-vy))
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }

    /// Unit direction `(sin theta, -cos theta)`.
    pub fn direction(&self) -> (f64, f64) {
        (self.angle.sin(), -self.angle.cos())
    }

    /// Angular distance modulo `pi`, in `[0, pi/2]`.
    pub fn distance(&self, other: &QuadratureLine) -> f64 {
        let d = (self.angle - other.angle).abs();
        d.min(PI - d)
    }
}

/// `S L_theta`, as a line angle in `[0, pi)`.
pub fn map_line(s: &SymplecticMatrix2, line: &QuadratureLine) -> QuadratureLine {
    let (vx, vy) = s.apply_vec(line.direction());
    QuadratureLine::from_direction(vx, vy)
}

/// The matrix sending `L_t1, L_t2, L_t3` to `L_0, L_{pi/4}, L_{pi/2}`:
///
/// ```text
///            1          [ r cos t1     r sin t1   ]
/// S = ---------------   [                         ],  r = sqrt(sin(t3-t2) / sin(t2-t1))
///     sqrt(sin(t3-t1))  [ cos t3 / r   sin t3 / r ]
/// ```
///
/// Requires `0 <= t1 < t2 < t3 < pi`.
pub fn canonical_triple_matrix(t1: f64, t2: f64, t3: f64) -> Result<SymplecticMatrix2> {
    check_triple(t1, t2, t3)?;
    let s21 = (t2 - t1).sin();
    let s32 = (t3 - t2).sin();
    let s31 = (t3 - t1).sin();
    let r = (s32 / s21).sqrt();
    let pre = 1.0 / s31.sqrt();
    SymplecticMatrix2::new(
        pre * r * t1.cos(),
        pre * r * t1.sin(),
        pre * t3.cos() / r,
        pre * t3.sin() / r,
    )
}

/// Factors `lambda_j` with `S (sin t_j, -cos t_j) = lambda_j (sin t'_j, -cos t'_j)`
/// for the canonical targets `t' = (0, pi/4, pi/2)`.
pub fn canonical_scale_factors(t1: f64, t2: f64, t3: f64) -> Result<[f64; 3]> {
    check_triple(t1, t2, t3)?;
    let s21 = (t2 - t1).sin();
    let s32 = (t3 - t2).sin();
    let s31 = (t3 - t1).sin();
    Ok([
        (s31 * s21 / s32).sqrt(),
        (2.0 * s32 * s21 / s31).sqrt(),
        (s32 * s31 / s21).sqrt(),
    ])
}

/// Canonical target lines `(L_0, L_{pi/4}, L_{pi/2})`.
pub fn canonical_targets() -> [QuadratureLine; 3] {
    [
        QuadratureLine::new(0.0),
        QuadratureLine::new(FRAC_PI_4),
        QuadratureLine::new(FRAC_PI_2),
    ]
}

fn check_triple(t1: f64, t2: f64, t3: f64) -> Result<()> {
    if ![t1, t2, t3].iter().all(|t| t.is_finite()) {
        return Err(Error::NonFinite);
    }
    const SEP: f64 = 1e-12;
    if (t2 - t1).abs() < SEP || (t3 - t2).abs() < SEP || (t3 - t1).abs() < SEP {
        return Err(Error::DegenerateAngles);
    }
    if !(0.0 <= t1 && t1 < t2 && t2 < t3 && t3 < PI) {
        return Err(Error::AngleOrder);
    }
    if PI - (t3 - t1) < SEP {
        return Err(Error::DegenerateAngles);
    }
    Ok(())
}

/// `(a, b)` of the lower-triangular `[[a, 0], [b, 1/a]]` that fixes `L_0`
/// and sends `L_{pi/4}`, `L_{pi/2}` to `L_{t2'}`, `L_{t3'}`:
/// `a^2 = 1 / (cot t2' - cot t3')`, `b = -a cot t3'`.
pub fn triangular_from_targets(
    t2p: impl Into<RationalAngle>,
    t3p: impl Into<RationalAngle>,
) -> Result<(f64, f64)> {
    let (c2, c3) = (t2p.into().cot(), t3p.into().cot());
    triangular_from_cots(c2, c3)
}

fn triangular_from_cots(c2: f64, c3: f64) -> Result<(f64, f64)> {
    let diff = c2 - c3;
    let a_squared = 1.0 / diff;
    if a_squared <= 0.0 || !a_squared.is_finite() {
        return Err(Error::InfeasibleTargets { a_squared });
    }
    let a = a_squared.sqrt();
    Ok((a, -a * c3))
}

/// `|cot t4 - (a^2 cot t4' + a b)|` for the triangular matrix fitted to
/// `(t2', t3')`. Zero exactly when one symplectic matrix fixing `L_0` maps
/// `(L_{pi/4}, L_{pi/2}, L_{t4})` onto `(L_{t2'}, L_{t3'}, L_{t4'})`.
pub fn fourth_line_residual(
    t4: impl Into<RationalAngle>,
    t2p: impl Into<RationalAngle>,
    t3p: impl Into<RationalAngle>,
    t4p: impl Into<RationalAngle>,
) -> Result<f64> {
    let (a, b) = triangular_from_targets(t2p, t3p)?;
    Ok(residual_from(t4.into().cot(), a, b, t4p.into().cot()))
}

fn residual_from(cot4: f64, a: f64, b: f64, cot4p: f64) -> f64 {
    (cot4 - (a * a * cot4p + a * b)).abs()
}

/// Result of [`obstruction_search`]. `argmin` is `[q2, p2, q3, p3, q4, p4]`
/// for targets `q_j pi / p_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct ObstructionReport {
    pub theta4: f64,
    pub max_denominator: u64,
    pub min_residual: Option<f64>,
    pub argmin: Option<[u64; 6]>,
    pub examined: u64,
}

/// All reduced `q pi / p` in `(0, pi)` with `p <= max_denominator`, sorted by
/// value.
pub fn rational_targets(max_denominator: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for p in 2..=max_denominator {
        for q in 1..p {
            if gcd(q, p) == 1 {
                out.push((q, p));
            }
        }
    }
    // q1/p1 < q2/p2  <=>  q1 p2 < q2 p1
    out.sort_by(|a, b| (a.0 * b.1).cmp(&(b.0 * a.1)));
    out
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Exhaustive search over rational target triples `(t2', t3', t4')` with
/// denominators up to `max_denominator`, minimising
/// [`fourth_line_residual`]. Enumeration order is fixed (targets by value,
/// nested `t2'`, `t3'`, `t4'`), and ties keep the first minimiser.
pub fn obstruction_search(
    theta4: impl Into<RationalAngle>,
    max_denominator: u64,
) -> Result<ObstructionReport> {
    if max_denominator < 2 {
        return Err(Error::InvalidDenominator);
    }
    let theta4 = theta4.into();
    let cot4 = theta4.cot();
    let targets = rational_targets(max_denominator);
    let cots: Vec<f64> = targets
        .iter()
        .map(|&(q, p)| RationalAngle::rational(q as i64, p).expect("p >= 2").cot())
        .collect();

    let mut best: Option<(f64, [u64; 6])> = None;
    let mut examined = 0u64;
    for (i2, &c2) in cots.iter().enumerate() {
        for (i3, &c3) in cots.iter().enumerate() {
            if i3 == i2 || (c2 - c3).abs() < COT_SEPARATION {
                continue;
            }
            let Ok((a, b)) = triangular_from_cots(c2, c3) else {
                continue;
            };
            for (i4, &c4) in cots.iter().enumerate() {
                if i4 == i2 || i4 == i3 {
                    continue;
                }
                examined += 1;
                let r = residual_from(cot4, a, b, c4);
                if best.is_none_or(|(m, _)| r < m) {
                    let (q2, p2) = targets[i2];
                    let (q3, p3) = targets[i3];
                    let (q4, p4) = targets[i4];
                    best = Some((r, [q2, p2, q3, p3, q4, p4]));
                }
            }
        }
    }
    Ok(ObstructionReport {
        theta4: theta4.value(),
        max_denominator,
        min_residual: best.map(|(r, _)| r),
        argmin: best.map(|(_, a)| a),
        examined,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Independent line-angle oracle: angle of the vector modulo pi by
    /// explicit quadrant logic on `acos`.
    fn oracle_angle(vx: f64, vy: f64) -> f64 {
        let r = vx.hypot(vy);
        // (vx, vy) = r (sin t, -cos t) with t in [0, pi] when vx >= 0
        let vy = if vx < 0.0 || (vx == 0.0 && vy > 0.0) {
            -vy
        } else {
            vy
        };
        let t = (-vy / r).acos();
        if t >= PI {
            0.0
        } else {
            t
        }
    }

    #[test]
    fn symplectic_matrices_validate_determinant() {
        assert!(SymplecticMatrix2::new(2.0, 0.0, 0.0, 0.5).is_ok());
        assert!(matches!(
            SymplecticMatrix2::new(2.0, 0.0, 0.0, 1.0),
            Err(Error::NotSymplectic { .. })
        ));
    }

    #[test]
    fn iwasawa_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..1000 {
            let (t, a, b) = (
                rng.gen_range(-PI..PI),
                rng.gen_range(0.2..5.0),
                rng.gen_range(-3.0..3.0),
            );
            let s = SymplecticMatrix2::from_iwasawa(t, a, b);
            assert!((s.det() - 1.0).abs() <= DET_TOLERANCE);
            let (t2, a2, b2) = s.iwasawa();
            let back = SymplecticMatrix2::from_iwasawa(t2, a2, b2);
            assert!(back.max_abs_diff(&s) < 1e-12);
            assert!(a2 > 0.0);
            let line = QuadratureLine::new(rng.gen_range(0.0..PI));
            let flipped = QuadratureLine::new(line.angle() + PI);
            assert!(map_line(&s, &line).distance(&map_line(&s, &flipped)) < 1e-12);
        }
    }

    #[test]
    fn line_angles_wrap_pi_to_zero() {
        assert_eq!(QuadratureLine::new(PI).angle(), 0.0);
        assert_eq!(QuadratureLine::from_direction(0.0, 1.0).angle(), 0.0);
        assert!((QuadratureLine::new(-0.2).angle() - (PI - 0.2)).abs() < 1e-15);
    }

    #[test]
    fn map_line_examples() {
        let id = SymplecticMatrix2::identity();
        let l = QuadratureLine::new(0.7);
        assert!(map_line(&id, &l).distance(&l) < 1e-15);

        let rot = SymplecticMatrix2::rotation(FRAC_PI_2);
        let out = map_line(&rot, &QuadratureLine::new(0.0));
        assert!((out.angle() - FRAC_PI_2).abs() < 1e-15);

        let d = SymplecticMatrix2::new(2.0, 0.0, 0.0, 0.5).unwrap();
        let out = map_line(&d, &QuadratureLine::new(FRAC_PI_4));
        let h = core::f64::consts::FRAC_1_SQRT_2;
        let want = oracle_angle(2.0 * h, -0.5 * h);
        assert!((out.angle() - want).abs() < 1e-12);
        // cot t' = a^-2 cot t = 1/4
        assert!((1.0 / out.angle().tan() - 0.25).abs() < 1e-12);
    }

    #[test]
    fn map_line_matches_vector_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..200 {
            let s = SymplecticMatrix2::from_iwasawa(
                rng.gen_range(-PI..PI),
                rng.gen_range(0.3..3.0),
                rng.gen_range(-2.0..2.0),
            );
            let l = QuadratureLine::new(rng.gen_range(0.0..PI));
            let (vx, vy) = s.apply_vec(l.direction());
            let want = QuadratureLine::new(oracle_angle(vx, vy));
            assert!(map_line(&s, &l).distance(&want) < 1e-12);
        }
    }

    #[test]
    fn canonical_matrix_examples() {
        let s = canonical_triple_matrix(0.0, FRAC_PI_4, FRAC_PI_2).unwrap();
        assert!(s.max_abs_diff(&SymplecticMatrix2::identity()) < 1e-15);

        let s = canonical_triple_matrix(0.0, PI / 3.0, 2.0 * PI / 3.0).unwrap();
        let c = (4.0f64 / 3.0).powf(0.25);
        let want = SymplecticMatrix2 {
            a11: c,
            a12: 0.0,
            a21: -0.5 * c,
            a22: 0.5 * 3f64.sqrt() * c,
        };
        assert!(s.max_abs_diff(&want) < 1e-14);
        assert!((s.det() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn canonical_matrix_maps_random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let targets = canonical_targets();
        let mut done = 0;
        while done < 100 {
            let mut t = [
                rng.gen_range(0.0..PI),
                rng.gen_range(0.0..PI),
                rng.gen_range(0.0..PI),
            ];
            t.sort_by(|a, b| a.partial_cmp(b).unwrap());
            if t[1] - t[0] < 0.05 || t[2] - t[1] < 0.05 {
                continue;
            }
            done += 1;
            let s = canonical_triple_matrix(t[0], t[1], t[2]).unwrap();
            let scales = canonical_scale_factors(t[0], t[1], t[2]).unwrap();
            for j in 0..3 {
                let img = map_line(&s, &QuadratureLine::new(t[j]));
                assert!(img.distance(&targets[j]) <= 1e-10);
                let (vx, vy) = s.apply_vec((t[j].sin(), -t[j].cos()));
                let (tx, ty) = targets[j].direction();
                assert!((vx - scales[j] * tx).abs() <= 1e-10);
                assert!((vy - scales[j] * ty).abs() <= 1e-10);
            }
        }
    }

    #[test]
    fn canonical_matrix_rejects_bad_triples() {
        assert_eq!(
            canonical_triple_matrix(0.5, 0.2, 1.0),
            Err(Error::AngleOrder)
        );
        assert_eq!(
            canonical_triple_matrix(0.2, 0.2, 1.0),
            Err(Error::DegenerateAngles)
        );
        assert_eq!(
            canonical_triple_matrix(0.2, 1.0, 3.5),
            Err(Error::AngleOrder)
        );
    }

    #[test]
    fn triangular_examples() {
        let q = |n, d| RationalAngle::rational(n, d).unwrap();
        let (a, b) = triangular_from_targets(q(1, 4), q(1, 2)).unwrap();
        assert_eq!((a, b), (1.0, 0.0));

        let (a, b) = triangular_from_targets(q(1, 3), q(1, 2)).unwrap();
        assert!((a * a - 3f64.sqrt()).abs() < 1e-14);
        assert_eq!(b, 0.0);
        let s = SymplecticMatrix2::new(a, 0.0, b, 1.0 / a).unwrap();
        let targets = [0.0, PI / 3.0, FRAC_PI_2];
        for (src, dst) in [0.0, FRAC_PI_4, FRAC_PI_2].iter().zip(targets) {
            let img = map_line(&s, &QuadratureLine::new(*src));
            assert!(img.distance(&QuadratureLine::new(dst)) < 1e-10);
        }

        assert!(matches!(
            triangular_from_targets(q(1, 2), q(1, 3)),
            Err(Error::InfeasibleTargets { .. })
        ));
    }

    #[test]
    fn slope_law_matches_map_line() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..200 {
            let a: f64 = rng.gen_range(0.3..3.0);
            let b: f64 = rng.gen_range(-2.0..2.0);
            let s = SymplecticMatrix2::new(a, 0.0, b, 1.0 / a).unwrap();
            let t: f64 = rng.gen_range(0.2..PI - 0.2);
            let cot_img = (t.cos() / t.sin()) / (a * a) - b / a;
            let img = map_line(&s, &QuadratureLine::new(t)).angle();
            let want = QuadratureLine::new((1.0f64).atan2(cot_img));
            assert!(QuadratureLine::new(img).distance(&want) < 1e-12);
        }
    }

    #[test]
    fn fourth_line_residual_examples() {
        let q = |n, d| RationalAngle::rational(n, d).unwrap();
        assert_eq!(
            fourth_line_residual(q(2, 3), q(1, 4), q(1, 2), q(2, 3)).unwrap(),
            0.0
        );

        let t4p = (1.0f64).atan2(-1.0 / 3f64.sqrt());
        let r = fourth_line_residual(q(3, 4), q(1, 3), q(1, 2), t4p).unwrap();
        assert!(r < 1e-12, "{r}");

        assert!(fourth_line_residual(q(1, 3), q(1, 2), q(1, 3), q(1, 4)).is_err());
    }

    #[test]
    fn rational_targets_are_reduced_and_sorted() {
        let t = rational_targets(6);
        assert_eq!(t.len(), 11);
        assert_eq!(t[0], (1, 6));
        assert_eq!(t[5], (1, 2));
        for w in t.windows(2) {
            assert!((w[0].0 as f64 / w[0].1 as f64) < (w[1].0 as f64 / w[1].1 as f64));
        }
    }

    #[test]
    fn obstruction_search_finds_identity_for_rational_fourth_angle() {
        let r = obstruction_search(RationalAngle::rational(1, 3).unwrap(), 6).unwrap();
        assert_eq!(r.min_residual, Some(0.0));
        let hit = r.argmin.unwrap();
        // (pi/4, pi/2, pi/3) is one of the zero-residual triples
        let zero = fourth_line_residual(
            RationalAngle::rational(1, 3).unwrap(),
            RationalAngle::rational(1, 4).unwrap(),
            RationalAngle::rational(1, 2).unwrap(),
            RationalAngle::rational(1, 3).unwrap(),
        )
        .unwrap();
        assert_eq!(zero, 0.0);
        let again = fourth_line_residual(
            RationalAngle::rational(1, 3).unwrap(),
            RationalAngle::rational(hit[0] as i64, hit[1]).unwrap(),
            RationalAngle::rational(hit[2] as i64, hit[3]).unwrap(),
            RationalAngle::rational(hit[4] as i64, hit[5]).unwrap(),
        )
        .unwrap();
        assert_eq!(again, 0.0);
    }

    #[test]
    fn obstruction_search_rejects_small_denominator() {
        assert_eq!(obstruction_search(0.5, 1), Err(Error::InvalidDenominator));
        let r = obstruction_search(0.5, 2).unwrap();
        assert_eq!(r.examined, 0);
        assert_eq!(r.min_residual, None);
    }
}
