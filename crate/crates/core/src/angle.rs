//! Angles kept exact when they are rational multiples of pi.

use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

const TWO_PI: f64 = 2.0 * PI;

/// An angle in `[0, 2 pi)`.
///
/// `Rational { q, p }` stands for `q pi / p` with `gcd(q, p) = 1` and
/// `0 <= q < 2p`; `Real` is a floating-point fallback for angles that are
/// not (known to be) rational multiples of pi.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RationalAngle {
    Rational { q: i64, p: u64 },
    Real(f64),
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Reduces `value` into `[0, period)`, sending results that round up to
/// `period` back to zero.
pub(crate) fn reduce_mod(value: f64, period: f64) -> f64 {
    let r = num_traits::Euclid::rem_euclid(&value, &period);
    if r >= period {
        0.0
    } else {
        r
    }
}

impl RationalAngle {
    /// `q pi / p`, reduced to lowest terms in `[0, 2 pi)`.
    pub fn rational(q: i64, p: u64) -> Result<Self> {
        if p == 0 {
            return Err(Error::ZeroDenominator);
        }
        let two_p = 2 * p as i128;
        let q = (q as i128).rem_euclid(two_p) as u64;
        let g = gcd(q, p);
        let (q, p) = if q == 0 { (0, 1) } else { (q / g, p / g) };
        Ok(RationalAngle::Rational { q: q as i64, p })
    }

    pub fn real(value: f64) -> Result<Self> {
        if !value.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(RationalAngle::Real(reduce_mod(value, TWO_PI)))
    }

    pub fn zero() -> Self {
        RationalAngle::Rational { q: 0, p: 1 }
    }

    pub fn value(&self) -> f64 {
        match *self {
            RationalAngle::Rational { q, p } => q as f64 * PI / p as f64,
            RationalAngle::Real(v) => v,
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, RationalAngle::Rational { .. })
    }

    /// `(q, p)` for rational angles.
    pub fn as_fraction(&self) -> Option<(i64, u64)> {
        match *self {
            RationalAngle::Rational { q, p } => Some((q, p)),
            RationalAngle::Real(_) => None,
        }
    }

    /// The same line angle reduced into `[0, pi)`.
    pub fn mod_pi(&self) -> Self {
        match *self {
            RationalAngle::Rational { q, p } => {
                RationalAngle::rational(q.rem_euclid(p as i64), p).expect("p > 0")
            }
            RationalAngle::Real(v) => RationalAngle::Real(reduce_mod(v, PI)),
        }
    }

    /// Sum of two angles; exact when both are rational.
    pub fn add(&self, other: &RationalAngle) -> RationalAngle {
        match (*self, *other) {
            (
                RationalAngle::Rational { q: q1, p: p1 },
                RationalAngle::Rational { q: q2, p: p2 },
            ) => {
                let p = p1 as i128 * p2 as i128;
                let q = q1 as i128 * p2 as i128 + q2 as i128 * p1 as i128;
                let g = gcd(q.unsigned_abs() as u64, p as u64).max(1) as i128;
                RationalAngle::rational((q / g) as i64, (p / g) as u64).expect("p > 0")
            }
            (a, b) => RationalAngle::Real(reduce_mod(a.value() + b.value(), TWO_PI)),
        }
    }

    pub fn neg(&self) -> RationalAngle {
        match *self {
            RationalAngle::Rational { q, p } => RationalAngle::rational(-q, p).expect("p > 0"),
            RationalAngle::Real(v) => RationalAngle::Real(reduce_mod(-v, TWO_PI)),
        }
    }

    pub fn sub(&self, other: &RationalAngle) -> RationalAngle {
        self.add(&other.neg())
    }

    /// `exp(-i n theta)`, the eigenvalue of the fractional Fourier transform
    /// on the `n`-th Hermite function.
    ///
    /// For rational angles the multiple `n q mod 2p` is reduced in integers,
    /// so the quarter-turn phases `1, -i, -1, i` are exact.
    pub fn eigenphase(&self, n: usize) -> Complex64 {
        match *self {
            RationalAngle::Rational { q, p } => {
                let two_p = 2 * p as u128;
                let m = (n as u128 * q as u128) % two_p;
                exact_unit(m, two_p).conj()
            }
            RationalAngle::Real(v) => {
                let a = reduce_mod(n as f64 * v, TWO_PI);
                Complex64::new(a.cos(), -a.sin())
            }
        }
    }

    /// Cotangent, exact (`0`, `1`, `-1`) at odd multiples of `pi/4`.
    pub fn cot(&self) -> f64 {
        match *self {
            RationalAngle::Rational { q, p } => {
                // reduce mod pi: cot has period pi
                let q = (q as u64) % p;
                if 2 * q == p {
                    0.0
                } else if 4 * q == p {
                    1.0
                } else if 4 * q == 3 * p {
                    -1.0
                } else {
                    let a = q as f64 * PI / p as f64;
                    a.cos() / a.sin()
                }
            }
            RationalAngle::Real(v) => v.cos() / v.sin(),
        }
    }
}

/// `exp(2 pi i m / n)` with exact values at the quarter turns.
fn exact_unit(m: u128, n: u128) -> Complex64 {
    if m == 0 {
        Complex64::new(1.0, 0.0)
    } else if 4 * m == n {
        Complex64::new(0.0, 1.0)
    } else if 2 * m == n {
        Complex64::new(-1.0, 0.0)
    } else if 4 * m == 3 * n {
        Complex64::new(0.0, -1.0)
    } else {
        let a = TWO_PI * m as f64 / n as f64;
        Complex64::new(a.cos(), a.sin())
    }
}

impl From<f64> for RationalAngle {
    /// Wraps a finite real value; non-finite values map to zero.
    fn from(value: f64) -> Self {
        RationalAngle::real(value).unwrap_or(RationalAngle::zero())
    }
}
