//! Angle syntax.
//!
//! Accepted forms, case-insensitive and ignoring whitespace:
//!
//! - `pi`, `-pi`, `pi/4`, `3pi/8`, `3*pi/8`, `3/8 pi`, `π/2`: rational
//!   multiples of pi, kept exact;
//! - `acot(x)` with `x` any accepted form or decimal, in `(0, pi)`;
//! - plain decimals (radians). A decimal equal to zero is the exact angle
//!   zero; every other decimal is a real angle.

use std::f64::consts::PI;

use thiserror::Error;
use triquad_core::RationalAngle;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse angle `{0}`")]
pub struct AngleParseError(pub String);

/// A parsed angle with its value in radians, kept unreduced.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Angle {
    pub radians: f64,
    /// Set for exact rational multiples of pi.
    pub exact: Option<RationalAngle>,
}

impl Angle {
    /// The exact angle when available, otherwise the real value (reduced
    /// into `[0, 2 pi)`).
    pub fn to_rational_angle(&self) -> RationalAngle {
        self.exact
            .unwrap_or_else(|| RationalAngle::from(self.radians))
    }
}

pub fn parse_angle(text: &str) -> Result<Angle, AngleParseError> {
    let err = || AngleParseError(text.to_string());
    let s: String = text
        .chars()
        .filter(|c| !c.is_whitespace())
        .collect::<String>()
        .to_lowercase()
        .replace('π', "pi");
    if s.is_empty() {
        return Err(err());
    }
    if let Some(inner) = s.strip_prefix("acot(").and_then(|r| r.strip_suffix(')')) {
        let x = parse_angle(inner).map_err(|_| err())?.radians;
        return Ok(Angle {
            radians: 1.0f64.atan2(x),
            exact: None,
        });
    }
    if s.contains("pi") {
        return parse_pi_multiple(&s).ok_or_else(err);
    }
    let v: f64 = s.parse().map_err(|_| err())?;
    if !v.is_finite() {
        return Err(err());
    }
    Ok(Angle {
        radians: v,
        exact: (v == 0.0).then(RationalAngle::zero),
    })
}

fn parse_pi_multiple(s: &str) -> Option<Angle> {
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (before, after) = body.split_once("pi")?;
    let before = before.strip_suffix('*').unwrap_or(before);
    // `q/p pi` or `q pi`
    let (num, mut den): (u64, u64) = if before.is_empty() {
        (1, 1)
    } else if let Some((q, p)) = before.split_once('/') {
        (q.parse().ok()?, p.parse().ok()?)
    } else {
        (before.parse().ok()?, 1)
    };
    // `pi/p`
    if !after.is_empty() {
        let p: u64 = after.strip_prefix('/')?.parse().ok()?;
        den = den.checked_mul(p)?;
    }
    if den == 0 {
        return None;
    }
    if num > i64::MAX as u64 {
        return None;
    }
    let q = if negative { -(num as i64) } else { num as i64 };
    let radians = q as f64 * PI / den as f64;
    Some(Angle {
        radians,
        exact: RationalAngle::rational(q, den).ok(),
    })
}
