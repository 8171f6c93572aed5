//! Angles written as multiples of π (`pi`, `-pi/2`, `3*pi/4`, `2pi`) or as
//! decimal radians.

use std::f64::consts::{FRAC_PI_2, PI};

use thiserror::Error;

use crate::linalg::Complex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid angle `{0}`: expected decimal radians or [k*]pi[/d]")]
pub struct AngleError(pub String);

/// Parses an angle literal to radians.
///
/// `pi` parses to exactly [`PI`] and `pi/2` to exactly [`FRAC_PI_2`], so
/// [`unit_phase`] returns exact values for them.
pub fn parse_angle(text: &str) -> Result<f64, AngleError> {
    let err = || AngleError(text.to_string());
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let lower = s.to_ascii_lowercase();
    let Some(pi_at) = lower.find("pi").or_else(|| lower.find('π')) else {
        let v: f64 = s.parse().map_err(|_| err())?;
        return if v.is_finite() { Ok(v) } else { Err(err()) };
    };
    let pi_len = if lower[pi_at..].starts_with("pi") { 2 } else { 'π'.len_utf8() };
    let (head, tail) = (&lower[..pi_at], &lower[pi_at + pi_len..]);
    let head = head.strip_suffix('*').unwrap_or(head);
    let coef = match head {
        "" | "+" => 1.0,
        "-" => -1.0,
        h => h.parse::<f64>().map_err(|_| err())?,
    };
    let denom = match tail {
        "" => 1.0,
        t => t
            .strip_prefix('/')
            .ok_or_else(err)?
            .parse::<f64>()
            .map_err(|_| err())?,
    };
    if denom == 0.0 || !coef.is_finite() || !denom.is_finite() {
        return Err(err());
    }
    Ok(coef * PI / denom)
}

/// `e^{i theta}`, exact when `theta` is an integer multiple of `pi/2`.
pub fn unit_phase(theta: f64) -> Complex {
    let quarter_turns = theta / FRAC_PI_2;
    if quarter_turns.fract() == 0.0 && quarter_turns.abs() < 9.0e15 {
        return match (quarter_turns as i64).rem_euclid(4) {
            0 => Complex::new(1.0, 0.0),
            1 => Complex::new(0.0, 1.0),
            2 => Complex::new(-1.0, 0.0),
            _ => Complex::new(0.0, -1.0),
        };
    }
    Complex::from_polar(1.0, theta)
}
