//! Closed-form equilibria of the four-wing system and its parameter regions.

use serde::Serialize;

use crate::error::{Error, Result};
use num_traits::{One, Zero};

use crate::field::{Field, ParamExpr, Rational};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Equilibrium {
    /// `E1`, `E2+`, `E2-`, ... ; at `d = 0` the off-axis families are
    /// labelled `E4±` (z = (b-a+√Δ)/2) and `E5±` (z = (b-a-√Δ)/2).
    pub label: String,
    pub point: [f64; 3],
}

/// The on-axis equilibrium `(0, 0, 1/d)` in exact arithmetic.
pub fn e1_exact<T: Field>(d: &T) -> Result<[T; 3]> {
    let inv = d.try_inv().ok_or(Error::DivisionByZero)?;
    Ok([T::zero(), T::zero(), inv])
}

pub fn e1_symbolic(d_index: usize) -> [ParamExpr; 3] {
    let d = ParamExpr::var(d_index);
    [ParamExpr::zero(), ParamExpr::zero(), ParamExpr::one().checked_div(&d).expect("d is nonzero")]
}

pub fn discriminant(a: f64, b: f64, c: f64) -> f64 {
    (a + b) * (a + b) + 4.0 * a * c
}

/// Off-axis equilibria: `z` solves `z² + (a-b)z - a(b+c) = 0`, then
/// `x² = (a+z)(dz-1)/a` and `y = a·x/(a+z)`. `sign = +1` selects
/// `z = (b-a-√Δ)/2`.
fn off_axis(a: f64, b: f64, c: f64, d: f64, sign: f64) -> Option<([f64; 3], [f64; 3])> {
    let delta = discriminant(a, b, c);
    if delta <= 0.0 || a == 0.0 || c == 0.0 {
        return None;
    }
    let z = (b - a - sign * delta.sqrt()) / 2.0;
    let apz = a + z;
    if apz == 0.0 {
        return None;
    }
    let x2 = apz * (d * z - 1.0) / a;
    if x2 <= 0.0 {
        return None;
    }
    let x = x2.sqrt();
    let y = a * x / apz;
    Some(([x, y, z], [-x, -y, z]))
}

/// All real equilibria of the four-wing system given by closed formulas.
pub fn khaled_equilibria(a: f64, b: f64, c: f64, d: f64) -> Vec<Equilibrium> {
    let mut out = Vec::new();
    if d != 0.0 {
        out.push(Equilibrium { label: "E1".into(), point: [0.0, 0.0, 1.0 / d] });
    }
    let (lo, hi) = if d != 0.0 { ("E2", "E3") } else { ("E5", "E4") };
    for (sign, name) in [(1.0, lo), (-1.0, hi)] {
        if let Some((p, m)) = off_axis(a, b, c, d, sign) {
            // `-` member has x < 0.
            out.push(Equilibrium { label: format!("{name}+"), point: p });
            out.push(Equilibrium { label: format!("{name}-"), point: m });
        }
    }
    out
}

pub fn find_equilibrium(label: &str, a: f64, b: f64, c: f64, d: f64) -> Result<[f64; 3]> {
    let label = label.trim();
    let want = if label.ends_with(['+', '-']) { label.to_string() } else { format!("{label}-") };
    khaled_equilibria(a, b, c, d)
        .into_iter()
        .find(|e| e.label == want || (label == "E1" && e.label == "E1"))
        .map(|e| e.point)
        .ok_or_else(|| Error::RegionUndefined(format!("equilibrium {label} does not exist at (a,b,c,d)=({a},{b},{c},{d})")))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Region {
    W1,
    W2,
    W3,
    W4,
}

impl std::str::FromStr for Region {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "W1" => Ok(Region::W1),
            "W2" => Ok(Region::W2),
            "W3" => Ok(Region::W3),
            "W4" => Ok(Region::W4),
            _ => Err(Error::SchemaError(format!("unknown region {s}"))),
        }
    }
}

/// Membership of `(a, b, c)` in a `d = 0` parameter region. Exact: the
/// comparisons with `-a ± √Δ` are decided by squaring.
pub fn check_existence_conditions(region: Region, a: &Rational, b: &Rational, c: &Rational) -> Result<bool> {
    let zero = Rational::from_integer(0.into());
    let delta = (a + b) * (a + b) + Rational::from_integer(4.into()) * a * c;
    if delta <= zero {
        return Err(Error::RegionUndefined(format!("discriminant {delta} is not positive")));
    }
    if c == &zero {
        return Ok(false);
    }
    // t = b + a; compare t with ∓√Δ.
    let t = b + a;
    let below_minus = t < zero && &t * &t > delta; // b < -a - √Δ
    let above_minus = !(t < zero && &t * &t >= delta); // b > -a - √Δ
    let below_plus = t < zero || &t * &t < delta; // b < -a + √Δ
    let above_plus = t > zero && &t * &t > delta; // b > -a + √Δ
    Ok(match region {
        Region::W1 => a > &zero && below_minus,
        Region::W2 => a < &zero && above_minus,
        Region::W3 => a > &zero && below_plus,
        Region::W4 => a < &zero && above_plus,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{int, rat};

    #[test]
    fn off_axis_point_matches_hand_value() {
        let p = find_equilibrium("E4", -0.25, 73.0 / 32.0, 0.25, 0.0).unwrap();
        assert!((p[0] + 8f64.sqrt()).abs() < 1e-12);
        assert!((p[1] - 0.125 * 8f64.sqrt()).abs() < 1e-12);
        assert!((p[2] - 2.25).abs() < 1e-12);
    }

    #[test]
    fn regions() {
        let (a, b, c) = (int(1), int(-8), int(3));
        assert!(check_existence_conditions(Region::W3, &a, &b, &c).unwrap());
        assert!(!check_existence_conditions(Region::W1, &a, &b, &c).unwrap());
        assert!(!check_existence_conditions(Region::W1, &int(0), &int(1), &int(1)).unwrap());
        // Δ = (a+b)^2 + 4ac = 0
        assert!(matches!(
            check_existence_conditions(Region::W1, &int(1), &int(1), &rat(-1, 1)),
            Err(Error::RegionUndefined(_))
        ));
    }
}
