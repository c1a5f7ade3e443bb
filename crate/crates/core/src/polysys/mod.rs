//! Polynomial vector fields in three state variables.

mod linalg;
mod statepoly;
mod system;

pub use linalg::{cross, det, identity, inverse, map_matrix, mat_mul, mat_vec, principal_minor_sum, rank_with_pivots, solve, trace, Matrix3};
pub use statepoly::{exp_degree, Exp3, StatePoly};
pub use system::{parse_system, specialize, to_float, Backend, EquationTerm, ParamValue, SystemDef, SystemInstance};

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{ExactSqrt, Field, Ordered, ParamSpace};

/// Right-hand side `(ẋ, ẏ, ż)` of a polynomial system.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorField3<T> {
    pub comps: [StatePoly<T>; 3],
    pub params: ParamSpace,
    pub state_vars: [String; 3],
}

impl<T: Field> VectorField3<T> {
    pub fn new(comps: [StatePoly<T>; 3]) -> Self {
        VectorField3 { comps, params: ParamSpace::default(), state_vars: ["u".into(), "v".into(), "w".into()] }
    }

    pub fn with_params(mut self, params: ParamSpace) -> Self {
        self.params = params;
        self
    }

    pub fn with_state_vars(mut self, vars: [String; 3]) -> Self {
        self.state_vars = vars;
        self
    }

    pub fn zero() -> Self {
        Self::new([StatePoly::zero(), StatePoly::zero(), StatePoly::zero()])
    }

    pub fn evaluate(&self, x: &[T; 3]) -> [T; 3] {
        std::array::from_fn(|i| self.comps[i].eval(x))
    }

    pub fn jacobian_at(&self, x: &[T; 3]) -> Matrix3<T> {
        std::array::from_fn(|i| std::array::from_fn(|j| self.comps[i].derivative(j).eval(x)))
    }

    /// Linear part at the origin.
    pub fn linear_part(&self) -> Matrix3<T> {
        std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                let mut e = [0, 0, 0];
                e[j] = 1;
                self.comps[i].coeff(&e)
            })
        })
    }

    pub fn map<U: Field, F: Fn(&T) -> U>(&self, f: F) -> VectorField3<U> {
        VectorField3 {
            comps: std::array::from_fn(|i| self.comps[i].map(&f)),
            params: self.params.clone(),
            state_vars: self.state_vars.clone(),
        }
    }

    pub fn try_map<U: Field, F: Fn(&T) -> Result<U>>(&self, f: F) -> Result<VectorField3<U>> {
        let [a, b, c] = &self.comps;
        Ok(VectorField3 {
            comps: [a.try_map(&f)?, b.try_map(&f)?, c.try_map(&f)?],
            params: self.params.clone(),
            state_vars: self.state_vars.clone(),
        })
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for i in 0..3 {
            out.comps[i] = self.comps[i].sub(&other.comps[i]);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(StatePoly::is_zero)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.sub(other).comps.iter().all(|c| c.approx_zero(tol))
    }

    /// Dynamics of `q` where `x = shift + linear·q` and the new time is
    /// `time_scale · t`: `q' = linear⁻¹ f(shift + linear·q) / time_scale`.
    pub fn transform(&self, shift: &[T; 3], linear: &Matrix3<T>, time_scale: &T) -> Result<Self> {
        let inv = inverse(linear)?;
        let ts_inv = time_scale.try_inv().ok_or(Error::SingularTransform)?;
        let subs: [StatePoly<T>; 3] = std::array::from_fn(|i| {
            let mut p = StatePoly::constant(shift[i].clone());
            for j in 0..3 {
                p = p.add(&StatePoly::var(j).scale(&linear[i][j]));
            }
            p
        });
        let composed: [StatePoly<T>; 3] = std::array::from_fn(|i| self.comps[i].compose(&subs));
        let comps = std::array::from_fn(|i| {
            let mut acc = StatePoly::zero();
            for j in 0..3 {
                acc = acc.add(&composed[j].scale(&inv[i][j].mul_ref(&ts_inv)));
            }
            acc
        });
        Ok(VectorField3 { comps, params: self.params.clone(), state_vars: self.state_vars.clone() })
    }

    /// Translate an equilibrium to the origin.
    pub fn translate(&self, point: &[T; 3]) -> Self {
        self.transform(point, &identity(), &T::one()).expect("identity is invertible")
    }
}

/// `P(λ) = λ³ + αλ² + βλ + γ`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CharCubic<T> {
    pub alpha: T,
    pub beta: T,
    pub gamma: T,
}

pub fn char_cubic<T: Field>(m: &Matrix3<T>) -> CharCubic<T> {
    CharCubic { alpha: -trace(m), beta: principal_minor_sum(m), gamma: -det(m) }
}

impl<T: Field> CharCubic<T> {
    pub fn eval(&self, x: &T) -> T {
        let x2 = x.mul_ref(x);
        x2.mul_ref(x) + self.alpha.mul_ref(&x2) + self.beta.mul_ref(x) + self.gamma.clone()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HopfVerdict {
    Hopf,
    NotHopf,
    /// Residual signs could not be decided symbolically.
    Undecided,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HopfReport<T> {
    pub is_hopf: bool,
    pub verdict: HopfVerdict,
    /// `√β` when the square root exists in the field.
    pub omega: Option<T>,
    pub omega_squared: T,
    pub lambda3: T,
    /// `γ − αβ`, zero exactly at a Hopf point.
    pub residual: T,
    pub beta: T,
}

/// Hopf test on a characteristic cubic: imaginary pair `±i√β` with a real
/// eigenvalue `−α` iff `γ = αβ` and `β > 0`.
pub fn hopf_test<T: Ordered + ExactSqrt>(c: &CharCubic<T>, tol: f64) -> HopfReport<T> {
    let residual = c.gamma.clone() - c.alpha.mul_ref(&c.beta);
    let res_zero = if T::is_exact() {
        if residual.is_zero() {
            Some(true)
        } else {
            residual.sign().map(|_| false)
        }
    } else {
        let scale = 1.0 + c.gamma.to_f64().unwrap_or(0.0).abs() + (c.alpha.to_f64().unwrap_or(0.0) * c.beta.to_f64().unwrap_or(0.0)).abs();
        Some(residual.approx_zero(tol * scale))
    };
    let beta_pos = c.beta.sign().map(|s| s == Ordering::Greater);
    let verdict = match (res_zero, beta_pos) {
        (Some(false), _) | (_, Some(false)) => HopfVerdict::NotHopf,
        (Some(true), Some(true)) => HopfVerdict::Hopf,
        _ => HopfVerdict::Undecided,
    };
    let omega = match verdict {
        HopfVerdict::NotHopf => None,
        _ => c.beta.sqrt_exact(),
    };
    HopfReport {
        is_hopf: verdict == HopfVerdict::Hopf,
        verdict,
        omega,
        omega_squared: c.beta.clone(),
        lambda3: -c.alpha.clone(),
        residual,
        beta: c.beta.clone(),
    }
}

/// Newton iteration with step halving (up to 40 times) on a float field;
/// converges when the residual norm drops below 1e-12.
pub fn newton(f: &VectorField3<f64>, seed: [f64; 3], max_iter: usize) -> Result<[f64; 3]> {
    let norm = |v: &[f64; 3]| (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    let mut x = seed;
    let mut fx = f.evaluate(&x);
    for _ in 0..max_iter {
        let r = norm(&fx);
        if r < 1e-12 {
            return Ok(x);
        }
        let j = f.jacobian_at(&x);
        let jinv = inverse(&j).map_err(|_| Error::NonConvergence("singular Jacobian".into()))?;
        let step = mat_vec(&jinv, &fx);
        let mut t = 1.0;
        let mut accepted = false;
        for _ in 0..=40 {
            let cand = [x[0] - t * step[0], x[1] - t * step[1], x[2] - t * step[2]];
            let fc = f.evaluate(&cand);
            if norm(&fc) < r {
                x = cand;
                fx = fc;
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if !accepted {
            // Stalled at rounding level: accept if already tiny.
            if r < 1e-10 {
                return Ok(x);
            }
            return Err(Error::NonConvergence(format!("damping exhausted at residual {r:e}")));
        }
    }
    if norm(&fx) < 1e-12 {
        Ok(x)
    } else {
        Err(Error::NonConvergence(format!("{max_iter} iterations, residual {:e}", norm(&fx))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{int, Rational};

    fn linear_field(m: Matrix3<Rational>) -> VectorField3<Rational> {
        VectorField3::new(std::array::from_fn(|i| {
            let mut p = StatePoly::zero();
            for j in 0..3 {
                p = p.add(&StatePoly::var(j).scale(&m[i][j]));
            }
            p
        }))
    }

    #[test]
    fn identity_char_cubic() {
        let c = char_cubic::<Rational>(&identity());
        assert_eq!((c.alpha, c.beta, c.gamma), (int(-3), int(3), int(-1)));
    }

    #[test]
    fn jacobian_of_linear_field_is_its_matrix() {
        let m = [[int(1), int(2), int(0)], [int(-3), int(0), int(5)], [int(0), int(7), int(-1)]];
        let f = linear_field(m.clone());
        assert_eq!(f.jacobian_at(&[int(0), int(0), int(0)]), m);
    }

    #[test]
    fn hopf_on_rotation_plus_decay() {
        let m = [[int(0), int(-1), int(0)], [int(1), int(0), int(0)], [int(0), int(0), int(-2)]];
        let r = hopf_test(&char_cubic(&m), 0.0);
        assert!(r.is_hopf);
        assert_eq!(r.omega, Some(int(1)));
        assert_eq!(r.lambda3, int(-2));
        let zero_beta = CharCubic { alpha: int(1), beta: int(0), gamma: int(0) };
        assert!(!hopf_test(&zero_beta, 0.0).is_hopf);
    }

    #[test]
    fn identity_transform_is_identity() {
        let f = linear_field([[int(1), int(2), int(0)], [int(-3), int(0), int(5)], [int(0), int(7), int(-1)]]);
        let zero = [int(0), int(0), int(0)];
        assert_eq!(f.transform(&zero, &identity(), &int(1)).unwrap(), f);
    }
}
