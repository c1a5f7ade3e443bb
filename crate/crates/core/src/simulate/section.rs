//! Returns to the half-plane {v = 0, u > 0}: period and displacement.

use crate::error::{Error, Result};
use crate::normalform::NormalForm3;
use crate::polysys::VectorField3;

use super::dopri::{Dopri5, State, StepRecord};
use super::{real, rhs, Real, Tolerances};

/// Bound on the section-coordinate residual of a located crossing.
pub const CROSSING_RESIDUAL: f64 = 1e-12;
/// Per-turn change of `w / rho0` accepted as settled.
pub const OMEGA_SETTLED: f64 = 1e-10;

#[derive(Clone, Debug)]
pub struct Crossing<T> {
    pub time: T,
    pub state: State<T>,
    /// `|v|` at the located crossing.
    pub residual: f64,
}

/// Walks an orbit and reports successive crossings of the section in the
/// sense of rotation.
pub struct SectionWalker<T, F> {
    stepper: Dopri5<T, F>,
    orientation: T,
    horizon: T,
    pub crossings: usize,
}

impl<T: Real, F: Fn(&State<T>) -> State<T>> SectionWalker<T, F> {
    pub fn new(f: F, x0: State<T>, orientation: i8, horizon: T, tol: Tolerances) -> Result<Self> {
        let stepper = Dopri5::new(f, T::zero(), x0, tol.rtol, tol.atol)?;
        Ok(SectionWalker { stepper, orientation: real(orientation as f64), horizon, crossings: 0 })
    }

    pub fn stepper(&self) -> &Dopri5<T, F> {
        &self.stepper
    }

    pub fn next_crossing(&mut self) -> Result<Crossing<T>> {
        let o = self.orientation;
        loop {
            if self.stepper.time() >= self.horizon {
                return Err(Error::NoReturn(self.horizon.to_f64().unwrap_or(f64::NAN)));
            }
            let rec = self.stepper.step(self.horizon)?;
            if !rec.y1.iter().all(|x| x.is_finite()) {
                return Err(Error::StiffnessFailure(rec.t1.to_f64().unwrap_or(f64::NAN)));
            }
            if o * rec.y0[1] < T::zero() && o * rec.y1[1] >= T::zero() {
                let c = self.locate(&rec)?;
                if c.state[0] > T::zero() {
                    self.crossings += 1;
                    return Ok(c);
                }
            }
        }
    }

    /// Bisection on the interpolant, then Newton on exact sub-steps.
    fn locate(&self, rec: &StepRecord<T>) -> Result<Crossing<T>> {
        let o = self.orientation;
        let (mut lo, mut hi) = (rec.t0, rec.t1);
        for _ in 0..40 {
            let mid = (lo + hi) / real(2.0);
            if o * rec.dense.eval(mid)[1] < T::zero() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let mut s = (lo + hi) / real(2.0) - rec.t0;
        let mut best: Option<(T, State<T>, T)> = None;
        for _ in 0..12 {
            let y = self.stepper.step_from(rec, s);
            let r = y[1].abs();
            if let Some((_, _, rb)) = &best {
                if r >= *rb {
                    break;
                }
            }
            best = Some((s, y, r));
            if r == T::zero() {
                break;
            }
            let vdot = self.stepper.rhs(&y)[1];
            if vdot == T::zero() {
                break;
            }
            s = s - y[1] / vdot;
        }
        let (s, state, r) = best.expect("at least one Newton iterate");
        let residual = r.to_f64().unwrap_or(f64::INFINITY);
        if residual >= CROSSING_RESIDUAL {
            return Err(Error::NonConvergence(format!("section crossing residual {residual:e}")));
        }
        Ok(Crossing { time: rec.t0 + s, state, residual })
    }
}

#[derive(Clone, Debug)]
pub struct PeriodMeasurement<T> {
    pub period: T,
    /// `u` at the two crossings that bracket the measured period.
    pub rho_first: T,
    pub rho_second: T,
    pub crossings: usize,
}

impl<T: Real> PeriodMeasurement<T> {
    /// Relative radial change over the measured turn; large on a focus.
    pub fn radial_drift(&self) -> f64 {
        ((self.rho_second - self.rho_first) / self.rho_first).abs().to_f64().unwrap_or(f64::INFINITY)
    }
}

fn turn_horizon<T: Real>(turns: f64) -> T {
    real::<T>(turns) * real::<T>(2.0) * T::PI()
}

/// Time between successive same-sense section crossings after letting the
/// transverse direction settle, starting from `(rho0, 0, 0)`.
pub fn measure_period<T: Real>(
    nf: &NormalForm3<T>,
    rho0: T,
    settle_time: T,
    tol: Tolerances,
) -> Result<PeriodMeasurement<T>> {
    let f: &VectorField3<T> = &nf.field;
    let horizon = settle_time + turn_horizon::<T>(4.0);
    let mut walker = SectionWalker::new(rhs(f), [rho0, T::zero(), T::zero()], nf.orientation, horizon, tol)?;
    let first = loop {
        let c = walker.next_crossing()?;
        if c.time >= settle_time {
            break c;
        }
    };
    let second = walker.next_crossing()?;
    Ok(PeriodMeasurement {
        period: second.time - first.time,
        rho_first: first.state[0],
        rho_second: second.state[0],
        crossings: walker.crossings,
    })
}

#[derive(Clone, Debug)]
pub struct DisplacementSample<T> {
    pub rho0: T,
    /// First-return radial change on the settled path.
    pub value: T,
    /// Settled transverse coordinate `w / rho0` at the start.
    pub omega: T,
    /// Section crossings computed while settling.
    pub crossings: usize,
    /// Remaining per-turn change of `w / rho0`.
    pub omega_residual: f64,
    /// Section-coordinate residual of the final crossing.
    pub crossing_residual: f64,
}

/// Reduced displacement at `rho0`: the start `w` is chosen by a secant
/// iteration so that `w` returns to itself after one turn, which selects the
/// orbit on the invariant manifold through the focus.
pub fn displacement<T: Real>(nf: &NormalForm3<T>, rho0: T, tol: Tolerances) -> Result<DisplacementSample<T>> {
    if !(rho0 > T::zero()) {
        return Err(Error::InvalidArgument("rho0 must be positive".into()));
    }
    let f: &VectorField3<T> = &nf.field;
    let mut crossings = 0;
    let mut first_return = |w: T| -> Result<Crossing<T>> {
        let mut walker = SectionWalker::new(rhs(f), [rho0, T::zero(), w], nf.orientation, turn_horizon::<T>(3.0), tol)?;
        crossings += 1;
        walker.next_crossing()
    };
    let settled = |g: T| (g / rho0).abs().to_f64().unwrap_or(f64::INFINITY) < OMEGA_SETTLED;
    let mut wa = T::zero();
    let mut ca = first_return(wa)?;
    let mut ga = ca.state[2] - wa;
    if !settled(ga) {
        let mut wb = ca.state[2];
        let mut cb = first_return(wb)?;
        let mut gb = cb.state[2] - wb;
        let mut iterations = 0;
        while !settled(gb) {
            iterations += 1;
            if iterations > 40 || gb == ga {
                let r = (gb / rho0).abs().to_f64().unwrap_or(f64::NAN);
                return Err(Error::NonConvergence(format!("transverse settling stalled at residual {r:e}")));
            }
            let wn = wb - gb * (wb - wa) / (gb - ga);
            (wa, ga) = (wb, gb);
            wb = wn;
            cb = first_return(wb)?;
            gb = cb.state[2] - wb;
        }
        (wa, ca, ga) = (wb, cb, gb);
    }
    Ok(DisplacementSample {
        rho0,
        value: ca.state[0] - rho0,
        omega: wa / rho0,
        crossings,
        omega_residual: (ga / rho0).abs().to_f64().unwrap_or(f64::NAN),
        crossing_residual: ca.residual,
    })
}

/// Richardson estimate of the cubic displacement coefficient from samples at
/// `rho` and `rho / 2`, assuming `d(rho) = a rho^3 + b rho^4 + ...`.
pub fn cubic_coefficient<T: Real>(coarse: &DisplacementSample<T>, fine: &DisplacementSample<T>) -> T {
    let a = coarse.value / coarse.rho0.powi(3);
    let b = fine.value / fine.rho0.powi(3);
    let ratio = coarse.rho0 / fine.rho0;
    (ratio * b - a) / (ratio - T::one())
}
