//! Dormand-Prince 5(4) embedded pair with fourth-order dense output.

use crate::error::{Error, Result};

use super::{real, Real};

pub type State<T> = [T; 3];

struct Tableau<T> {
    a: [[T; 6]; 7],
    b: [T; 7],
    e: [T; 7],
    d: [T; 7],
}

fn q<T: Real>(n: f64, d: f64) -> T {
    real::<T>(n) / real::<T>(d)
}

impl<T: Real> Tableau<T> {
    fn new() -> Self {
        let z = T::zero;
        let a = [
            [z(), z(), z(), z(), z(), z()],
            [q(1.0, 5.0), z(), z(), z(), z(), z()],
            [q(3.0, 40.0), q(9.0, 40.0), z(), z(), z(), z()],
            [q(44.0, 45.0), q(-56.0, 15.0), q(32.0, 9.0), z(), z(), z()],
            [q(19372.0, 6561.0), q(-25360.0, 2187.0), q(64448.0, 6561.0), q(-212.0, 729.0), z(), z()],
            [q(9017.0, 3168.0), q(-355.0, 33.0), q(46732.0, 5247.0), q(49.0, 176.0), q(-5103.0, 18656.0), z()],
            [q(35.0, 384.0), z(), q(500.0, 1113.0), q(125.0, 192.0), q(-2187.0, 6784.0), q(11.0, 84.0)],
        ];
        let b = [q(35.0, 384.0), z(), q(500.0, 1113.0), q(125.0, 192.0), q(-2187.0, 6784.0), q(11.0, 84.0), z()];
        let e = [
            q(71.0, 57600.0),
            z(),
            q(-71.0, 16695.0),
            q(71.0, 1920.0),
            q(-17253.0, 339200.0),
            q(22.0, 525.0),
            q(-1.0, 40.0),
        ];
        let d = [
            q(-12715105075.0, 11282082432.0),
            z(),
            q(87487479700.0, 32700410799.0),
            q(-10690763975.0, 1880347072.0),
            q(701980252875.0, 199316789632.0),
            q(-1453857185.0, 822651844.0),
            q(69997945.0, 29380423.0),
        ];
        Tableau { a, b, e, d }
    }
}

/// Counters accumulated over a run.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct StepStats {
    pub steps: usize,
    pub rejected: usize,
    pub evaluations: usize,
    /// Largest normalized error estimate of an accepted step (at most 1).
    pub max_error: f64,
}

/// Continuous extension over one accepted step.
#[derive(Clone, Debug)]
pub struct DenseStep<T> {
    pub t0: T,
    pub h: T,
    r: [State<T>; 5],
}

impl<T: Real> DenseStep<T> {
    pub fn t1(&self) -> T {
        self.t0 + self.h
    }

    pub fn eval(&self, t: T) -> State<T> {
        let th = (t - self.t0) / self.h;
        let th1 = T::one() - th;
        let r = &self.r;
        std::array::from_fn(|i| r[0][i] + th * (r[1][i] + th1 * (r[2][i] + th * (r[3][i] + th1 * r[4][i]))))
    }
}

/// One accepted step: start state, end state and the interpolant between.
#[derive(Clone, Debug)]
pub struct StepRecord<T> {
    pub t0: T,
    pub y0: State<T>,
    pub k0: State<T>,
    pub t1: T,
    pub y1: State<T>,
    pub dense: DenseStep<T>,
}

/// Adaptive stepper for `y' = f(y)`.
pub struct Dopri5<T, F> {
    f: F,
    tab: Tableau<T>,
    rtol: T,
    atol: T,
    t: T,
    y: State<T>,
    k: State<T>,
    h: T,
    pub stats: StepStats,
    max_steps: usize,
}

/// Step budget of a single run; exceeding it reports a stiffness failure.
pub const MAX_STEPS: usize = 5_000_000;

pub fn check_tolerances(rtol: f64, atol: f64) -> Result<()> {
    for (name, v) in [("relative", rtol), ("absolute", atol)] {
        if !(v > 0.0 && v <= 1e-2) {
            return Err(Error::InvalidArgument(format!("{name} tolerance {v} outside (0, 1e-2]")));
        }
    }
    Ok(())
}

impl<T: Real, F: Fn(&State<T>) -> State<T>> Dopri5<T, F> {
    pub fn new(f: F, t0: T, y0: State<T>, rtol: f64, atol: f64) -> Result<Self> {
        check_tolerances(rtol, atol)?;
        let k = f(&y0);
        let mut s = Dopri5 {
            f,
            tab: Tableau::new(),
            rtol: real(rtol),
            atol: real(atol),
            t: t0,
            y: y0,
            k,
            h: T::zero(),
            stats: StepStats { evaluations: 1, ..Default::default() },
            max_steps: MAX_STEPS,
        };
        s.h = s.initial_step();
        Ok(s)
    }

    pub fn with_max_steps(mut self, n: usize) -> Self {
        self.max_steps = n;
        self
    }

    pub fn time(&self) -> T {
        self.t
    }

    pub fn state(&self) -> State<T> {
        self.y
    }

    fn scale(&self, a: &State<T>, b: &State<T>, i: usize) -> T {
        self.atol + self.rtol * a[i].abs().max(b[i].abs())
    }

    fn norm(&self, v: &State<T>, a: &State<T>, b: &State<T>) -> T {
        let mut s = T::zero();
        for i in 0..3 {
            let x = v[i] / self.scale(a, b, i);
            s = s + x * x;
        }
        (s / real(3.0)).sqrt()
    }

    fn initial_step(&mut self) -> T {
        let y = self.y;
        let d0 = self.norm(&y, &y, &y);
        let d1 = self.norm(&self.k, &y, &y);
        let h0 = if d0 < real(1e-5) || d1 < real(1e-5) { real(1e-6) } else { real::<T>(0.01) * d0 / d1 };
        let y1: State<T> = std::array::from_fn(|i| y[i] + h0 * self.k[i]);
        let k1 = (self.f)(&y1);
        self.stats.evaluations += 1;
        let diff: State<T> = std::array::from_fn(|i| k1[i] - self.k[i]);
        let d2 = self.norm(&diff, &y, &y) / h0;
        let h1 = if d1.max(d2) <= real(1e-15) {
            (h0 * real(1e-3)).max(real(1e-6))
        } else {
            (real::<T>(0.01) / d1.max(d2)).powf(real(0.2))
        };
        (h0 * real(100.0)).min(h1)
    }

    /// Single Runge-Kutta step of size `h` from `(y, k)`; returns the new
    /// state, its derivative, the error vector and the stage derivatives.
    pub fn raw_step(&self, y: &State<T>, k0: &State<T>, h: T) -> (State<T>, State<T>, State<T>, [State<T>; 7]) {
        let tab = &self.tab;
        let mut ks = [*k0; 7];
        for s in 1..7 {
            let ys: State<T> = std::array::from_fn(|i| {
                let mut acc = T::zero();
                for j in 0..s {
                    acc = acc + tab.a[s][j] * ks[j][i];
                }
                y[i] + h * acc
            });
            ks[s] = (self.f)(&ys);
        }
        let y1: State<T> = std::array::from_fn(|i| {
            let mut acc = T::zero();
            for j in 0..7 {
                acc = acc + tab.b[j] * ks[j][i];
            }
            y[i] + h * acc
        });
        let err: State<T> = std::array::from_fn(|i| {
            let mut acc = T::zero();
            for j in 0..7 {
                acc = acc + tab.e[j] * ks[j][i];
            }
            h * acc
        });
        (y1, ks[6], err, ks)
    }

    /// State reached by a single step of size `h` from the start of `rec`.
    /// More accurate than the interpolant; used to polish section events.
    pub fn step_from(&self, rec: &StepRecord<T>, h: T) -> State<T> {
        self.raw_step(&rec.y0, &rec.k0, h).0
    }

    pub fn rhs(&self, y: &State<T>) -> State<T> {
        (self.f)(y)
    }

    /// Advance by one accepted step without passing `t_end`.
    pub fn step(&mut self, t_end: T) -> Result<StepRecord<T>> {
        let span = t_end - self.t;
        if span <= T::zero() {
            return Err(Error::InvalidArgument("step past the end of the interval".into()));
        }
        let mut h = self.h.min(span);
        let mut rejected_last = false;
        loop {
            let tiny = real::<T>(1e-14) * self.t.abs().max(T::one());
            if h < tiny || self.stats.steps + self.stats.rejected >= self.max_steps {
                return Err(Error::StiffnessFailure(self.t.to_f64().unwrap_or(f64::NAN)));
            }
            let (y1, k7, errv, ks) = self.raw_step(&self.y, &self.k, h);
            self.stats.evaluations += 6;
            let err = self.norm(&errv, &self.y, &y1);
            let err_f = err.to_f64().unwrap_or(f64::INFINITY);
            if err_f <= 1.0 {
                let fac = if err_f == 0.0 { 10.0 } else { (0.9 * err_f.powf(-0.2)).clamp(0.2, 10.0) };
                let fac = if rejected_last { fac.min(1.0) } else { fac };
                let rec = self.record(h, y1, &ks);
                self.stats.steps += 1;
                self.stats.max_error = self.stats.max_error.max(err_f);
                self.t = if h == span { t_end } else { self.t + h };
                self.y = y1;
                self.k = k7;
                let next = h * real(fac);
                // A step clipped to t_end keeps the earlier proposal.
                self.h = if h == span && !rejected_last { self.h.max(next) } else { next };
                return Ok(rec);
            }
            self.stats.rejected += 1;
            rejected_last = true;
            let fac = if err_f.is_finite() { (0.9 * err_f.powf(-0.2)).max(0.2) } else { 0.2 };
            h = h * real(fac);
        }
    }

    fn record(&self, h: T, y1: State<T>, ks: &[State<T>; 7]) -> StepRecord<T> {
        let y0 = self.y;
        let tab = &self.tab;
        let r = std::array::from_fn(|m| {
            std::array::from_fn(|i| {
                let ydiff = y1[i] - y0[i];
                let bspl = h * ks[0][i] - ydiff;
                match m {
                    0 => y0[i],
                    1 => ydiff,
                    2 => bspl,
                    3 => ydiff - h * ks[6][i] - bspl,
                    _ => {
                        let mut acc = T::zero();
                        for j in 0..7 {
                            acc = acc + tab.d[j] * ks[j][i];
                        }
                        h * acc
                    }
                }
            })
        });
        StepRecord { t0: self.t, y0, k0: self.k, t1: self.t + h, y1, dense: DenseStep { t0: self.t, h, r } }
    }
}
