//! Numerical backend: adaptive integration, section returns, period and
//! displacement measurements, data export.

mod dopri;
mod export;
mod section;

use num_traits::{Float, FloatConst, NumCast};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::polysys::{StatePoly, VectorField3};

pub use dopri::{check_tolerances, DenseStep, Dopri5, State, StepRecord, StepStats, MAX_STEPS};
pub use export::{
    orbit_set_script, plot_script, write_component_series, write_displacement_csv, write_orbit_set,
    write_plot_script, write_trajectory_csv, OrbitSetFiles, TRAJECTORY_HEADER,
};
pub use section::{
    cubic_coefficient, displacement, measure_period, Crossing, DisplacementSample, PeriodMeasurement, SectionWalker,
};

/// Starting points for orbit pictures around the e1 center.
pub const CENTER_ORBIT_STARTS: [[f64; 3]; 8] = [
    [0.08, 0.002, 0.03],
    [0.4, 0.07, 0.13],
    [-0.5, 0.3, 0.25],
    [0.2, 0.7, 0.85],
    [0.5, 0.75, 0.5],
    [0.8, 0.7, -0.5],
    [-1.0, -0.75, 0.6],
    [-1.0, 1.0, 1.0],
];

/// Start of the per-variable time series around the e1 center.
pub const SERIES_START: [f64; 3] = [0.5, -0.75, 0.1];

/// Starting points for orbit pictures around the off-axis foci.
pub const FOCUS_ORBIT_STARTS: [[f64; 3]; 8] = [
    [0.4, 0.07, 0.13],
    [0.08, 0.002, 0.03],
    [-0.1, 0.1, 0.11],
    [0.2, 0.4, 0.125],
    [0.5, -0.375, -0.1],
    [-0.2, 0.1, 0.075],
    [-0.6, -0.375, 0.15],
    [-0.35, 0.6, -0.05],
];

/// Floating scalars usable by the integrator (`f64` and the double-double
/// [`crate::Extended`]).
pub trait Real: Field + Float + FloatConst {}

impl<T: Field + Float + FloatConst> Real for T {}

pub fn real<T: Real>(x: f64) -> T {
    <T as NumCast>::from(x).expect("f64 converts to every Real")
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    pub rtol: f64,
    pub atol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { rtol: 1e-10, atol: 1e-12 }
    }
}

impl Tolerances {
    pub fn new(rtol: f64, atol: f64) -> Self {
        Tolerances { rtol, atol }
    }

    /// Both tolerances set to `tol`.
    pub fn uniform(tol: f64) -> Self {
        Tolerances { rtol: tol, atol: tol }
    }

    pub fn scaled(self, k: f64) -> Self {
        Tolerances { rtol: self.rtol * k, atol: self.atol * k }
    }
}

/// Accepted integration points of one run.
#[derive(Clone, Debug)]
pub struct Trajectory<T> {
    pub times: Vec<T>,
    pub states: Vec<State<T>>,
    pub stats: StepStats,
}

impl<T: Real> Trajectory<T> {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn last(&self) -> Option<(T, State<T>)> {
        Some((*self.times.last()?, *self.states.last()?))
    }

    /// Largest relative deviation of `h` along the trajectory from its
    /// initial value.
    pub fn max_relative_drift<H: Fn(&State<T>) -> T>(&self, h: H) -> f64 {
        let Some(first) = self.states.first() else { return 0.0 };
        let h0 = h(first);
        let scale = if h0 == T::zero() { T::one() } else { h0.abs() };
        self.states
            .iter()
            .map(|s| ((h(s) - h0).abs() / scale).to_f64().unwrap_or(f64::INFINITY))
            .fold(0.0, f64::max)
    }
}

/// Coefficients converted to another scalar.
pub fn convert_field<T: Real>(f: &VectorField3<f64>) -> VectorField3<T> {
    f.map(|c| real(*c))
}

/// The field with time reversed.
pub fn reversed<T: Field>(f: &VectorField3<T>) -> VectorField3<T> {
    VectorField3 { comps: std::array::from_fn(|i| f.comps[i].neg()), ..f.clone() }
}

pub(crate) fn rhs<T: Real>(f: &VectorField3<T>) -> impl Fn(&State<T>) -> State<T> + '_ {
    move |y| f.evaluate(y)
}

/// Integrate `x' = f(x)` over `t_span`, recording every accepted step.
pub fn integrate<T: Real>(f: &VectorField3<T>, x0: State<T>, t_span: (T, T), tol: Tolerances) -> Result<Trajectory<T>> {
    let (t0, t1) = t_span;
    if !(t1 > t0) {
        return Err(Error::InvalidArgument("integration interval must have t1 > t0".into()));
    }
    let mut stepper = Dopri5::new(rhs(f), t0, x0, tol.rtol, tol.atol)?;
    let mut times = vec![t0];
    let mut states = vec![x0];
    while stepper.time() < t1 {
        let rec = stepper.step(t1)?;
        if !rec.y1.iter().all(|x| x.is_finite()) {
            return Err(Error::StiffnessFailure(rec.t1.to_f64().unwrap_or(f64::NAN)));
        }
        times.push(stepper.time());
        states.push(rec.y1);
    }
    Ok(Trajectory { times, states, stats: stepper.stats.clone() })
}

/// `u^2 + v^2` as a state polynomial.
pub fn planar_radius_squared<T: Field>() -> StatePoly<T> {
    StatePoly::var(0).pow(2).add(&StatePoly::var(1).pow(2))
}
