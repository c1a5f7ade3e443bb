use std::f64::consts::PI;

use centerfocus::catalog;
use centerfocus::field::{int, rat, rational_to_f64, Field, Rational};
use centerfocus::focus::normal_form_focus;
use centerfocus::normalform::NormalForm3;
use centerfocus::period::isochronicity_constants;
use centerfocus::polysys::{specialize, VectorField3};
use centerfocus::simulate::*;
use centerfocus::{Error, Extended};
use proptest::prelude::*;

fn e1_center(d: i64) -> VectorField3<Rational> {
    specialize(&catalog::exact("e1-center").unwrap(), &[int(d)]).unwrap()
}

fn e1_center_f64(d: i64) -> VectorField3<f64> {
    e1_center(d).map(|q| rational_to_f64(q).unwrap())
}

fn radius2(s: &[f64; 3]) -> f64 {
    s[0] * s[0] + s[1] * s[1]
}

fn e4() -> NormalForm3<f64> {
    NormalForm3::from_field(catalog::float_with("e4-normal", &[]).unwrap()).unwrap()
}

#[test]
fn center_orbit_conserves_planar_radius() {
    let tr = integrate(&e1_center_f64(1), SERIES_START, (0.0, 100.0), Tolerances::default()).unwrap();
    assert_eq!(radius2(&tr.states[0]), 0.8125);
    let drift = tr.max_relative_drift(radius2);
    assert!(drift < 1e-8, "drift {drift:e}");
    assert!(tr.stats.max_error <= 1.0);
}

#[test]
fn zero_field_is_constant() {
    let tr = integrate(&VectorField3::<f64>::zero(), [1.0, 2.0, 3.0], (0.0, 10.0), Tolerances::default()).unwrap();
    assert!(tr.states.iter().all(|s| *s == [1.0, 2.0, 3.0]));
}

#[test]
fn halving_tolerance_cuts_invariant_drift_fourfold() {
    let f = e1_center_f64(1);
    let drift = |tol: Tolerances| integrate(&f, SERIES_START, (0.0, 100.0), tol).unwrap().max_relative_drift(radius2);
    let coarse = drift(Tolerances::default());
    let fine = drift(Tolerances::default().scaled(0.5));
    assert!(coarse >= 4.0 * fine, "drift {coarse:e} -> {fine:e}, ratio {:.3}", coarse / fine);
}

#[test]
fn invalid_tolerances_are_rejected() {
    let f = e1_center_f64(1);
    for tol in [Tolerances::new(0.0, 1e-12), Tolerances::new(1e-10, 0.5)] {
        assert!(matches!(integrate(&f, SERIES_START, (0.0, 1.0), tol), Err(Error::InvalidArgument(_))));
    }
}

#[test]
fn runaway_orbit_reports_stiffness_failure() {
    let g = catalog::float_with("e4-normal", &[("c", "1"), ("h", "2")]).unwrap();
    let r = integrate(&g, FOCUS_ORBIT_STARTS[0], (0.0, 50.0), Tolerances::default());
    assert!(matches!(r, Err(Error::StiffnessFailure(_))));
}

#[test]
fn focus_orbit_stays_bounded_forward() {
    let g = catalog::float_with("e4-normal", &[]).unwrap();
    let tr = integrate(&g, [0.4, 0.07, 0.13], (0.0, 50.0), Tolerances::default()).unwrap();
    assert!(tr.states.iter().all(|s| s.iter().all(|x| x.abs() < 100.0)));
}

#[test]
fn center_period_at_small_amplitude() {
    let nf = NormalForm3::from_field(e1_center_f64(1)).unwrap();
    let p = measure_period(&nf, 0.1, 30.0, Tolerances::default()).unwrap();
    let want = 2.0 * PI * (1.0 + 2.5e-6);
    assert!(((p.period - want) / want).abs() < 1e-7, "period {}", p.period);
    assert!(p.radial_drift() < 1e-9);
}

fn period_fit<T: Real>(nf: &NormalForm3<T>, rho: f64, tol: Tolerances) -> f64 {
    let r = real::<T>(rho);
    let p = measure_period(nf, r, real(30.0), tol).unwrap();
    let x = (p.period / (real::<T>(2.0) * T::PI()) - T::one()) / r.powi(4);
    x.to_f64().unwrap()
}

#[test]
fn extended_precision_period_fit_matches_quartic_constant() {
    for d in [1, 2] {
        let exact = e1_center(d);
        let t4 = isochronicity_constants(&NormalForm3::from_field(exact.clone()).unwrap(), 2).unwrap().constants[1].clone();
        let t4 = rational_to_f64(&t4).unwrap();
        let nf = NormalForm3::from_field(exact.map(Extended::from_rational)).unwrap();
        let tol = Tolerances::new(1e-20, 1e-22);
        let (a, b) = (period_fit(&nf, 0.1, tol), period_fit(&nf, 0.05, tol));
        // Fit c4 + c6 rho^2 through both amplitudes.
        let c4 = (4.0 * b - a) / 3.0;
        assert!((c4 - t4).abs() < 0.05 * t4.abs(), "d={d}: fit {c4} vs {t4}");
        assert!(((a - t4) / t4).abs() < 0.05);
    }
}

#[test]
fn focus_period_measurement_flags_spiraling() {
    match measure_period(&e4(), 0.1, 30.0, Tolerances::default()) {
        Err(Error::NoReturn(_)) => {}
        Ok(p) => assert!(p.radial_drift() > 1e-6, "drift {:e}", p.radial_drift()),
        Err(e) => panic!("unexpected {e}"),
    }
}

#[test]
fn center_displacement_vanishes() {
    let nf = NormalForm3::from_field(e1_center_f64(1)).unwrap();
    for rho in [0.2, 0.1, 0.05] {
        let s = displacement(&nf, rho, Tolerances::default()).unwrap();
        assert!(s.value.abs() < 1e-10, "rho0 {rho}: {}", s.value);
        assert!(s.omega_residual < 1e-10 && s.crossing_residual < 1e-12);
    }
}

#[test]
fn focus_displacement_tracks_first_focus_quantity() {
    let nf = e4();
    let l1 = normal_form_focus(&nf, 1).unwrap().quantities[0];
    for rho in [0.05, 0.025] {
        let s = displacement(&nf, rho, Tolerances::default()).unwrap();
        assert!(s.value < 0.0);
        let ratio = s.value / rho.powi(3);
        assert!((ratio - PI * l1).abs() < 0.1 * (PI * l1).abs(), "rho0 {rho}: {ratio} vs {}", PI * l1);
        assert!(s.crossing_residual < 1e-12);
        assert!(s.omega_residual < 1e-10);
    }
}

#[test]
fn displacement_sign_matches_on_other_foci() {
    let e5 = NormalForm3::from_field(catalog::float_with("e5-normal", &[]).unwrap()).unwrap();
    let g = specialize(&catalog::exact("e1-normal").unwrap(), &[rat(1, 10), int(1), int(1)]).unwrap();
    let e1 = NormalForm3::from_field(g.map(|q| rational_to_f64(q).unwrap())).unwrap();
    for nf in [e5, e1] {
        let l1 = normal_form_focus(&nf, 1).unwrap().quantities[0];
        let s = displacement(&nf, 0.05, Tolerances::default()).unwrap();
        assert!(l1 != 0.0 && s.value.signum() == l1.signum(), "L1 {l1}, dbar {}", s.value);
    }
}

#[test]
fn cubic_coefficient_is_stable_under_refinement() {
    let nf = e4();
    let coarse = displacement(&nf, 0.05, Tolerances::default()).unwrap();
    let fine = displacement(&nf, 0.025, Tolerances::default()).unwrap();
    let a = coarse.value / 0.05f64.powi(3);
    let b = fine.value / 0.025f64.powi(3);
    assert!((a - b).abs() < 0.1 * b.abs());
    let l1 = normal_form_focus(&nf, 1).unwrap().quantities[0];
    let c = cubic_coefficient(&coarse, &fine);
    assert!((c - PI * l1).abs() < 0.01 * (PI * l1).abs(), "{c} vs {}", PI * l1);
}

#[test]
fn orbit_pictures_and_series_are_written() {
    let dir = tempfile::tempdir().unwrap();
    let f = e1_center_f64(1);
    let set = write_orbit_set(&f, &CENTER_ORBIT_STARTS, 100.0, false, Tolerances::default(), dir.path(), "center", "d = 1")
        .unwrap();
    assert_eq!(set.csvs.len(), 8);
    let script = std::fs::read_to_string(&set.script).unwrap();
    assert!(script.contains("center_7.csv"));
    let tr = integrate(&f, SERIES_START, (0.0, 100.0), Tolerances::default()).unwrap();
    let files = write_component_series(&tr, dir.path(), "series").unwrap();
    assert_eq!(files.len(), 3);
    let w = std::fs::read_to_string(&files[2]).unwrap();
    assert_eq!(w.lines().next(), Some("t,w"));
    assert_eq!(w.lines().count(), tr.len() + 1);
    let mut buf = Vec::new();
    let samples = vec![displacement(&e4(), 0.05, Tolerances::default()).unwrap()];
    write_displacement_csv(&samples, &mut buf).unwrap();
    assert_eq!(String::from_utf8(buf).unwrap().lines().count(), 2);
}

fn small_state() -> impl Strategy<Value = [f64; 3]> {
    [-0.6f64..0.6, -0.6f64..0.6, -0.3f64..0.3]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn center_trajectories_conserve_radius(x0 in small_state(), t_end in 5.0f64..60.0) {
        let tr = integrate(&e1_center_f64(1), x0, (0.0, t_end), Tolerances::default()).unwrap();
        prop_assert!(tr.max_relative_drift(radius2) < 1e-8);
    }

    #[test]
    fn trajectory_times_increase_and_errors_stay_in_tolerance(x0 in small_state(), t_end in 1.0f64..30.0) {
        let tr = integrate(&e1_center_f64(2), x0, (0.0, t_end), Tolerances::default()).unwrap();
        prop_assert!(tr.times.windows(2).all(|w| w[1] > w[0]));
        prop_assert_eq!(*tr.times.last().unwrap(), t_end);
        prop_assert!(tr.stats.max_error <= 1.0);
    }

    #[test]
    fn reversing_time_returns_to_start(x0 in small_state(), t_end in 1.0f64..(2.0 * PI)) {
        // Settle onto the center manifold first: off it, reversed time
        // amplifies the transverse error like e^t.
        let f = e1_center_f64(1);
        let tol = Tolerances::new(1e-13, 1e-15);
        let (_, start) = integrate(&f, x0, (0.0, 30.0), tol).unwrap().last().unwrap();
        let (_, end) = integrate(&f, start, (0.0, t_end), tol).unwrap().last().unwrap();
        let (_, back) = integrate(&reversed(&f), end, (0.0, t_end), tol).unwrap().last().unwrap();
        for i in 0..3 {
            prop_assert!((back[i] - start[i]).abs() < 1e-9, "{:?} vs {:?}", back, start);
        }
    }
}
