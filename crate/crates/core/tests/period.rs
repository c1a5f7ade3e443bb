use centerfocus::catalog;
use centerfocus::field::{int, rat, Field, ParamExpr, Rational};
use centerfocus::focus::normal_form_focus;
use centerfocus::normalform::NormalForm3;
use centerfocus::period::{isochronicity_constants, periodic_solution_series, try_periodic_solution_series, SeriesOutcome};
use centerfocus::polysys::specialize;
use centerfocus::Error;
use num_traits::Zero;

#[test]
fn symbolic_center_period_constants() {
    let nf = NormalForm3::from_field(catalog::exact("e1-center").unwrap()).unwrap();
    let e = isochronicity_constants(&nf, 2).unwrap();
    let d = ParamExpr::var(0);
    let d4 = d.pow_u32(4);
    let want = d4.clone() / (ParamExpr::int(8) * (d4 + ParamExpr::int(4)));
    assert!(e.constants[0].is_zero());
    assert_eq!(e.constants[1], want);
    assert_eq!(e.odd.len(), 3);
    assert!(e.odd.iter().all(Zero::is_zero));
    for psi in &e.psi {
        assert!(psi.is_real(0.0));
    }
}

#[test]
fn focus_obstruction_matches_first_focus_quantity_exactly() {
    let f = catalog::exact("e1-normal").unwrap();
    for point in [[rat(1, 10), int(1), int(1)], [rat(-1, 3), int(2), rat(1, 2)]] {
        let g = specialize(&f, &point).unwrap();
        let nf = NormalForm3::from_field(g).unwrap();
        let l1 = normal_form_focus(&nf, 1).unwrap().quantities[0].clone();
        match try_periodic_solution_series(&nf, 3).unwrap() {
            SeriesOutcome::Obstructed { order, mean, .. } => {
                assert_eq!(order, 3);
                assert_eq!(mean, l1 / int(2));
            }
            SeriesOutcome::Periodic(_) => panic!("expected an obstruction at {point:?}"),
        }
    }
}

#[test]
fn e4_focus_obstruction_has_negative_sign() {
    let nf = NormalForm3::from_field(catalog::float_with("e4-normal", &[]).unwrap()).unwrap();
    let l1 = normal_form_focus(&nf, 1).unwrap().quantities[0];
    match try_periodic_solution_series(&nf, 3).unwrap() {
        SeriesOutcome::Obstructed { order, mean, .. } => {
            assert_eq!(order, 3);
            assert!(mean < 0.0);
            assert!((mean - l1 / 2.0).abs() < 1e-12);
        }
        SeriesOutcome::Periodic(_) => panic!("e4-normal is a focus"),
    }
    assert!(matches!(periodic_solution_series(&nf, 3), Err(Error::FocusObstruction { order: 3, .. })));
}

#[test]
fn float_and_exact_series_agree() {
    let exact = NormalForm3::from_field(specialize(&catalog::exact("e1-center").unwrap(), &[int(2)]).unwrap()).unwrap();
    let float = exact.map(|q: &Rational| centerfocus::field::rational_to_f64(q).unwrap());
    let a = isochronicity_constants(&exact, 2).unwrap();
    let b = isochronicity_constants(&float, 2).unwrap();
    assert_eq!(a.constants[1], rat(1, 10));
    assert!((b.constants[1] - 0.1).abs() < 1e-14);
    assert!(b.odd.iter().all(|x| x.abs() < 1e-14));
}
