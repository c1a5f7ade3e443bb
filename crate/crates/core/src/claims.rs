//! Reproducible end-to-end checks, one per headline result. Each claim runs
//! the full pipeline and reports its individual checks.

use std::f64::consts::PI;
use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::catalog;
use crate::cyclicity::{cyclicity_bound, focus_jets, jacobian_rank, linear_preset, quadratic_preset};
use crate::error::{Error, Result};
use crate::field::{int, rat, rational_to_f64, ExactSqrt, Field, Monomial, ParamExpr, Rational};
use crate::focus::{normal_form_focus, verify_first_integral};
use crate::grammar;
use crate::normalform::NormalForm3;
use crate::period::isochronicity_constants;
use crate::polysys::{char_cubic, hopf_test, specialize, to_float, VectorField3};
use crate::simulate::{
    displacement, integrate, measure_period, planar_radius_squared, real, write_component_series, write_orbit_set,
    write_plot_script, write_trajectory_csv, Real, Tolerances, CENTER_ORBIT_STARTS, SERIES_START,
};
use crate::Extended;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimOutcome {
    pub id: &'static str,
    pub criterion: u8,
    pub passed: bool,
    pub checks: Vec<Check>,
    #[serde(skip)]
    pub elapsed: Duration,
}

pub struct ClaimInfo {
    pub id: &'static str,
    pub criterion: u8,
    pub aliases: &'static [&'static str],
    pub summary: &'static str,
    /// Runtime budget in seconds.
    pub budget: u64,
    run: fn(&ClaimOptions) -> Result<Vec<Check>>,
}

#[derive(Clone, Debug)]
pub struct ClaimOptions {
    /// Destination of files written by claims that produce artifacts.
    pub out_dir: PathBuf,
}

impl Default for ClaimOptions {
    fn default() -> Self {
        ClaimOptions { out_dir: std::env::temp_dir().join("centerfocus-verify") }
    }
}

pub const CLAIMS: &[ClaimInfo] = &[
    ClaimInfo {
        id: "hopf-e1",
        criterion: 1,
        aliases: &["ac1"],
        summary: "Hopf test at (0,0,1/d) matches a=c, (1+cd)(1-bd)-c^2d^2>0 on 200 rational points; eigenvalues +-(k/d)i, -d",
        budget: 1,
        run: hopf_e1,
    },
    ClaimInfo {
        id: "center-certificate",
        criterion: 2,
        aliases: &["ac2", "teo1-center"],
        summary: "u^2+v^2 is a first integral of e1-center and L1, L2, L3 vanish identically in d",
        budget: 60,
        run: center_certificate,
    },
    ClaimInfo {
        id: "e1-l1-printed",
        criterion: 3,
        aliases: &["ac3"],
        summary: "computed L1 on e1-normal has the zero set and sign of the printed formula, with one constant positive scale",
        budget: 300,
        run: e1_l1_printed,
    },
    ClaimInfo {
        id: "e4e5-focus",
        criterion: 4,
        aliases: &["ac4"],
        summary: "float L1 on e4-normal is negative and matches the printed closed form to 1e-6; likewise on e5-normal",
        budget: 60,
        run: e4e5_focus,
    },
    ClaimInfo {
        id: "e1-isochronicity",
        criterion: 5,
        aliases: &["ac5"],
        summary: "T2 = 0 and |T4| = d^4/(8(d^4+4)) exactly; extended-precision period fit at d=1 gives 1/40 within 5%",
        budget: 600,
        run: e1_isochronicity,
    },
    ClaimInfo {
        id: "trace-rank",
        criterion: 6,
        aliases: &["ac6"],
        summary: "Jacobian of (L1,L2,L3) in (k,c,d) at (1,0,d0) has rank 3 for d0 in {1/2,1,2}; bound 3 with the trace cycle",
        budget: 1800,
        run: trace_rank,
    },
    ClaimInfo {
        id: "quadratic-cyclicity",
        criterion: 7,
        aliases: &["ac7"],
        summary: "quadratic perturbation of the center: printed linear parts of L1..L9, rank 3, h4(eta)=0, h5(eta)<0, bound 5",
        budget: 4 * 3600,
        run: quadratic_cyclicity,
    },
    ClaimInfo {
        id: "l1-displacement",
        criterion: 8,
        aliases: &["ac8"],
        summary: "numeric reduced displacement dbar/rho0^3 agrees with pi*L1 within 10% on e4-normal; sign agreement on e1-normal",
        budget: 600,
        run: l1_displacement,
    },
    ClaimInfo {
        id: "e1-conservation",
        criterion: 9,
        aliases: &["ac9"],
        summary: "u^2+v^2 conserved to 1e-8 over t in [0,100] at tol 1e-10; orbit CSVs and plot scripts written",
        budget: 60,
        run: e1_conservation,
    },
];

pub fn resolve(id: &str) -> Option<&'static ClaimInfo> {
    let id = id.trim().to_ascii_lowercase();
    CLAIMS.iter().find(|c| c.id == id || c.aliases.contains(&id.as_str()))
}

pub fn run_claim(id: &str, opts: &ClaimOptions) -> Result<ClaimOutcome> {
    let info = resolve(id).ok_or_else(|| Error::InvalidArgument(format!("unknown claim {id}")))?;
    let start = Instant::now();
    let checks = (info.run)(opts)?;
    let elapsed = start.elapsed();
    let passed = checks.iter().all(|c| c.passed);
    Ok(ClaimOutcome { id: info.id, criterion: info.criterion, passed, checks, elapsed })
}

fn check(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
    Check { name: name.into(), passed, detail: detail.into() }
}

fn parse_expr(f: &VectorField3<ParamExpr>, s: &str) -> Result<ParamExpr> {
    grammar::parse(s)?.to_exact(&f.params, &[])
}

fn hopf_e1(_: &ClaimOptions) -> Result<Vec<Check>> {
    let f = catalog::exact("khaled-original")?;
    let grid = [rat(-2, 1), rat(-1, 1), rat(-1, 2), rat(1, 3), rat(1, 2), int(1), rat(3, 2), int(2)];
    let mut mismatches = Vec::new();
    let mut hopf_count = 0;
    for i in 0..200usize {
        let c = grid[i % 8].clone();
        let d = grid[(i / 8) % 8].clone();
        let b = grid[(3 * i + i / 64) % 8].clone();
        let a = if i % 2 == 0 { c.clone() } else { grid[(5 * i + 2) % 8].clone() };
        let one = Rational::one();
        let expected = a == c && (&one + &c * &d) * (&one - &b * &d) - &c * &c * &d * &d > Rational::zero();
        let g = specialize(&f, &[a.clone(), b.clone(), c.clone(), d.clone()])?;
        let moved = g.translate(&[Rational::zero(), Rational::zero(), d.recip()]);
        let report = hopf_test(&char_cubic(&moved.linear_part()), 0.0);
        hopf_count += usize::from(report.is_hopf);
        if report.is_hopf != expected {
            mismatches.push(format!("(a,b,c,d)=({a},{b},{c},{d})"));
        }
    }
    let mut checks = vec![check(
        "hopf set on 200-point grid",
        mismatches.is_empty(),
        format!("{hopf_count} Hopf points, {} mismatches {:?}", mismatches.len(), mismatches),
    )];
    let mut bad = Vec::new();
    for (c, d, k) in [(rat(1, 3), int(2), rat(5, 4)), (int(-2), rat(3, 7), int(3)), (int(0), int(1), int(1)), (rat(1, 2), rat(1, 2), rat(1, 5))] {
        let one = Rational::one();
        let b = (&one + &c * &d - &c * &c * &d * &d - &k * &k) / (&d * (&one + &c * &d));
        let g = specialize(&f, &[c.clone(), b, c.clone(), d.clone()])?;
        let moved = g.translate(&[Rational::zero(), Rational::zero(), d.recip()]);
        let r = hopf_test(&char_cubic(&moved.linear_part()), 0.0);
        let ok = r.is_hopf && r.omega == Some((&k / &d).abs()) && r.lambda3 == -d.clone();
        if !ok {
            bad.push(format!("(c,d,k)=({c},{d},{k}): omega {:?}, lambda3 {}", r.omega.map(|w| w.to_string()), r.lambda3));
        }
    }
    checks.push(check("eigenvalues +-(k/d)i, -d under the k reparametrization", bad.is_empty(), format!("{bad:?}")));
    Ok(checks)
}

fn center_certificate(_: &ClaimOptions) -> Result<Vec<Check>> {
    let f = catalog::exact("e1-center")?;
    let f_names = f.params.names().to_vec();
    let f_names = &f_names;
    let fi = verify_first_integral(&f, &planar_radius_squared())?;
    let report = normal_form_focus(&NormalForm3::from_field(f)?, 3)?;
    let zero = report.quantities.iter().all(|q| q.is_zero());
    let shown: Vec<String> = report.quantities.iter().map(|q| q.display(f_names).to_string()).collect();
    Ok(vec![
        check("u^2+v^2 is a first integral", fi, format!("{fi}")),
        check("L1 = L2 = L3 = 0 in symbolic d", zero, format!("{shown:?}")),
    ])
}

/// Points on the printed zero set of L1 for e1-normal: for each `(c, k)`
/// on a grid, the rational roots `d` of the (quadratic in `d`) formula.
fn printed_zero_set_points() -> Vec<[Rational; 3]> {
    let mut out: Vec<[Rational; 3]> = Vec::new();
    let mut vals: Vec<Rational> = (1..=8).flat_map(|q| (-8..=8).map(move |p| rat(p, q))).collect();
    vals.sort();
    vals.dedup();
    for c in vals.iter().filter(|c| !c.is_zero()) {
        for k in vals.iter().filter(|k| k.is_positive()) {
            let one = Rational::one();
            let (two, four) = (int(2), int(4));
            let a = &two * c * (&two * c * c - &one);
            let b = k * k + &four * c * c - &one;
            let cc = &two * c * (k * k + &one);
            let mut roots = Vec::new();
            if a.is_zero() {
                if !b.is_zero() {
                    roots.push(-cc / b);
                }
            } else if let Some(r) = (&b * &b - &four * &a * &cc).sqrt_exact() {
                roots.push((-&b + &r) / (&two * &a));
                roots.push((-&b - &r) / (&two * &a));
            }
            for d in roots {
                if !d.is_zero() {
                    let p = [c.clone(), d, k.clone()];
                    if !out.contains(&p) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out.sort_by_key(|p| p.iter().map(|x| x.numer().magnitude().clone() + x.denom().magnitude()).sum::<num_bigint::BigUint>());
    out
}

fn e1_l1_printed(_: &ClaimOptions) -> Result<Vec<Check>> {
    let f = catalog::exact("e1-normal")?;
    let l1 = normal_form_focus(&NormalForm3::from_field(f.clone())?, 1)?.quantities[0].clone();
    let printed = parse_expr(&f, "d*(k^2+4*c^2-1)+2*(k^2+1)*c+2*c*(2*c^2-1)*d^2")?;
    let eval = |e: &ParamExpr, p: &[Rational; 3]| e.eval_rational(p);

    let mut on_set = Vec::new();
    for p in printed_zero_set_points() {
        if on_set.len() == 24 {
            break;
        }
        if eval(&l1, &p).is_ok() {
            on_set.push(p);
        }
    }
    on_set.push([int(0), rat(3, 2), int(1)]);
    let mut rng = ChaCha8Rng::seed_from_u64(20240917);
    let mut off_set = Vec::new();
    while off_set.len() < 25 {
        let mut q = || rat(rng.gen_range(-12..=12), rng.gen_range(1..=6));
        let p = [q(), q(), q().abs()];
        if p[1].is_zero() || p[2].is_zero() {
            continue;
        }
        match (eval(&printed, &p), eval(&l1, &p)) {
            (Ok(v), Ok(_)) if !v.is_zero() => off_set.push(p),
            _ => {}
        }
    }
    let show = |p: &[Rational; 3]| format!("({},{},{})", p[0], p[1], p[2]);
    let mut not_zero = Vec::new();
    for p in &on_set {
        if !eval(&l1, p)?.is_zero() {
            not_zero.push(show(p));
        }
    }
    let mut sign_bad = Vec::new();
    let mut ratios = Vec::new();
    for p in &off_set {
        let (v, w) = (eval(&l1, p)?, eval(&printed, p)?);
        if v.is_zero() || v.signum() != w.signum() {
            sign_bad.push(show(p));
        }
        if ratios.len() < 20 {
            ratios.push(v / w);
        }
    }
    let constant = ratios.iter().all(|r| r == &ratios[0]) && ratios[0].is_positive();
    let spread = {
        let fl: Vec<f64> = ratios.iter().filter_map(rational_to_f64).collect();
        let (lo, hi) = fl.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &x| (a.min(x), b.max(x)));
        format!("scale ranges over [{lo:.6e}, {hi:.6e}]; first {}", ratios[0])
    };
    Ok(vec![
        check("L1 vanishes on 25 points of the printed zero set", not_zero.is_empty(), format!("nonzero at {not_zero:?}")),
        check("sign agreement on 25 points off the zero set", sign_bad.is_empty(), format!("disagree at {sign_bad:?}")),
        check("one constant positive scale on 20 points", constant, spread),
    ])
}

fn printed_off_axis_l1(c: f64, h: f64) -> f64 {
    let core = h * c.abs().powf(3.5) * (h.powi(4) - 4.0 * c * c).sqrt() * (h.powi(4) + 4.0 * c * c).powi(2);
    if c > 0.0 {
        -core
    } else {
        core
    }
}

fn e4e5_focus(_: &ClaimOptions) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for (name, points) in [("e4-normal", [("1/4", "2"), ("1", "2"), ("3", "5")]), ("e5-normal", [("-1", "2"), ("-1/4", "2"), ("-3", "5")])] {
        let mut signs = Vec::new();
        let mut rel = Vec::new();
        let mut sign_ok = true;
        let mut close = true;
        for (c, h) in points {
            let nf = NormalForm3::from_field(catalog::float_with(name, &[("c", c), ("h", h)])?)?;
            let l1 = normal_form_focus(&nf, 1)?.quantities[0];
            let (cf, hf) = (grammar::parse_rational_expr(c)?, grammar::parse_rational_expr(h)?);
            let printed = printed_off_axis_l1(rational_to_f64(&cf).unwrap_or(f64::NAN), rational_to_f64(&hf).unwrap_or(f64::NAN));
            let r = (l1 - printed).abs() / printed.abs();
            sign_ok &= l1 != 0.0 && l1.signum() == printed.signum();
            close &= r < 1e-6;
            signs.push(format!("(c,h)=({c},{h}): L1={l1:.6e}"));
            rel.push(format!("(c,h)=({c},{h}): printed {printed:.6e}, ratio {:.6e}", l1 / printed));
        }
        let sign_name = if name == "e4-normal" { "negative" } else { "sign of the printed formula" };
        checks.push(check(format!("{name}: L1 {sign_name}"), sign_ok, signs.join("; ")));
        checks.push(check(format!("{name}: within 1e-6 of the printed closed form"), close, rel.join("; ")));
    }
    Ok(checks)
}

fn period_fit<T: Real>(nf: &NormalForm3<T>, rho: f64, tol: Tolerances) -> Result<f64> {
    let r = real::<T>(rho);
    let p = measure_period(nf, r, real(30.0), tol)?;
    let x = (p.period / (real::<T>(2.0) * T::PI()) - T::one()) / r.powi(4);
    Ok(x.to_f64().unwrap_or(f64::NAN))
}

fn e1_isochronicity(_: &ClaimOptions) -> Result<Vec<Check>> {
    let f = catalog::exact("e1-center")?;
    let e = isochronicity_constants(&NormalForm3::from_field(f.clone())?, 2)?;
    let want = parse_expr(&f, "d^4/(8*(d^4+4))")?;
    let t4 = e.constants[1].clone();
    let names = ["d".to_string()];
    let magnitude_ok = (t4.clone() - want.clone()).is_zero() || (t4.clone() + want).is_zero();
    let mut checks = vec![
        check("T2 = 0", e.constants[0].is_zero(), e.constants[0].display(&names).to_string()),
        check("|T4| = d^4/(8(d^4+4))", magnitude_ok, format!("T4 = {}", t4.display(&names))),
    ];
    let exact = specialize(&f, &[int(1)])?;
    let t4_at_1 = rational_to_f64(&t4.eval_rational(&[int(1)])?).unwrap_or(f64::NAN);
    let nf = NormalForm3::from_field(exact.map(Extended::from_rational))?;
    let tol = Tolerances::new(1e-20, 1e-22);
    let fits = [period_fit(&nf, 0.1, tol)?, period_fit(&nf, 0.05, tol)?];
    let extrapolated = (4.0 * fits[1] - fits[0]) / 3.0;
    let within = |x: f64| (x.abs() - 0.025).abs() < 0.05 * 0.025;
    let ok = fits.iter().all(|&x| within(x)) && within(extrapolated);
    let sign_ok = fits.iter().all(|x| x.signum() == t4_at_1.signum());
    checks.push(check(
        "period fit |(T/2pi - 1)/rho0^4| = 1/40 within 5% at d=1",
        ok,
        format!("rho0=0.1: {:.8e}, rho0=0.05: {:.8e}, extrapolated {:.8e}", fits[0], fits[1], extrapolated),
    ));
    checks.push(check("period fit has the sign of the computed T4", sign_ok, format!("T4(1) = {t4_at_1:.8e}")));
    Ok(checks)
}

fn trace_rank(_: &ClaimOptions) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for d0 in ["1/2", "1", "2"] {
        let r = cyclicity_bound(&linear_preset(d0))?;
        let m = r.jacobian.matrix.iter().map(|row| format!("[{}]", row.join(", "))).collect::<Vec<_>>().join(", ");
        checks.push(check(format!("d0 = {d0}: rank 3"), r.jacobian.rank == 3, format!("rank {}, J = [{m}]", r.jacobian.rank)));
        checks.push(check(
            format!("d0 = {d0}: bound 3 with trace cycle"),
            r.total == 3 && r.trace_bonus,
            format!("k = {}, trace bonus {}, bound {}", r.k, r.trace_bonus, r.total),
        ));
    }
    Ok(checks)
}

const PRINTED_LINEAR_PARTS: [&str; 9] = [
    "1/20*(a011 + 2*a101 - 2*b011 + b101)",
    "1/40*(-a101 - b011)",
    "(281*a011 + 342*a101 - 342*b011 + 281*b101)/136000",
    "-281*(a101 + b011)/272000",
    "(2324157*a011 + 2420774*a101 - 2420774*b011 + 2324157*b101)/17108800000",
    "-2324157*(a101 + b011)/34217600000",
    "(18296103569*a011 + 17579350678*a101 - 17579350678*b011 + 18296103569*b101)/1721829632000000",
    "-18296103569*(a101 + b011)/3443659264000000",
    "(1295884288642940083*a011 + 1183999528745548106*a101 - 1183999528745548106*b011 + 1295884288642940083*b101)/1422019490987264000000000",
];

const PRINTED_H5_ON_LINE: &str = "-4990766496931/7701305314560000";

/// `Some(s)` when `a = s * b` for one scalar `s`.
fn proportional(a: &[Rational], b: &[Rational]) -> Option<Rational> {
    let i = b.iter().position(|x| !x.is_zero())?;
    let s = &a[i] / &b[i];
    a.iter().zip(b).all(|(x, y)| x == &(&s * y)).then_some(s)
}

fn quadratic_cyclicity(_: &ClaimOptions) -> Result<Vec<Check>> {
    let config = quadratic_preset(9);
    let f = catalog::exact(&config.system)?;
    let (names, qs) = focus_jets(&config, 9, 1)?;
    let n = names.len();
    let rows: Vec<Vec<Rational>> = qs.iter().map(|q| q.linear_part(n)).collect();
    let rank = jacobian_rank(&rows, &names, &vec![Rational::zero(); n]).rank;
    let mut scales = Vec::new();
    let mut all_ok = true;
    for (k, (row, text)) in rows.iter().zip(PRINTED_LINEAR_PARTS).enumerate() {
        let printed = parse_expr(&f, text)?;
        let printed = printed.as_poly().ok_or_else(|| Error::SchemaError("printed linear part is not polynomial".into()))?;
        // Map the system's parameter slots onto the jet slots.
        let prow: Vec<Rational> = names
            .iter()
            .map(|nm| f.params.index(nm).map(|i| printed.coeff(&Monomial::var(i))).unwrap_or_else(Rational::zero))
            .collect();
        match proportional(row, &prow) {
            Some(s) if s.is_positive() => scales.push(format!("L{}: {s}", k + 1)),
            other => {
                all_ok = false;
                scales.push(format!("L{}: {}", k + 1, other.map_or("not proportional".into(), |s| s.to_string())));
            }
        }
    }
    let mut checks = vec![
        check("linear parts of L1..L9 have rank 3", rank == 3, format!("rank {rank}")),
        check("printed L_k^1 proportional with positive scales", all_ok, scales.join(", ")),
    ];
    let r = cyclicity_bound(&quadratic_preset(5))?;
    let h4 = &r.h_values[0].coeff;
    let h5 = &r.h_values[1].coeff;
    let h5_neg = grammar::parse_rational_expr(h5).map(|q| q.is_negative()).unwrap_or(false);
    checks.push(check("h4(eta) = 0", h4 == "0", format!("h4(eta) = {h4} b200^2")));
    checks.push(check(
        "h5(eta) negative multiple of b200^2",
        h5_neg,
        format!("h5(eta) = {h5} b200^2 (printed {PRINTED_H5_ON_LINE})"),
    ));
    checks.push(check(
        "bound 5",
        r.total == 5 && r.transversal == Some(true),
        format!("k = {}, l = {}, transversal {:?}, pivots {:?}", r.k, r.l, r.transversal, r.jacobian.pivots),
    ));
    Ok(checks)
}

fn l1_displacement(_: &ClaimOptions) -> Result<Vec<Check>> {
    let e4 = NormalForm3::from_field(catalog::float_with("e4-normal", &[("c", "1/4"), ("h", "2")])?)?;
    let l1 = normal_form_focus(&e4, 1)?.quantities[0];
    let mut details = Vec::new();
    let mut ok = true;
    for rho in [0.025, 0.05] {
        let s = displacement(&e4, rho, Tolerances::default())?;
        let ratio = s.value / rho.powi(3);
        ok &= (ratio - PI * l1).abs() < 0.1 * (PI * l1).abs() && ratio.signum() == l1.signum();
        details.push(format!("rho0={rho}: dbar/rho0^3 = {ratio:.6e}"));
    }
    details.push(format!("pi*L1 = {:.6e}", PI * l1));
    let g = specialize(&catalog::exact("e1-normal")?, &[rat(1, 10), int(1), int(1)])?;
    let exact_l1 = normal_form_focus(&NormalForm3::from_field(g.clone())?, 1)?.quantities[0].clone();
    let nf = NormalForm3::from_field(to_float(&g)?)?;
    let s = displacement(&nf, 0.05, Tolerances::default())?;
    let l1_sign = rational_to_f64(&exact_l1.signum()).unwrap_or(0.0);
    Ok(vec![
        check("e4-normal (1/4,2): dbar/rho0^3 within 10% of pi*L1 and same sign", ok, details.join(", ")),
        check(
            "e1-normal (1/10,1,1): sign of dbar matches L1",
            l1_sign != 0.0 && s.value.signum() == l1_sign,
            format!("L1 = {exact_l1}, dbar(0.05) = {:.6e}", s.value),
        ),
    ])
}

fn e1_conservation(opts: &ClaimOptions) -> Result<Vec<Check>> {
    let f = to_float(&specialize(&catalog::exact("e1-center")?, &[int(1)])?)?;
    let tol = Tolerances::default();
    let tr = integrate(&f, SERIES_START, (0.0, 100.0), tol)?;
    let drift = tr.max_relative_drift(|s| s[0] * s[0] + s[1] * s[1]);
    let dir: &Path = &opts.out_dir;
    std::fs::create_dir_all(dir)?;
    let csv = dir.join("center_series.csv");
    write_trajectory_csv(&tr, BufWriter::new(File::create(&csv)?))?;
    write_plot_script(&dir.join("center_series.py"), "center_series.csv", "e1 center, d = 1")?;
    let series = write_component_series(&tr, dir, "center_series")?;
    let set = write_orbit_set(&f, &CENTER_ORBIT_STARTS, 100.0, false, tol, dir, "center_orbits", "e1 center, d = 1")?;
    let mut files = vec![csv, dir.join("center_series.py"), set.script.clone()];
    files.extend(series);
    files.extend(set.csvs);
    let written = files.iter().all(|p| p.metadata().map(|m| m.len() > 0).unwrap_or(false));
    Ok(vec![
        check("u^2+v^2 drift below 1e-8", drift < 1e-8, format!("max relative drift {drift:.3e} over {} steps", tr.stats.steps)),
        check("CSV and plot scripts written", written, format!("{} files in {}", files.len(), dir.display())),
    ])
}
