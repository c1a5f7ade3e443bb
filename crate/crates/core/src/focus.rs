//! Focus quantities via a formal first integral `Ψ = xy + …` of the
//! complexified normal form.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, Gauss, Jet, JetSpace, ParamExpr, Rational};
use crate::normalform::{NormalForm3, Orientation};
use crate::polysys::{exp_degree, Exp3, StatePoly, VectorField3};

/// `ẋ = ix + X₁`, `ẏ = -iy + X₂`, `ż = λz + X₃` with `y = x̄` and `z` real.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexSystem<T: Field> {
    pub x: [StatePoly<Gauss<T>>; 3],
    pub lambda: T,
}

/// Coefficient-wise reality constraints: `b_{jkl} = conj(a_{kjl})` and
/// `c_{jkl} = conj(c_{kjl})`.
fn check_reality<T: Field>(x: &[StatePoly<Gauss<T>>; 3], tol: f64) -> Result<()> {
    let swapped = |e: &Exp3| [e[1], e[0], e[2]];
    let close = |a: Gauss<T>, b: Gauss<T>| {
        let scale = 1.0 + a.magnitude().max(b.magnitude());
        (a - b).approx_zero(tol * scale)
    };
    for (e, a) in x[0].terms() {
        let b = x[1].coeff(&swapped(e));
        if !close(b, a.conj()) {
            return Err(Error::NotRealSystem(format!("x-coefficient at {e:?} is not conjugate to the y-coefficient")));
        }
    }
    for (e, b) in x[1].terms() {
        let a = x[0].coeff(&swapped(e));
        if !close(a, b.conj()) {
            return Err(Error::NotRealSystem(format!("y-coefficient at {e:?} has no conjugate partner")));
        }
    }
    for (e, c) in x[2].terms() {
        let c2 = x[2].coeff(&swapped(e));
        if !close(c2, c.conj()) {
            return Err(Error::NotRealSystem(format!("z-coefficient at {e:?} is not self-conjugate")));
        }
    }
    Ok(())
}

impl<T: Field> ComplexSystem<T> {
    pub fn new(x: [StatePoly<Gauss<T>>; 3], lambda: T) -> Result<Self> {
        check_reality(&x, if T::is_exact() { 0.0 } else { 1e-12 })?;
        Ok(ComplexSystem { x, lambda })
    }
}

/// Substitute `u = (x+y)/2`, `v = (x-y)/(2i)`, `w = z` into the canonical
/// nonlinear parts.
pub fn complexify<T: Field>(nf: &NormalForm3<T>) -> Result<ComplexSystem<T>> {
    let [p, q, r] = nf.canonical();
    let half = Gauss::real(T::from_rational(&Rational::new(1.into(), 2.into())));
    let gx = StatePoly::<Gauss<T>>::var(0);
    let gy = StatePoly::<Gauss<T>>::var(1);
    let u = gx.add(&gy).scale(&half);
    // (x - y)/(2i) = -i(x - y)/2
    let v = gx.sub(&gy).scale(&Gauss::new(T::zero(), T::from_rational(&Rational::new((-1).into(), 2.into()))));
    let subs = [u, v, StatePoly::var(2)];
    let lift = |s: &StatePoly<T>| s.map(|c| Gauss::real(c.clone())).compose(&subs);
    let (pc, qc, rc) = (lift(&p), lift(&q), lift(&r));
    let iq = qc.scale(&Gauss::i());
    ComplexSystem::new([pc.add(&iq), pc.sub(&iq), rc], nf.lambda.clone())
}

#[derive(Clone, Debug, PartialEq)]
pub struct FocusReport<T: Field> {
    /// `L₁ … L_n`.
    pub quantities: Vec<T>,
    pub orientation: Orientation,
    /// Coefficients of `Ψ` by total degree, `Ψ = xy + Σ d_{jkl} x^j y^k z^l`.
    pub psi: StatePoly<Gauss<T>>,
}

/// Normalization convention attached to every report.
pub const NORMALIZATION: &str =
    "d_kk0 = 0 at every obstruction; L_k is the coefficient of (u^2+v^2)^(k+1) in X(Psi), Psi = u^2+v^2 + ..., \
     computed in the counter-clockwise frame";

#[derive(Clone, Debug, Serialize)]
pub struct Normalization {
    pub convention: &'static str,
    /// Positive factor relating a reported quantity to a reference formula,
    /// when one has been measured.
    pub scale: Option<String>,
}

/// Degree-by-degree recursion for `n` focus quantities (degrees `3..=2n+2`).
pub fn focus_quantities<T: Field>(cs: &ComplexSystem<T>, n: usize) -> Result<FocusReport<T>> {
    if cs.lambda.approx_zero(0.0) {
        return Err(Error::DegenerateLambda);
    }
    let tol = if T::is_exact() { 0.0 } else { 1e-9 };
    // Nonlinear coefficients grouped per component.
    let xs: Vec<Vec<(Exp3, Gauss<T>)>> =
        cs.x.iter().map(|p| p.terms().map(|(e, c)| (*e, c.clone())).collect()).collect();
    let min_nl = cs.x.iter().filter(|p| !p.is_zero()).map(StatePoly::min_degree).min().unwrap_or(2).max(2);

    let top = 2 * n as u32 + 2;
    let mut by_degree: Vec<Vec<(Exp3, Gauss<T>)>> = vec![Vec::new(); top as usize + 1];
    by_degree[2].push(([1, 1, 0], Gauss::one()));
    let mut quantities = Vec::with_capacity(n);
    let lambda = Gauss::real(cs.lambda.clone());

    for m in 3..=top {
        let mut contrib: HashMap<Exp3, Gauss<T>> = HashMap::new();
        for (idx, terms) in xs.iter().enumerate() {
            for (ex, cf) in terms {
                let dx = exp_degree(ex);
                if dx < min_nl || dx + 1 > m {
                    continue;
                }
                // A term of degree m comes from Ψ-terms of degree m - dx + 1.
                let src = (m + 1 - dx) as usize;
                if src < 2 {
                    continue;
                }
                for (e, d) in &by_degree[src] {
                    if e[idx] == 0 {
                        continue;
                    }
                    let mut t = *e;
                    t[idx] -= 1;
                    let t = [t[0] + ex[0], t[1] + ex[1], t[2] + ex[2]];
                    let fac = Gauss::from_i64(e[idx] as i64);
                    let v = d.mul_ref(cf).mul_ref(&fac);
                    contrib.entry(t).and_modify(|a| a.add_assign_ref(&v)).or_insert(v);
                }
            }
        }
        let mut keys: Vec<Exp3> = contrib.keys().copied().collect();
        keys.sort();
        let mut level = Vec::new();
        let mut obstruction = None;
        for t in keys {
            let val = contrib.remove(&t).expect("key present");
            if t[0] == t[1] && t[2] == 0 {
                obstruction = Some(val);
                continue;
            }
            let div = Gauss::new(lambda.re.mul_ref(&T::from_i64(t[2] as i64)), T::from_i64(t[0] as i64 - t[1] as i64));
            let inv = div.try_inv().ok_or(Error::DegenerateLambda)?;
            let d = -val.mul_ref(&inv);
            if !d.is_zero() {
                level.push((t, d));
            }
        }
        by_degree[m as usize] = level;
        if m % 2 == 0 {
            let l = obstruction.unwrap_or_else(Gauss::zero);
            if !l.im.approx_zero(tol * (1.0 + l.re.magnitude())) {
                return Err(Error::NotRealSystem(format!("focus quantity {} has imaginary part {:?}", m / 2 - 1, l.im)));
            }
            quantities.push(l.re);
        }
    }
    let psi = StatePoly::from_terms(by_degree.into_iter().flatten());
    Ok(FocusReport { quantities, orientation: 1, psi })
}

/// Focus quantities of a normal form, reported in the system's own frame.
pub fn normal_form_focus<T: Field>(nf: &NormalForm3<T>, n: usize) -> Result<FocusReport<T>> {
    let cs = complexify(nf)?;
    let mut report = focus_quantities(&cs, n)?;
    report.orientation = nf.orientation;
    Ok(report)
}

/// `X̃Ψ - Σ L_{j-1}(xy)^j` truncated to degree `2n+2`; zero for a correct
/// report.
pub fn psi_residual<T: Field>(cs: &ComplexSystem<T>, report: &FocusReport<T>) -> StatePoly<Gauss<T>> {
    let n = report.quantities.len();
    let top = 2 * n as u32 + 2;
    let psi = &report.psi;
    let i = Gauss::<T>::i();
    let lin = [
        StatePoly::var(0).scale(&i),
        StatePoly::var(1).scale(&-i.clone()),
        StatePoly::var(2).scale(&Gauss::real(cs.lambda.clone())),
    ];
    let mut acc = StatePoly::zero();
    for k in 0..3 {
        let dpsi = psi.derivative(k);
        acc = acc.add(&dpsi.mul(&lin[k].add(&cs.x[k])).truncate(top));
    }
    for (j, l) in report.quantities.iter().enumerate() {
        let e = (j + 2) as u32;
        acc = acc.sub(&StatePoly::monomial([e, e, 0], Gauss::real(l.clone())));
    }
    acc.truncate(top)
}

/// `⟨f, ∇H⟩ = 0` as a polynomial identity.
pub fn verify_first_integral<T: Field>(f: &VectorField3<T>, h: &StatePoly<T>) -> Result<bool> {
    if h.degree() == 0 {
        return Err(Error::NotAFirstIntegralCandidate);
    }
    let mut acc = StatePoly::zero();
    for k in 0..3 {
        acc = acc.add(&f.comps[k].mul(&h.derivative(k)));
    }
    Ok(acc.approx_zero(if T::is_exact() { 0.0 } else { 1e-12 }))
}

/// Substitute parameters in an exact normal form and test whether the first
/// `n` focus quantities vanish identically.
pub fn verify_center_conditions(
    nf: &VectorField3<ParamExpr>,
    substitution: &[Option<ParamExpr>],
    n: usize,
) -> Result<bool> {
    let g = nf.try_map(|c| c.substitute(substitution))?;
    let nf = NormalForm3::from_field(g)?;
    let report = normal_form_focus(&nf, n)?;
    Ok(report.quantities.iter().all(|q| q.is_zero()))
}

/// Replace each exact coefficient by a jet: parameter `i` becomes
/// `base[i] + ε_j` when `small[i] = Some(j)`, and the constant `base[i]`
/// otherwise. Parameters with `base[i] = None` and no jet slot are an error.
pub fn jet_field(
    f: &VectorField3<ParamExpr>,
    space: &Arc<JetSpace>,
    base: &[Rational],
    small: &[Option<usize>],
) -> Result<VectorField3<Jet<Rational>>> {
    let point: Vec<Jet<Rational>> = base
        .iter()
        .zip(small)
        .map(|(b, s)| match s {
            Some(j) => Jet::variable(space, *j, b.clone()),
            None => Jet::lift(space, b.clone()),
        })
        .collect();
    f.try_map(|c| c.eval(&point))
}

/// Focus quantities with jet coefficients: each `L_k` as a truncated
/// polynomial in the small parameters.
pub fn jet_focus_quantities(nf: &NormalForm3<Jet<Rational>>, n: usize) -> Result<FocusReport<Jet<Rational>>> {
    normal_form_focus(nf, n)
}
