//! Lower bounds for the number of limit cycles born from a center: rank of
//! the focus quantities' linear parts, reduction to the remaining
//! parameters, homogeneous parts and transversality along a line.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::catalog;
use crate::error::{Error, Result};
use crate::field::{parse_rational, Field, JetSpace, Monomial, ParamExpr, ParamPoly, Rational};
use crate::focus::{jet_field, jet_focus_quantities};
use crate::normalform::NormalForm3;
use crate::polysys::{rank_with_pivots, solve};

/// A quantity as a polynomial in the small parameters, valid through
/// total degree `degree`.
#[derive(Clone, Debug, PartialEq)]
pub struct Truncated {
    pub poly: ParamPoly,
    pub degree: usize,
}

impl Truncated {
    pub fn new(poly: ParamPoly, degree: usize) -> Self {
        Truncated { poly: truncate(&poly, degree), degree }
    }

    pub fn linear_part(&self, nvars: usize) -> Vec<Rational> {
        (0..nvars).map(|v| self.poly.coeff(&Monomial::var(v))).collect()
    }
}

fn truncate(p: &ParamPoly, degree: usize) -> ParamPoly {
    ParamPoly::from_terms(p.terms().filter(|(m, _)| m.degree() as usize <= degree).map(|(m, c)| (m.clone(), c.clone())))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JacobianReport {
    /// Rows: quantities; columns: parameters.
    pub matrix: Vec<Vec<String>>,
    pub params: Vec<String>,
    pub point: Vec<String>,
    pub rank: usize,
    /// Pivot columns found by elimination, as parameter names.
    pub pivots: Vec<String>,
    /// Largest `k` such that the first `k` rows are independent.
    pub leading_independent: usize,
}

/// Exact rank of a Jacobian given by rows.
pub fn jacobian_rank(rows: &[Vec<Rational>], params: &[String], point: &[Rational]) -> JacobianReport {
    let (rank, pivots) = rank_with_pivots(rows, 0.0);
    let mut leading = 0;
    for k in 1..=rows.len() {
        if rank_with_pivots(&rows[..k], 0.0).0 == k {
            leading = k;
        } else {
            break;
        }
    }
    JacobianReport {
        matrix: rows.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect(),
        params: params.to_vec(),
        point: point.iter().map(ToString::to_string).collect(),
        rank,
        pivots: pivots.iter().map(|&c| params[c].clone()).collect(),
        leading_independent: leading,
    }
}

/// Jacobian of symbolic quantities with respect to `vars` at a full
/// parameter point.
pub fn symbolic_jacobian(quantities: &[ParamExpr], vars: &[usize], point: &[Rational]) -> Result<Vec<Vec<Rational>>> {
    quantities
        .iter()
        .map(|q| {
            vars.iter()
                .map(|&v| q.differentiate(v).eval_rational(point).map_err(|_| Error::PoleAtPoint))
                .collect::<Result<Vec<_>>>()
        })
        .collect()
}

/// Quantities after the parameter change `L_i = u_i` (`i ≤ k`), expressed
/// in the variables where pivot slot `pivots[i]` now holds `u_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct Reduced {
    pub quantities: Vec<Truncated>,
    pub pivots: Vec<usize>,
    pub k: usize,
    /// Pivot parameters as functions of `(u, remaining parameters)`.
    pub pivot_solution: Vec<ParamPoly>,
}

/// Reduce `quantities` so that the first `k` become coordinates and the
/// rest lose every term that lies in the ideal of the first `k`: linear
/// parts vanish and higher parts no longer involve `u_1 … u_k`.
pub fn reduce_quantities(quantities: &[Truncated], nvars: usize, k: usize, pivots: &[usize]) -> Result<Reduced> {
    if k == 0 {
        return Ok(Reduced { quantities: quantities.to_vec(), pivots: Vec::new(), k, pivot_solution: Vec::new() });
    }
    if pivots.len() != k || quantities.len() < k {
        return Err(Error::BadPivots);
    }
    let degree = quantities.iter().map(|q| q.degree).min().unwrap_or(1);
    let lin: Vec<Vec<Rational>> = quantities[..k].iter().map(|q| q.linear_part(nvars)).collect();
    let a: Vec<Vec<Rational>> = lin.iter().map(|r| pivots.iter().map(|&p| r[p].clone()).collect()).collect();
    let ident: Vec<Vec<Rational>> =
        (0..k).map(|i| (0..k).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()).collect();
    let a_inv = solve(&a, &ident).ok_or(Error::BadPivots)?;

    // While solving, u_i lives in the extra slot `nvars + i`.
    let u = |i: usize| ParamPoly::var(nvars + i);
    let rest: Vec<ParamPoly> = quantities[..k]
        .iter()
        .enumerate()
        .map(|(i, q)| {
            let mut r = q.poly.clone();
            for (j, &p) in pivots.iter().enumerate() {
                r = r.sub(&ParamPoly::var(p).scale(&a[i][j]));
            }
            r
        })
        .collect();
    // ε_piv = A⁻¹(u - R(ε)); each pass fixes one more order.
    let mut phi: Vec<ParamPoly> = vec![ParamPoly::zero(); k];
    for _ in 0..=degree {
        let mut subs: Vec<Option<ParamPoly>> = vec![None; nvars];
        for (i, &p) in pivots.iter().enumerate() {
            subs[p] = Some(phi[i].clone());
        }
        let rhs: Vec<ParamPoly> = (0..k).map(|i| u(i).sub(&truncate(&rest[i].substitute(&subs), degree))).collect();
        phi = (0..k)
            .map(|i| {
                let mut acc = ParamPoly::zero();
                for j in 0..k {
                    acc = acc.add(&rhs[j].scale(&a_inv[i][j]));
                }
                acc
            })
            .collect();
    }

    let mut subs: Vec<Option<ParamPoly>> = vec![None; nvars];
    for (i, &p) in pivots.iter().enumerate() {
        subs[p] = Some(phi[i].clone());
    }
    let mut back: Vec<Option<ParamPoly>> = vec![None; nvars + k];
    for (i, &p) in pivots.iter().enumerate() {
        back[nvars + i] = Some(ParamPoly::var(p));
    }
    let mut out = Vec::with_capacity(quantities.len());
    for (i, q) in quantities.iter().enumerate() {
        if i < k {
            out.push(Truncated::new(ParamPoly::var(pivots[i]), q.degree));
            continue;
        }
        let composed = truncate(&q.poly.substitute(&subs), q.degree);
        let kept = ParamPoly::from_terms(
            composed
                .terms()
                .filter(|(m, _)| (0..k).all(|j| m.exp(nvars + j) == 0))
                .map(|(m, c)| (m.clone(), c.clone())),
        );
        out.push(Truncated::new(kept, q.degree));
    }
    let pivot_solution = phi.iter().map(|f| f.substitute(&back)).collect();
    Ok(Reduced { quantities: out, pivots: pivots.to_vec(), k, pivot_solution })
}

/// Homogeneous part of degree `degree`.
pub fn homogeneous_part(q: &Truncated, degree: usize) -> Result<ParamPoly> {
    if degree > q.degree {
        return Err(Error::TruncationTooLow { have: q.degree, want: degree });
    }
    Ok(ParamPoly::from_terms(
        q.poly.terms().filter(|(m, _)| m.degree() as usize == degree).map(|(m, c)| (m.clone(), c.clone())),
    ))
}

/// `h(t·direction)` as a polynomial in `t` (variable 0).
pub fn evaluate_on_line(h: &ParamPoly, direction: &[Rational]) -> ParamPoly {
    let mut out = ParamPoly::zero();
    for (m, c) in h.terms() {
        let mut v = c.clone();
        for (i, &e) in m.exps().iter().enumerate() {
            if e > 0 {
                v *= direction.get(i).cloned().unwrap_or_else(Rational::zero).pow_u32(e);
            }
        }
        out = out.add(&ParamPoly::var(0).pow(m.degree()).scale(&v));
    }
    out
}

/// Rank of the gradients of `hs` at `point`, restricted to `vars`.
pub fn gradient_rank(hs: &[ParamPoly], vars: &[usize], point: &[Rational]) -> usize {
    let rows: Vec<Vec<Rational>> =
        hs.iter().map(|h| vars.iter().map(|&v| h.derivative(v).eval(point)).collect()).collect();
    rank_with_pivots(&rows, 0.0).0
}

/// What to compute for a cyclicity report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CyclicityConfig {
    pub system: String,
    /// Base point: every parameter of the system.
    pub base: Vec<(String, String)>,
    /// Parameters that carry jet slots, in slot order.
    pub small: Vec<String>,
    /// Trace parameter, if the family has one; its base value must be 0.
    #[serde(default)]
    pub trace: Option<String>,
    /// Focus quantities whose linear parts enter the rank.
    pub linear_quantities: usize,
    /// Higher-order analysis: number of extra quantities `l`, pivots and
    /// the line direction.
    #[serde(default)]
    pub higher: Option<HigherOrder>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HigherOrder {
    pub l: usize,
    pub pivots: Vec<String>,
    /// Direction of the line; unlisted parameters are zero.
    pub line: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LineValue {
    pub quantity: usize,
    /// Coefficient of `t^degree`.
    pub coeff: String,
    pub degree: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CyclicityReport {
    pub k: usize,
    pub l: usize,
    pub trace_bonus: bool,
    pub total: usize,
    pub jacobian: JacobianReport,
    pub line: Vec<(String, String)>,
    pub h_values: Vec<LineValue>,
    pub transversal: Option<bool>,
    pub notes: Vec<String>,
}

fn rational(s: &str) -> Result<Rational> {
    crate::grammar::parse_rational_expr(s).or_else(|e| parse_rational(s).ok_or(e))
}

/// The reduced system's jet data: parameter names in slot order and the
/// focus quantities as truncated polynomials.
pub fn focus_jets(config: &CyclicityConfig, count: usize, degree: usize) -> Result<(Vec<String>, Vec<Truncated>)> {
    let f = catalog::exact(&config.system)?;
    let names = f.params.names().to_vec();
    let mut base = vec![None; names.len()];
    for (n, v) in &config.base {
        let i = f.params.index(n).ok_or_else(|| Error::SchemaError(format!("unknown parameter {n}")))?;
        base[i] = Some(rational(v)?);
    }
    let mut small = vec![None; names.len()];
    for (slot, n) in config.small.iter().enumerate() {
        let i = f.params.index(n).ok_or_else(|| Error::SchemaError(format!("unknown parameter {n}")))?;
        small[i] = Some(slot);
        base[i].get_or_insert_with(Rational::zero);
    }
    let base: Vec<Rational> = base
        .into_iter()
        .zip(&names)
        .map(|(b, n)| b.ok_or_else(|| Error::SchemaError(format!("parameter {n} has no base value"))))
        .collect::<Result<_>>()?;
    let space = JetSpace::new(config.small.len(), degree);
    let g = jet_field(&f, &space, &base, &small)?;
    let nf = NormalForm3::from_field(g)?;
    let report = jet_focus_quantities(&nf, count)?;
    let qs = report
        .quantities
        .iter()
        .map(|j| {
            let poly = (0..=degree).fold(ParamPoly::zero(), |acc, d| acc.add(&j.homogeneous_poly(d)));
            Truncated::new(poly, degree)
        })
        .collect();
    Ok((config.small.clone(), qs))
}

pub fn cyclicity_bound(config: &CyclicityConfig) -> Result<CyclicityReport> {
    let mut notes = Vec::new();
    let (names, linear) = focus_jets(config, config.linear_quantities, 1)?;
    let nvars = names.len();
    let rows: Vec<Vec<Rational>> = linear.iter().map(|q| q.linear_part(nvars)).collect();
    let base_point: Vec<Rational> = vec![Rational::zero(); nvars];
    let jacobian = jacobian_rank(&rows, &names, &base_point);
    let k = jacobian.leading_independent;
    if jacobian.rank > k {
        notes.push(format!("rank {} exceeds the {k} leading independent quantities", jacobian.rank));
    }
    let trace_bonus = config.trace.is_some();

    let mut l = 0;
    let mut h_values = Vec::new();
    let mut transversal = None;
    let mut line = Vec::new();
    if let Some(h) = &config.higher {
        let (_, qs) = focus_jets(config, k + h.l, 2)?;
        let idx = |n: &str| names.iter().position(|x| x == n).ok_or_else(|| Error::SchemaError(format!("unknown parameter {n}")));
        let pivots: Vec<usize> = h.pivots.iter().map(|n| idx(n)).collect::<Result<_>>()?;
        let reduced = reduce_quantities(&qs, nvars, k, &pivots)?;
        let mut direction = vec![Rational::zero(); nvars];
        for (n, v) in &h.line {
            direction[idx(n)?] = rational(v)?;
            line.push((n.clone(), v.clone()));
        }
        for &p in &pivots {
            if !direction[p].is_zero() {
                return Err(Error::SchemaError(format!("line moves pivot parameter {}", names[p])));
            }
        }
        notes.push("parameters not listed on the line, including the pivots, are zero".into());
        let mut hs = Vec::new();
        for (i, q) in reduced.quantities.iter().enumerate().skip(k) {
            if !homogeneous_part(q, 1)?.is_zero() {
                notes.push(format!("L{} keeps a linear part after reduction", i + 1));
            }
            let hq = homogeneous_part(q, 2)?;
            let on = evaluate_on_line(&hq, &direction);
            h_values.push(LineValue { quantity: i + 1, coeff: on.coeff(&Monomial::var(0).pow(2)).to_string(), degree: 2 });
            hs.push((hq, on));
        }
        let free: Vec<usize> = (0..nvars).filter(|v| !pivots.contains(v)).collect();
        let vanish = hs[..h.l - 1].iter().all(|(_, on)| on.is_zero());
        let last = hs.last().map_or(false, |(_, on)| !on.is_zero());
        let grads: Vec<ParamPoly> = hs[..h.l - 1].iter().map(|(hq, _)| hq.clone()).collect();
        let trans = gradient_rank(&grads, &free, &direction) == h.l - 1;
        transversal = Some(trans);
        if vanish && last && trans {
            l = h.l;
        } else {
            notes.push(format!("line test failed: vanish={vanish}, last nonzero={last}, transversal={trans}"));
        }
    }
    // The Hopf (trace) perturbation supplies the k-th cycle when k > 0 and
    // the only cycle when no linear part is independent.
    let total = k.max(usize::from(trace_bonus)) + l;
    Ok(CyclicityReport { k, l, trace_bonus, total, jacobian, line, h_values, transversal, notes })
}

/// Preset: linear parts of the first three focus quantities of the
/// trace-perturbed axis normal form at `k = 1, c = 0, d = d0`.
pub fn linear_preset(d0: &str) -> CyclicityConfig {
    CyclicityConfig {
        system: "e1-normal-trace".into(),
        base: vec![("k".into(), "1".into()), ("c".into(), "0".into()), ("d".into(), d0.into()), ("sigma".into(), "0".into())],
        small: vec!["k".into(), "c".into(), "d".into()],
        trace: Some("sigma".into()),
        linear_quantities: 3,
        higher: None,
    }
}

/// Preset: quadratic perturbations of the center, nine linear parts, and
/// two further quantities along the line through `b200`.
pub fn quadratic_preset(linear_quantities: usize) -> CyclicityConfig {
    CyclicityConfig {
        system: "e1-center-perturbed".into(),
        base: Vec::new(),
        small: catalog::perturbation_names(),
        trace: None,
        linear_quantities,
        higher: Some(HigherOrder {
            l: 2,
            pivots: vec!["a011".into(), "a101".into(), "b011".into()],
            line: vec![("b200".into(), "1".into()), ("c101".into(), "-252889/66891".into())],
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{int, rat};

    fn v(i: usize) -> ParamPoly {
        ParamPoly::var(i)
    }

    #[test]
    fn zero_quantities_have_rank_zero() {
        let rows = vec![vec![int(0), int(0)]; 3];
        let r = jacobian_rank(&rows, &["x".into(), "y".into()], &[int(0), int(0)]);
        assert_eq!((r.rank, r.leading_independent), (0, 0));
    }

    #[test]
    fn reduction_removes_ideal_terms() {
        // L1 = x + y^2, L2 = 3x + xy + y^2 + z^2 with pivot x.
        let l1 = Truncated::new(v(0).add(&v(1).pow(2)), 2);
        let l2 = Truncated::new(v(0).scale(&int(3)).add(&v(0).mul(&v(1))).add(&v(1).pow(2)).add(&v(2).pow(2)), 2);
        let r = reduce_quantities(&[l1, l2], 3, 1, &[0]).unwrap();
        // On L1 = 0: x = -y^2, so L2 = -2y^2 + z^2 through degree 2.
        assert_eq!(r.quantities[1].poly, v(1).pow(2).scale(&int(-2)).add(&v(2).pow(2)));
        assert_eq!(r.pivot_solution[0], v(0).sub(&v(1).pow(2)));
    }

    #[test]
    fn identity_reduction_and_bad_pivots() {
        let l1 = Truncated::new(v(0).add(&v(1)), 1);
        let r = reduce_quantities(&[l1.clone()], 2, 0, &[]).unwrap();
        assert_eq!(r.quantities[0], l1);
        let l2 = Truncated::new(v(1), 1);
        assert_eq!(reduce_quantities(&[l2], 2, 1, &[0]), Err(Error::BadPivots));
    }

    #[test]
    fn homogeneous_part_needs_enough_degree() {
        let q = Truncated::new(v(0).pow(2), 2);
        assert_eq!(homogeneous_part(&q, 3), Err(Error::TruncationTooLow { have: 2, want: 3 }));
        assert_eq!(homogeneous_part(&q, 2).unwrap(), v(0).pow(2));
    }

    #[test]
    fn line_evaluation() {
        let h = v(0).mul(&v(1)).sub(&v(1).pow(2));
        let on = evaluate_on_line(&h, &[int(1), rat(1, 2)]);
        assert_eq!(on, v(0).pow(2).scale(&rat(1, 4)));
        assert!(evaluate_on_line(&h, &[int(0), int(0)]).is_zero());
        assert_eq!(gradient_rank(&[h], &[0, 1], &[int(1), int(1)]), 1);
    }
}
