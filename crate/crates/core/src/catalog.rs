//! Built-in systems: the four-wing quadratic system, its reductions at the
//! equilibrium on the z-axis, and the reductions at the off-axis pair.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{ParamExpr, ParamSpace};
use crate::grammar::parse;
use crate::polysys::{parse_system, Backend, EquationTerm, Matrix3, ParamValue, SystemDef, SystemInstance, VectorField3};

#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub summary: &'static str,
    pub backend: Backend,
    /// State-space symmetry carried by the system, if any.
    pub symmetry: Option<&'static str>,
}

pub const ENTRIES: &[CatalogEntry] = &[
    CatalogEntry {
        name: "khaled-original",
        summary: "four-wing quadratic system x'=a(y-x)+yz, y'=bx+cy-xz, z'=-dz+xy+1",
        backend: Backend::Exact,
        symmetry: Some("(x,y,z) -> (-x,-y,z)"),
    },
    CatalogEntry {
        name: "e1-shifted",
        summary: "four-wing system with a=c, b eliminated through the rotation speed k, equilibrium (0,0,1/d) moved to the origin",
        backend: Backend::Exact,
        symmetry: Some("(x,y,z) -> (-x,-y,z)"),
    },
    CatalogEntry {
        name: "e1-normal",
        summary: "Hopf normal form at (0,0,1/d) in parameters (c,d,k); clockwise rotation, real eigenvalue -d^2/k",
        backend: Backend::Exact,
        symmetry: None,
    },
    CatalogEntry {
        name: "e1-normal-trace",
        summary: "e1-normal with a trace perturbation sigma*(u,v) added to the rotation block",
        backend: Backend::Exact,
        symmetry: None,
    },
    CatalogEntry {
        name: "e1-center",
        summary: "e1-normal on its center locus k=1, c=0: u'=v+dvw, v'=-u-duw, w'=-d^2 w+duv",
        backend: Backend::Exact,
        symmetry: None,
    },
    CatalogEntry {
        name: "e1-center-perturbed",
        summary: "e1-center at d=1 plus all 18 quadratic perturbation coefficients a_ijk, b_ijk, c_ijk",
        backend: Backend::Exact,
        symmetry: None,
    },
    CatalogEntry {
        name: "e4-shifted",
        summary: "four-wing system with d=0, a=-c and b eliminated through h, off-axis equilibrium with z=(b-a+sqrt(D))/2 and x<0 moved to the origin",
        backend: Backend::Float,
        symmetry: None,
    },
    CatalogEntry {
        name: "e4-normal",
        summary: "Hopf normal form at the d=0 off-axis equilibrium with z=(b-a+sqrt(D))/2, parameters c>0, h>0; clockwise rotation",
        backend: Backend::Float,
        symmetry: None,
    },
    CatalogEntry {
        name: "e5-normal",
        summary: "Hopf normal form at the d=0 off-axis equilibrium with z=(b-a-sqrt(D))/2, parameters c<0, h>0; counter-clockwise rotation",
        backend: Backend::Float,
        symmetry: None,
    },
];

type Terms = [Vec<(Exp, String)>; 3];
type Exp = [u32; 3];

fn def(backend: Backend, params: &[(&str, Option<&str>)], vars: [&str; 3], eqs: Terms) -> SystemDef {
    SystemDef {
        backend,
        params: params
            .iter()
            .map(|(n, v)| (n.to_string(), v.map(|s| ParamValue::Expr(s.to_string()))))
            .collect::<BTreeMap<_, _>>(),
        state_vars: vars.map(String::from),
        equations: eqs
            .into_iter()
            .map(|eq| eq.into_iter().map(|(exp, coeff)| EquationTerm { exp, coeff }).collect())
            .collect(),
    }
}

fn t(e: Exp, s: &str) -> (Exp, String) {
    (e, s.to_string())
}

const X: Exp = [1, 0, 0];
const Y: Exp = [0, 1, 0];
const Z: Exp = [0, 0, 1];
const XX: Exp = [2, 0, 0];
const XY: Exp = [1, 1, 0];
const XZ: Exp = [1, 0, 1];
const YY: Exp = [0, 2, 0];
const YZ: Exp = [0, 1, 1];
const ZZ: Exp = [0, 0, 2];
const ONE: Exp = [0, 0, 0];

/// Quadratic monomials in the order 200, 110, 101, 020, 011, 002.
pub const QUADRATIC: [(Exp, &str); 6] =
    [(XX, "200"), (XY, "110"), (XZ, "101"), (YY, "020"), (YZ, "011"), (ZZ, "002")];

fn e1_normal_terms(trace: bool) -> Terms {
    let uw_u = "c*d^2*(c*d+1)/(c^2*d^2*k+k^3)";
    let vw_u = "d*(2*c^4*d^4+2*c^3*d^3+2*c^2*d^2*k^2+c^2*d^2+k^4)/(k^2*(c*d+1)*(c^2*d^2+k^2))";
    let mut u = vec![t(Y, "1"), t(XZ, uw_u), t(YZ, vw_u)];
    let mut v = vec![t(X, "-1"), t(XZ, "-d*(c*d+1)/(c^2*d^2+k^2)"), t(YZ, "-c*d^2*(c*d+1)/(k*(c^2*d^2+k^2))")];
    if trace {
        u.push(t(X, "sigma"));
        v.push(t(Y, "sigma"));
    }
    let w = vec![
        t(Z, "-d^2/k"),
        t(XY, "d*(c*d+1)/(c^2*d^2+k^2)"),
        t(YY, "c*d^2*(c*d+1)/(k*(c^2*d^2+k^2))"),
    ];
    [u, v, w]
}

/// Coefficients of the normal form at the d=0 off-axis equilibrium in
/// (c, h). `D = sqrt(h^4-4c^2)`, `A = 8c^3h^2-4c^2+h^4`, `B = 4c^2+h^4`.
fn e4_normal_terms() -> Terms {
    let d = "sqrt(h^4-4*c^2)";
    let a = "(8*c^3*h^2-4*c^2+h^4)";
    let b = "(4*c^2+h^4)";
    let c32 = "c*sqrt(c)";
    let s2 = "sqrt(2)";
    let k = "(2*c-h^2)*(2*c+h^2)*(4*c^3+h^2)*(c*h^2-1)";
    let u = vec![
        t(Y, "1"),
        t(YZ, &format!("h*{b}/({s2}*sqrt(c)*(4*c^2-h^4))")),
        t(YY, &format!("-c*{b}^2/((4*c^2-h^4)*{a})")),
        t(XY, &format!("2*{s2}*{c32}*h*(-4*c^3+c*h^4-2*h^2)/({d}*{a})")),
    ];
    let v = vec![
        t(X, "-1"),
        t(ZZ, &format!("h^3/({s2}*sqrt(c)*{d})")),
        t(XY, &format!("-c*{b}^2/{a}^2")),
        t(XZ, &format!("h*{b}/({s2}*sqrt(c)*{a})")),
        t(YZ, &format!("-2*c*(4*c^2*h^2+h^6)/({d}*{a})")),
        t(XX, &format!("2*{s2}*{c32}*h*{k}/({d}*{a}^2)")),
        t(YY, &format!("{s2}*c^2*sqrt(c)*h*{b}^2/({d}*{a}^2)")),
    ];
    let w = vec![
        t(Z, &format!("2*{s2}*{c32}*h/{d}")),
        t(XX, &format!("4*c^3*{k}*{b}/({d}*{a}^3)")),
        t(
            YY,
            &format!("-2*c^3*{b}*(64*c^6*h^2-48*c^5-16*c^4*h^6+40*c^3*h^4-16*c^2*h^2-3*c*h^8+4*h^6)/({d}*{a}^3)"),
        ),
        t(ZZ, &format!("c*h^2*{b}/({d}*{a})")),
        t(YZ, &format!("4*{s2}*{c32}*h*{k}/({d}*{a}^2)")),
        t(
            XY,
            &format!(
                "{s2}*{c32}*{b}*(-16*c^5-8*c^2*(1+4*c^4)*h^2+8*c^3*(1+8*c^4)*h^4+2*(1+4*c^4)*h^6-c*h^8)/(h*{a}^3)"
            ),
        ),
        t(XZ, &format!("c*{b}^2/{a}^2")),
    ];
    [u, v, w]
}

/// The e4 coefficients with `c -> -c`, every coefficient negated. This is the
/// normal form at the other off-axis equilibrium (real eigenvalue `2c < 0`).
fn e5_normal_terms() -> Terms {
    e4_normal_terms().map(|eq| {
        eq.into_iter()
            .map(|(e, s)| (e, format!("-({})", substitute_c(&s))))
            .collect()
    })
}

fn substitute_c(s: &str) -> String {
    let mut out = String::new();
    let chars: Vec<char> = s.chars().collect();
    for (i, &ch) in chars.iter().enumerate() {
        let alnum = |j: usize| chars.get(j).map_or(false, |c: &char| c.is_alphanumeric() || *c == '_');
        let prev = i.checked_sub(1).map_or(false, alnum);
        if ch == 'c' && !prev && !alnum(i + 1) {
            out.push_str("(-c)");
        } else {
            out.push(ch);
        }
    }
    out
}

/// Raw definition of a built-in system.
pub fn definition(name: &str) -> Result<SystemDef> {
    let sd = match name {
        "khaled-original" => def(
            Backend::Exact,
            &[("a", None), ("b", None), ("c", None), ("d", None)],
            ["x", "y", "z"],
            [
                vec![t(X, "-a"), t(Y, "a"), t(YZ, "1")],
                vec![t(X, "b"), t(Y, "c"), t(XZ, "-1")],
                vec![t(Z, "-d"), t(XY, "1"), t(ONE, "1")],
            ],
        ),
        "e1-shifted" => def(
            Backend::Exact,
            &[("c", None), ("d", None), ("k", None)],
            ["x", "y", "z"],
            [
                vec![t(X, "-c"), t(Y, "c+1/d"), t(YZ, "1")],
                vec![t(X, "(1+c*d-c^2*d^2-k^2)/(d*(1+c*d))-1/d"), t(Y, "c"), t(XZ, "-1")],
                vec![t(XY, "1"), t(Z, "-d")],
            ],
        ),
        "e1-normal" => def(Backend::Exact, &[("c", None), ("d", None), ("k", None)], ["u", "v", "w"], e1_normal_terms(false)),
        "e1-normal-trace" => def(
            Backend::Exact,
            &[("c", None), ("d", None), ("k", None), ("sigma", None)],
            ["u", "v", "w"],
            e1_normal_terms(true),
        ),
        "e1-center" => def(
            Backend::Exact,
            &[("d", None)],
            ["u", "v", "w"],
            [
                vec![t(Y, "1"), t(YZ, "d")],
                vec![t(X, "-1"), t(XZ, "-d")],
                vec![t(Z, "-d^2"), t(XY, "d")],
            ],
        ),
        "e1-center-perturbed" => {
            let names = perturbation_names();
            let params: Vec<(&str, Option<&str>)> = names.iter().map(|n| (n.as_str(), None)).collect();
            let mut eqs: Terms = [
                vec![t(Y, "1"), t(YZ, "1")],
                vec![t(X, "-1"), t(XZ, "-1")],
                vec![t(Z, "-1"), t(XY, "1")],
            ];
            for (i, prefix) in ["a", "b", "c"].iter().enumerate() {
                for (e, tag) in QUADRATIC {
                    eqs[i].push((e, format!("{prefix}{tag}")));
                }
            }
            def(Backend::Exact, &params, ["u", "v", "w"], eqs)
        }
        "e4-shifted" => def(
            Backend::Float,
            &[("c", Some("1/4")), ("h", Some("2"))],
            ["x", "y", "z"],
            [
                vec![t(Z, "sqrt(2)*sqrt(c)/h"), t(X, "c"), t(Y, "h^2/2"), t(YZ, "1")],
                vec![t(X, "2*c^2/h^2"), t(Z, "h/(sqrt(2)*sqrt(c))"), t(Y, "c"), t(XZ, "-1")],
                vec![t(X, "sqrt(2)*sqrt(c)/h"), t(Y, "-h/(sqrt(2)*sqrt(c))"), t(XY, "1")],
            ],
        ),
        "e4-normal" => def(Backend::Float, &[("c", Some("1/4")), ("h", Some("2"))], ["u", "v", "w"], e4_normal_terms()),
        "e5-normal" => def(Backend::Float, &[("c", Some("-1")), ("h", Some("2"))], ["u", "v", "w"], e5_normal_terms()),
        other => return Err(Error::SchemaError(format!("unknown built-in system {other}"))),
    };
    Ok(sd)
}

/// Names of the 18 quadratic perturbation coefficients, in parameter order.
pub fn perturbation_names() -> Vec<String> {
    let mut names: Vec<String> =
        ["a", "b", "c"].iter().flat_map(|p| QUADRATIC.iter().map(move |(_, tag)| format!("{p}{tag}"))).collect();
    names.sort();
    names
}

pub fn builtin(name: &str) -> Result<SystemInstance> {
    parse_system(&definition(name)?)
}

pub fn exact(name: &str) -> Result<VectorField3<ParamExpr>> {
    match builtin(name)? {
        SystemInstance::Exact(f) => Ok(f),
        SystemInstance::Float(_) => Err(Error::SchemaError(format!("{name} uses the float backend"))),
    }
}

/// Float instance of a built-in system with parameters overridden by name.
pub fn float_with(name: &str, values: &[(&str, &str)]) -> Result<VectorField3<f64>> {
    let mut sd = definition(name)?;
    sd.backend = Backend::Float;
    let owned: Vec<(String, String)> = values.iter().map(|(n, v)| (n.to_string(), v.to_string())).collect();
    sd.assign(&owned)?;
    match parse_system(&sd)? {
        SystemInstance::Float(f) => Ok(f),
        SystemInstance::Exact(_) => unreachable!("backend forced to float"),
    }
}

/// Linear change of coordinates taking `e1-shifted` to `e1-normal`, with
/// the time scale `k/d`, over the parameters (c, d, k).
pub fn e1_normalizing_transform() -> (Matrix3<ParamExpr>, ParamExpr) {
    let space = ParamSpace::new(&["c", "d", "k"]);
    let e = |s: &str| parse(s).and_then(|a| a.to_exact(&space, &[None, None, None])).expect("valid built-in expression");
    let m = [
        [e("(c*d*k+k)/(c^2*d^2+k^2)"), e("c*d*(c*d+1)/(c^2*d^2+k^2)"), e("0")],
        [e("0"), e("1"), e("0")],
        [e("0"), e("0"), e("1")],
    ];
    (m, e("k/d"))
}

/// Linear change of coordinates taking `e4-shifted` to `e4-normal` at
/// `(c, h)`, with its time scale.
pub fn e4_normalizing_transform(c: f64, h: f64) -> (Matrix3<f64>, f64) {
    let d = (h.powi(4) - 4.0 * c * c).sqrt();
    let a = 8.0 * c.powi(3) * h * h - 4.0 * c * c + h.powi(4);
    let b = 4.0 * c * c + h.powi(4);
    let s2 = 2f64.sqrt();
    let m = [
        [-2.0 * c * (c * h * h - 1.0) * d / a, -c.sqrt() * h * b / (s2 * a), h * h / (2.0 * c)],
        [
            (4.0 * c.powi(3) + h * h) * d / a,
            -s2 * c.powf(1.5) * b / (8.0 * c.powi(3) * h.powi(3) - 4.0 * c * c * h + h.powi(5)),
            1.0,
        ],
        [0.0, 1.0, 0.0],
    ];
    (m, d / (s2 * c.sqrt() * h))
}

/// `b` on the d=0 off-axis Hopf locus `a=-c`, parametrized by `h`: the
/// first sign selects the `z=(b-a+sqrt(D))/2` branch.
pub fn off_axis_b(c: f64, h: f64, upper: bool) -> f64 {
    if upper {
        (4.0 * c * c + 2.0 * c * h * h + h.powi(4)) / (2.0 * h * h)
    } else {
        (-4.0 * c * c + 2.0 * c * h * h - h.powi(4)) / (2.0 * h * h)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_parses() {
        for e in ENTRIES {
            let inst = builtin(e.name).unwrap_or_else(|err| panic!("{}: {err}", e.name));
            assert_eq!(inst.backend(), e.backend, "{}", e.name);
        }
        assert!(builtin("nope").is_err());
    }

    #[test]
    fn c_substitution_respects_identifiers() {
        assert_eq!(substitute_c("c*sqrt(c)+c^2"), "(-c)*sqrt((-c))+(-c)^2");
    }

    #[test]
    fn perturbation_parameter_order() {
        let n = perturbation_names();
        assert_eq!(n.len(), 18);
        assert_eq!(&n[..3], &["a002", "a011", "a020"]);
    }
}
