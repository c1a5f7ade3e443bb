//! JSON system definitions.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{StatePoly, VectorField3};
use crate::error::{Error, Result};
use crate::field::{rational_to_f64, ParamExpr, ParamSpace, Rational};
use crate::grammar::{parse, parse_rational_expr};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    #[default]
    Exact,
    Float,
}

/// A parameter value: a JSON number, a grammar string, or `null` (symbolic).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamValue {
    Number(serde_json::Number),
    Expr(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EquationTerm {
    pub exp: [u32; 3],
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SystemDef {
    #[serde(default)]
    pub backend: Backend,
    #[serde(default)]
    pub params: BTreeMap<String, Option<ParamValue>>,
    #[serde(default = "default_state_vars")]
    pub state_vars: [String; 3],
    pub equations: Vec<Vec<EquationTerm>>,
}

fn default_state_vars() -> [String; 3] {
    ["u".into(), "v".into(), "w".into()]
}

#[derive(Clone, Debug, PartialEq)]
pub enum SystemInstance {
    Exact(VectorField3<ParamExpr>),
    Float(VectorField3<f64>),
}

impl SystemInstance {
    pub fn backend(&self) -> Backend {
        match self {
            SystemInstance::Exact(_) => Backend::Exact,
            SystemInstance::Float(_) => Backend::Float,
        }
    }
}

fn schema(msg: impl Into<String>) -> Error {
    Error::SchemaError(msg.into())
}

impl ParamValue {
    fn rational(&self) -> Result<Rational> {
        match self {
            ParamValue::Number(n) => crate::field::parse_rational(&n.to_string())
                .ok_or_else(|| schema(format!("parameter value {n} is not a finite decimal"))),
            ParamValue::Expr(s) => parse_rational_expr(s),
        }
    }

    fn float(&self) -> Result<f64> {
        match self {
            ParamValue::Number(n) => n.as_f64().ok_or_else(|| schema(format!("bad number {n}"))),
            ParamValue::Expr(s) => parse(s)?.to_f64(&|_| None),
        }
    }
}

impl SystemDef {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| schema(e.to_string()))
    }

    pub fn param_space(&self) -> ParamSpace {
        let names: Vec<&str> = self.params.keys().map(String::as_str).collect();
        ParamSpace::new(&names)
    }

    /// Override (or assign) parameter values by name.
    pub fn assign(&mut self, values: &[(String, String)]) -> Result<()> {
        for (name, value) in values {
            let slot = self.params.get_mut(name).ok_or_else(|| schema(format!("unknown parameter {name}")))?;
            *slot = Some(ParamValue::Expr(value.clone()));
        }
        Ok(())
    }

    fn check_shape(&self) -> Result<()> {
        if self.equations.len() != 3 {
            return Err(schema(format!("expected 3 equations, got {}", self.equations.len())));
        }
        if self.equations.iter().all(Vec::is_empty) {
            return Err(schema("all equations are empty"));
        }
        Ok(())
    }
}

/// Build the vector field described by `def`.
pub fn parse_system(def: &SystemDef) -> Result<SystemInstance> {
    def.check_shape()?;
    let space = def.param_space();
    match def.backend {
        Backend::Exact => {
            let values: Vec<Option<Rational>> =
                def.params.values().map(|v| v.as_ref().map(ParamValue::rational).transpose()).collect::<Result<_>>()?;
            let comps = build(def, |s| parse(s)?.to_exact(&space, &values))?;
            Ok(SystemInstance::Exact(VectorField3::new(comps).with_params(space).with_state_vars(def.state_vars.clone())))
        }
        Backend::Float => {
            let mut values = BTreeMap::new();
            for (name, v) in &def.params {
                let v = v.as_ref().ok_or_else(|| schema(format!("float backend requires a value for {name}")))?;
                values.insert(name.clone(), v.float()?);
            }
            let comps = build(def, |s| parse(s)?.to_f64(&|n| values.get(n).copied()))?;
            Ok(SystemInstance::Float(VectorField3::new(comps).with_params(space).with_state_vars(def.state_vars.clone())))
        }
    }
}

fn build<T: crate::field::Field>(def: &SystemDef, coeff: impl Fn(&str) -> Result<T>) -> Result<[StatePoly<T>; 3]> {
    let mut comps: [StatePoly<T>; 3] = Default::default();
    for (i, eq) in def.equations.iter().enumerate() {
        for term in eq {
            comps[i].add_term(term.exp, coeff(&term.coeff)?);
        }
    }
    Ok(comps)
}

/// Replace every symbolic coefficient by its value at a full rational
/// parameter assignment.
pub fn specialize(f: &VectorField3<ParamExpr>, values: &[Rational]) -> Result<VectorField3<Rational>> {
    f.try_map(|c| c.eval(values))
}

pub fn to_float(f: &VectorField3<Rational>) -> Result<VectorField3<f64>> {
    f.try_map(|q| rational_to_f64(q).ok_or_else(|| schema(format!("coefficient {q} is out of double range"))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::int;

    const LORENZ_LIKE: &str = r#"{
        "backend": "exact",
        "params": {"a": null, "b": 2},
        "state_vars": ["x", "y", "z"],
        "equations": [
            [{"exp": [1,0,0], "coeff": "-a"}, {"exp": [0,1,0], "coeff": "a"}],
            [{"exp": [1,0,0], "coeff": "b"}, {"exp": [1,0,1], "coeff": "-1"}],
            [{"exp": [1,1,0], "coeff": "1"}]
        ]
    }"#;

    #[test]
    fn exact_parse_keeps_free_parameters() {
        let def = SystemDef::from_json(LORENZ_LIKE).unwrap();
        let SystemInstance::Exact(f) = parse_system(&def).unwrap() else { panic!() };
        assert_eq!(f.comps[1].coeff(&[1, 0, 0]), ParamExpr::int(2));
        assert_eq!(f.comps[0].coeff(&[0, 1, 0]), ParamExpr::var(0));
        let g = specialize(&f, &[int(3), int(2)]).unwrap();
        assert_eq!(g.comps[0].coeff(&[1, 0, 0]), int(-3));
    }

    #[test]
    fn schema_errors() {
        let empty = r#"{"equations": [[], [], []]}"#;
        assert!(matches!(parse_system(&SystemDef::from_json(empty).unwrap()), Err(Error::SchemaError(_))));
        let radical = r#"{"params": {"c": 4}, "equations": [[{"exp":[1,0,0],"coeff":"sqrt(c)"}], [], []]}"#;
        let mut def = SystemDef::from_json(radical).unwrap();
        assert!(matches!(parse_system(&def), Err(Error::SchemaError(_))));
        def.backend = Backend::Float;
        let SystemInstance::Float(f) = parse_system(&def).unwrap() else { panic!() };
        assert_eq!(f.comps[0].coeff(&[1, 0, 0]), 2.0);
        let unknown = r#"{"equations": [[{"exp":[1,0,0],"coeff":"q"}], [], []]}"#;
        assert!(parse_system(&SystemDef::from_json(unknown).unwrap()).is_err());
        assert!(SystemDef::from_json(r#"{"equations": [[{"exp":[1,0],"coeff":"1"}], [], []]}"#).is_err());
    }
}
