//! Systems, points and precision from command-line arguments.

use std::path::Path;

use centerfocus::catalog;
use centerfocus::equilibria::find_equilibrium;
use centerfocus::field::{rational_to_f64, Field, ParamExpr, Rational};
use centerfocus::grammar::parse;
use centerfocus::polysys::{parse_system, specialize, to_float, Backend, SystemDef, SystemInstance, VectorField3};
use centerfocus::simulate::convert_field;
use centerfocus::{Error, Extended, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Precision {
    Double,
    Extended,
}

impl Precision {
    pub fn from_env() -> Result<Self> {
        match std::env::var("HF_PRECISION") {
            Err(_) => Ok(Precision::Double),
            Ok(v) => match v.trim().to_ascii_lowercase().as_str() {
                "" | "double" => Ok(Precision::Double),
                "extended" => Ok(Precision::Extended),
                other => Err(Error::InvalidArgument(format!("HF_PRECISION must be double or extended, got {other:?}"))),
            },
        }
    }
}

/// `name=value` pairs separated by commas.
pub fn parse_assignments(s: &str) -> Result<Vec<(String, String)>> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            let (n, v) = p
                .split_once('=')
                .ok_or_else(|| Error::InvalidArgument(format!("expected name=value, got {p:?}")))?;
            Ok((n.trim().to_string(), v.trim().to_string()))
        })
        .collect()
}

/// Built-in name or path to a JSON definition, with parameters assigned.
pub fn definition(system: &str, params: &[(String, String)]) -> Result<SystemDef> {
    let mut def = match catalog::definition(system) {
        Ok(d) => d,
        Err(_) if Path::new(system).is_file() => SystemDef::from_json(&std::fs::read_to_string(system)?)?,
        Err(_) => return Err(Error::InvalidArgument(format!("{system} is neither a built-in system nor a file"))),
    };
    def.assign(params)?;
    Ok(def)
}

pub fn instance(system: &str, params: &[(String, String)]) -> Result<SystemInstance> {
    parse_system(&definition(system, params)?)
}

/// Fully numeric field: every parameter must carry a value.
pub fn float_field(system: &str, params: &[(String, String)]) -> Result<VectorField3<f64>> {
    match instance(system, params)? {
        SystemInstance::Float(f) => Ok(f),
        SystemInstance::Exact(f) => to_float(&constants(&f)?),
    }
}

pub fn extended_field(system: &str, params: &[(String, String)]) -> Result<VectorField3<Extended>> {
    match instance(system, params)? {
        SystemInstance::Float(f) => Ok(convert_field(&f)),
        SystemInstance::Exact(f) => Ok(constants(&f)?.map(Extended::from_rational)),
    }
}

/// Coefficients of an exact field with no free parameters left.
pub fn constants(f: &VectorField3<ParamExpr>) -> Result<VectorField3<Rational>> {
    let free: Vec<&String> = f.params.names().iter().enumerate().filter(|(i, _)| uses_param(f, *i)).map(|(_, n)| n).collect();
    if !free.is_empty() {
        return Err(Error::InvalidArgument(format!("parameters without values: {free:?}")));
    }
    specialize(f, &vec![Rational::from_integer(0.into()); f.params.len()])
}

fn uses_param(f: &VectorField3<ParamExpr>, i: usize) -> bool {
    f.comps.iter().any(|p| p.terms().any(|(_, c)| !c.differentiate(i).numer().is_zero()))
}

/// A point given as `E1`, `E2+`, ... on the original four-wing system, or
/// as three comma-separated expressions.
pub enum Point {
    Label(String),
    Coords([String; 3]),
}

pub fn parse_point(s: &str) -> Result<Point> {
    let s = s.trim();
    if s.starts_with(['E', 'e']) && !s.contains(',') {
        return Ok(Point::Label(s.to_ascii_uppercase()));
    }
    let parts: Vec<String> = s.split(',').map(|p| p.trim().to_string()).collect();
    let coords: [String; 3] =
        parts.try_into().map_err(|_| Error::InvalidArgument(format!("a point needs three coordinates, got {s:?}")))?;
    Ok(Point::Coords(coords))
}

/// Float values of the four-wing parameters `a, b, c, d` from assignments.
fn khaled_values(params: &[(String, String)]) -> Result<[f64; 4]> {
    let mut out = [f64::NAN; 4];
    for (i, name) in ["a", "b", "c", "d"].iter().enumerate() {
        let (_, v) = params
            .iter()
            .find(|(n, _)| n == name)
            .ok_or_else(|| Error::InvalidArgument(format!("equilibrium labels need a value for {name}")))?;
        out[i] = parse(v)?.to_f64(&|_| None)?;
    }
    Ok(out)
}

/// Exact coordinates in the field's parameter space.
pub fn exact_point(f: &VectorField3<ParamExpr>, point: &Point, params: &[(String, String)]) -> Result<[ParamExpr; 3]> {
    match point {
        Point::Label(l) if l == "E1" => {
            let i = f.params.index("d").ok_or_else(|| Error::InvalidArgument("E1 needs a parameter d".into()))?;
            let d = match params.iter().find(|(n, _)| n == "d") {
                Some((_, v)) => ParamExpr::constant(centerfocus::grammar::parse_rational_expr(v)?),
                None => ParamExpr::var(i),
            };
            Ok([ParamExpr::int(0), ParamExpr::int(0), ParamExpr::int(1).checked_div(&d)?])
        }
        Point::Label(l) => Err(Error::InvalidArgument(format!("{l} has irrational coordinates; use HF_PRECISION or a float system"))),
        Point::Coords(c) => {
            let values = vec![None; f.params.len()];
            let mut out = [ParamExpr::int(0), ParamExpr::int(0), ParamExpr::int(0)];
            for (o, s) in out.iter_mut().zip(c) {
                *o = parse(s)?.to_exact(&f.params, &values)?;
            }
            Ok(out)
        }
    }
}

pub fn float_point(point: &Point, params: &[(String, String)]) -> Result<[f64; 3]> {
    match point {
        Point::Label(l) => {
            let [a, b, c, d] = khaled_values(params)?;
            find_equilibrium(l, a, b, c, d)
        }
        Point::Coords(c) => {
            let mut out = [0.0; 3];
            for (o, s) in out.iter_mut().zip(c) {
                *o = parse(s)?.to_f64(&|_| None)?;
            }
            Ok(out)
        }
    }
}

/// Comma-separated floats.
pub fn parse_floats(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|p| {
            let p = p.trim();
            p.parse::<f64>()
                .ok()
                .or_else(|| centerfocus::grammar::parse_rational_expr(p).ok().and_then(|q| rational_to_f64(&q)))
                .ok_or_else(|| Error::InvalidArgument(format!("not a number: {p:?}")))
        })
        .collect()
}

pub fn backend_name(b: Backend) -> &'static str {
    match b {
        Backend::Exact => "exact",
        Backend::Float => "float",
    }
}
