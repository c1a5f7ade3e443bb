//! Exact arithmetic: rationals, parameter polynomials, their fraction field,
//! the Gaussian extension and truncated jets.

mod expr;
mod gauss;
mod jet;
mod poly;
mod scalar;

pub use expr::{ExprDisplay, ParamExpr};
pub use gauss::Gauss;
pub use jet::{Jet, JetSpace};
pub use poly::{Monomial, ParamPoly, PolyDisplay};
pub use scalar::{rational_to_f64, ExactSqrt, Field, Ordered};

use num_bigint::BigInt;

pub type Rational = num_rational::BigRational;
pub type GaussExpr = Gauss<ParamExpr>;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parse `"p"`, `"p/q"` or a decimal such as `"-0.125"` into an exact rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d == BigInt::from(0) {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        let neg = ip.starts_with('-');
        let ip = ip.trim_start_matches(['-', '+']);
        if !fp.chars().all(|c| c.is_ascii_digit()) || !ip.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let digits = format!("{}{}", if ip.is_empty() { "0" } else { ip }, fp);
        let n: BigInt = digits.parse().ok()?;
        let d = BigInt::from(10).pow(fp.len() as u32);
        let q = Rational::new(n, d);
        return Some(if neg { -q } else { q });
    }
    s.parse::<BigInt>().ok().map(Rational::from_integer)
}

/// Declared parameter names; index order is the variable order of every
/// [`ParamPoly`] built against it.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ParamSpace {
    names: Vec<String>,
}

impl ParamSpace {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        ParamSpace { names: names.iter().map(|s| s.as_ref().to_string()).collect() }
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn var(&self, name: &str) -> Option<ParamExpr> {
        self.index(name).map(ParamExpr::var)
    }
}
