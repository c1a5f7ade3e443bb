use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use super::poly::ParamPoly;
use super::{ExactSqrt, Field, Ordered, Rational};
use crate::error::{Error, Result};

/// Element of Q(p1, ..., pn): a reduced quotient of parameter polynomials.
///
/// The representation is canonical: numerator and denominator are coprime
/// and the denominator has leading coefficient 1 under graded lex order, so
/// structural equality is field equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ParamExpr {
    num: ParamPoly,
    den: ParamPoly,
}

impl ParamExpr {
    pub fn new(num: ParamPoly, den: ParamPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: ParamPoly, den: ParamPoly) -> Self {
        if num.is_zero() {
            return ParamExpr { num, den: ParamPoly::one() };
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = ParamPoly::gcd(&num, &den);
            if g.is_constant() {
                (num, den)
            } else {
                (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
            }
        };
        let lc = den.leading_coeff();
        if lc.is_one() {
            ParamExpr { num, den }
        } else {
            let inv = lc.recip();
            ParamExpr { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn from_poly(p: ParamPoly) -> Self {
        ParamExpr { num: p, den: ParamPoly::one() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(ParamPoly::constant(c))
    }

    pub fn int(n: i64) -> Self {
        Self::constant(Rational::from_integer(n.into()))
    }

    pub fn var(i: usize) -> Self {
        Self::from_poly(ParamPoly::var(i))
    }

    pub fn numer(&self) -> &ParamPoly {
        &self.num
    }

    pub fn denom(&self) -> &ParamPoly {
        &self.den
    }

    pub fn as_constant(&self) -> Option<Rational> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(n / d)
    }

    pub fn as_poly(&self) -> Option<&ParamPoly> {
        if self.den.as_constant().map_or(false, |c| c.is_one()) {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn checked_div(&self, other: &ParamExpr) -> Result<ParamExpr> {
        if other.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(self.num.mul(&other.den), self.den.mul(&other.num)))
    }

    /// Value at a point; every parameter used must be covered.
    pub fn eval<T: Field>(&self, point: &[T]) -> Result<T> {
        let d = self.den.eval(point);
        let inv = d.try_inv().ok_or(Error::PoleAtPoint)?;
        Ok(self.num.eval(point).mul_ref(&inv))
    }

    pub fn eval_rational(&self, point: &[Rational]) -> Result<Rational> {
        self.eval(point)
    }

    pub fn eval_f64(&self, point: &[f64]) -> Result<f64> {
        // Exact evaluation at the rational image of the doubles, then one
        // rounding, so the result is correctly rounded.
        let q: Vec<Rational> = point
            .iter()
            .map(|&x| Rational::from_float(x).ok_or(Error::PoleAtPoint))
            .collect::<Result<_>>()?;
        let v = self.eval(&q)?;
        Ok(f64::from_rational(&v))
    }

    /// Partial derivative by the quotient rule.
    pub fn differentiate(&self, v: usize) -> ParamExpr {
        let n = self.num.derivative(v).mul(&self.den).sub(&self.num.mul(&self.den.derivative(v)));
        Self::normalized(n, self.den.mul(&self.den))
    }

    /// Substitute rational functions for some parameters.
    pub fn substitute(&self, subs: &[Option<ParamExpr>]) -> Result<ParamExpr> {
        let sub_poly = |p: &ParamPoly| -> ParamExpr {
            let mut acc = ParamExpr::zero();
            for (m, c) in p.terms() {
                let mut t = ParamExpr::constant(c.clone());
                for (i, &e) in m.exps().iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    let base = match subs.get(i).and_then(|s| s.as_ref()) {
                        Some(s) => s.clone(),
                        None => ParamExpr::var(i),
                    };
                    t = t * base.pow_u32(e);
                }
                acc += t;
            }
            acc
        };
        sub_poly(&self.num).checked_div(&sub_poly(&self.den)).map_err(|_| Error::PoleAtPoint)
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> ExprDisplay<'a> {
        ExprDisplay { e: self, names }
    }
}

pub struct ExprDisplay<'a> {
    e: &'a ParamExpr,
    names: &'a [String],
}

impl fmt::Display for ExprDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.e.num.display(self.names).to_string();
        if let Some(d) = self.e.den.as_constant() {
            if d.is_one() {
                return write!(f, "{n}");
            }
        }
        let d = self.e.den.display(self.names).to_string();
        let wrap = |s: &str| -> String {
            if s.contains(' ') || s.contains('*') || s.contains('/') {
                format!("({s})")
            } else {
                s.to_string()
            }
        };
        write!(f, "{}/{}", wrap(&n), wrap(&d))
    }
}

impl fmt::Debug for ParamExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display(&[]))
    }
}

impl Zero for ParamExpr {
    fn zero() -> Self {
        ParamExpr { num: ParamPoly::zero(), den: ParamPoly::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for ParamExpr {
    fn one() -> Self {
        ParamExpr { num: ParamPoly::one(), den: ParamPoly::one() }
    }
}

impl Neg for ParamExpr {
    type Output = ParamExpr;
    fn neg(self) -> ParamExpr {
        ParamExpr { num: self.num.neg(), den: self.den }
    }
}

fn add_impl(a: &ParamExpr, b: &ParamExpr, sign: bool) -> ParamExpr {
    let bn = if sign { b.num.clone() } else { b.num.neg() };
    if a.num.is_zero() {
        return ParamExpr { num: bn, den: b.den.clone() };
    }
    if b.num.is_zero() {
        return a.clone();
    }
    if a.den == b.den {
        return ParamExpr::normalized(a.num.add(&bn), a.den.clone());
    }
    if a.den.is_constant() && b.den.is_constant() {
        let da = a.den.as_constant().unwrap();
        let db = b.den.as_constant().unwrap();
        return ParamExpr::normalized(a.num.scale(&db).add(&bn.scale(&da)), ParamPoly::constant(da * db));
    }
    // a/g·A + b/g·B with g = gcd of denominators keeps sizes down.
    let g = ParamPoly::gcd(&a.den, &b.den);
    let ad = a.den.div_exact(&g).expect("gcd divides");
    let bd = b.den.div_exact(&g).expect("gcd divides");
    let num = a.num.mul(&bd).add(&bn.mul(&ad));
    ParamExpr::normalized(num, ad.mul(&b.den))
}

fn mul_impl(a: &ParamExpr, b: &ParamExpr) -> ParamExpr {
    if a.num.is_zero() || b.num.is_zero() {
        return ParamExpr::zero();
    }
    if a.den.is_constant() && b.den.is_constant() {
        return ParamExpr::normalized(a.num.mul(&b.num), a.den.mul(&b.den));
    }
    // Cross-cancel before multiplying.
    let g1 = ParamPoly::gcd(&a.num, &b.den);
    let g2 = ParamPoly::gcd(&b.num, &a.den);
    let an = a.num.div_exact(&g1).expect("gcd divides");
    let bd = b.den.div_exact(&g1).expect("gcd divides");
    let bn = b.num.div_exact(&g2).expect("gcd divides");
    let ad = a.den.div_exact(&g2).expect("gcd divides");
    let num = an.mul(&bn);
    let den = ad.mul(&bd);
    let lc = den.leading_coeff().recip();
    ParamExpr { num: num.scale(&lc), den: den.scale(&lc) }
}

impl Add for ParamExpr {
    type Output = ParamExpr;
    fn add(self, rhs: ParamExpr) -> ParamExpr {
        add_impl(&self, &rhs, true)
    }
}

impl Sub for ParamExpr {
    type Output = ParamExpr;
    fn sub(self, rhs: ParamExpr) -> ParamExpr {
        add_impl(&self, &rhs, false)
    }
}

impl Mul for ParamExpr {
    type Output = ParamExpr;
    fn mul(self, rhs: ParamExpr) -> ParamExpr {
        mul_impl(&self, &rhs)
    }
}

impl Div for ParamExpr {
    type Output = ParamExpr;
    /// Panics on division by zero; use [`ParamExpr::checked_div`] for a
    /// fallible version.
    fn div(self, rhs: ParamExpr) -> ParamExpr {
        self.checked_div(&rhs).expect("division by zero ParamExpr")
    }
}

impl AddAssign for ParamExpr {
    fn add_assign(&mut self, rhs: ParamExpr) {
        *self = add_impl(self, &rhs, true);
    }
}

impl SubAssign for ParamExpr {
    fn sub_assign(&mut self, rhs: ParamExpr) {
        *self = add_impl(self, &rhs, false);
    }
}

impl MulAssign for ParamExpr {
    fn mul_assign(&mut self, rhs: ParamExpr) {
        *self = mul_impl(self, &rhs);
    }
}

impl Field for ParamExpr {
    fn from_rational(q: &Rational) -> Self {
        ParamExpr::constant(q.clone())
    }
    fn try_inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            None
        } else {
            Some(ParamExpr::normalized(self.den.clone(), self.num.clone()))
        }
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        mul_impl(self, rhs)
    }
    fn add_assign_ref(&mut self, rhs: &Self) {
        *self = add_impl(self, rhs, true);
    }
}

impl Ordered for ParamExpr {
    /// Decidable only for constants.
    fn sign(&self) -> Option<std::cmp::Ordering> {
        self.as_constant().and_then(|c| c.sign())
    }
    fn to_f64(&self) -> Option<f64> {
        self.as_constant().and_then(|c| Ordered::to_f64(&c))
    }
}

impl ExactSqrt for ParamExpr {
    fn sqrt_exact(&self) -> Option<Self> {
        if let Some(c) = self.as_constant() {
            return c.sqrt_exact().map(ParamExpr::constant);
        }
        // The denominator is monic, so a square numerator needs a positive
        // leading coefficient.
        let n = self.num.sqrt_exact()?;
        let d = self.den.sqrt_exact()?;
        Some(ParamExpr::normalized(n, d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k() -> ParamExpr {
        ParamExpr::var(0)
    }
    fn int(n: i64) -> ParamExpr {
        ParamExpr::int(n)
    }

    #[test]
    fn cancels_common_factor() {
        let e = ParamExpr::new(
            (k() * k() - int(1)).as_poly().unwrap().clone(),
            (k() - int(1)).as_poly().unwrap().clone(),
        )
        .unwrap();
        assert_eq!(e, k() + int(1));
    }

    #[test]
    fn sign_normalization() {
        let e = (int(2) * k()).checked_div(&int(-2)).unwrap();
        assert_eq!(e, -k());
        assert!(e.denom().as_constant().unwrap().is_one());
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(ParamExpr::new(ParamPoly::one(), ParamPoly::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn quotient_rule() {
        let d = ParamExpr::var(1);
        let inv = int(1).checked_div(&d).unwrap();
        assert_eq!(inv.differentiate(1), -(int(1).checked_div(&(d.clone() * d)).unwrap()));
        assert!(int(5).differentiate(0).is_zero());
    }

    #[test]
    fn pole_detected() {
        let c = ParamExpr::var(0);
        let d = ParamExpr::var(1);
        let e = int(1).checked_div(&(int(1) + c * d)).unwrap();
        let q = |n: i64| Rational::from_integer(n.into());
        assert_eq!(e.eval(&[q(1), q(-1)]), Err(Error::PoleAtPoint));
        assert_eq!(e.eval(&[q(1), q(1)]).unwrap(), Rational::new(1.into(), 2.into()));
    }

    #[test]
    fn square_roots() {
        let d = ParamExpr::var(1);
        let e = (k() * k()).checked_div(&(d.clone() * d.clone())).unwrap();
        let r = e.sqrt_exact().unwrap();
        assert_eq!(r.clone() * r, e);
    }
}
