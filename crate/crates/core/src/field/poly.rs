use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::{Field, Rational};

/// Exponent vector with trailing zeros trimmed, so the same monomial compares
/// equal regardless of how many parameters are declared.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn new(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial(exps)
    }

    pub fn var(i: usize) -> Self {
        let mut e = vec![0; i + 1];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().max(other.0.len());
        Monomial((0..n).map(|i| self.exp(i) + other.exp(i)).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.0.len() > self.0.len() {
            return None;
        }
        let mut out = self.0.clone();
        for (i, &e) in other.0.iter().enumerate() {
            if out[i] < e {
                return None;
            }
            out[i] -= e;
        }
        Some(Monomial::new(out))
    }

    fn with_exp(&self, i: usize, e: u32) -> Monomial {
        let mut v = self.0.clone();
        if v.len() <= i {
            v.resize(i + 1, 0);
        }
        v[i] = e;
        Monomial::new(v)
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, then the first differing
    /// exponent (larger exponent of an earlier variable is greater).
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        let n = self.0.len().max(other.0.len());
        for i in 0..n {
            match self.exp(i).cmp(&other.exp(i)) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Multivariate polynomial over Q in the declared parameters.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ParamPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl ParamPoly {
    pub fn zero() -> Self {
        ParamPoly { terms: BTreeMap::new() }
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = ParamPoly::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn one() -> Self {
        ParamPoly::constant(Rational::one())
    }

    pub fn var(i: usize) -> Self {
        let mut p = ParamPoly::zero();
        p.add_term(Monomial::var(i), Rational::one());
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(it: I) -> Self {
        let mut p = ParamPoly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                if m.is_one() {
                    Some(c.clone())
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    /// Number of parameters the polynomial actually touches (one past the
    /// largest variable index used).
    pub fn arity(&self) -> usize {
        self.terms.keys().map(|m| m.0.len()).max().unwrap_or(0)
    }

    fn min_var(&self) -> Option<usize> {
        self.terms
            .keys()
            .filter_map(|m| m.0.iter().position(|&e| e > 0))
            .min()
    }

    /// Leading term under graded lexicographic order.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Rational {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> ParamPoly {
        if c.is_zero() {
            return ParamPoly::zero();
        }
        ParamPoly { terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn mul_monomial(&self, mono: &Monomial, c: &Rational) -> ParamPoly {
        if c.is_zero() {
            return ParamPoly::zero();
        }
        ParamPoly { terms: self.terms.iter().map(|(m, v)| (m.mul(mono), v * c)).collect() }
    }

    pub fn neg(&self) -> ParamPoly {
        ParamPoly { terms: self.terms.iter().map(|(m, v)| (m.clone(), -v)).collect() }
    }

    pub fn add(&self, other: &ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &ParamPoly) -> ParamPoly {
        if self.is_zero() || other.is_zero() {
            return ParamPoly::zero();
        }
        if let Some(c) = self.as_constant() {
            return other.scale(&c);
        }
        if let Some(c) = other.as_constant() {
            return self.scale(&c);
        }
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(v) => *v += c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        ParamPoly { terms: acc }
    }

    pub fn pow(&self, n: u32) -> ParamPoly {
        let mut acc = ParamPoly::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self, v: usize) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if e > 0 {
                out.add_term(m.with_exp(v, e - 1), c * Rational::from_integer(e.into()));
            }
        }
        out
    }

    /// Evaluate at a point given in any coefficient field.
    pub fn eval<T: Field>(&self, point: &[T]) -> T {
        let mut acc = T::zero();
        for (m, c) in &self.terms {
            let mut t = T::from_rational(c);
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t.mul_ref(&point[i].pow_u32(e));
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitute polynomials for variables (`subs[i] = None` keeps variable i).
    pub fn substitute(&self, subs: &[Option<ParamPoly>]) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut t = ParamPoly::constant(c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                match subs.get(i).and_then(|s| s.as_ref()) {
                    Some(p) if e > 0 => t = t.mul(&p.pow(e)),
                    _ => {
                        if kept.len() <= i {
                            kept.resize(i + 1, 0);
                        }
                        kept[i] = e;
                    }
                }
            }
            out = out.add(&t.mul_monomial(&Monomial::new(kept), &Rational::one()));
        }
        out
    }

    /// Coefficients as a polynomial in `v`: `result[i]` multiplies `v^i`.
    pub fn coeffs_in(&self, v: usize) -> Vec<ParamPoly> {
        let mut out = vec![ParamPoly::zero(); self.degree_in(v) as usize + 1];
        for (m, c) in &self.terms {
            let e = m.exp(v) as usize;
            out[e].add_term(m.with_exp(v, 0), c.clone());
        }
        out
    }

    /// Scale so the leading coefficient is 1 (zero stays zero).
    pub fn monic(&self) -> ParamPoly {
        let lc = self.leading_coeff();
        if lc.is_zero() || lc.is_one() {
            self.clone()
        } else {
            self.scale(&lc.recip())
        }
    }

    /// Exact quotient `self / other`, `None` if the division leaves a
    /// remainder.
    pub fn div_exact(&self, other: &ParamPoly) -> Option<ParamPoly> {
        if other.is_zero() {
            return None;
        }
        if let Some(c) = other.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let (lm, lc) = other.leading().map(|(m, c)| (m.clone(), c.clone()))?;
        let lc_inv = lc.recip();
        let mut q = ParamPoly::zero();
        let mut r = self.clone();
        while let Some((rm, rc)) = r.leading().map(|(m, c)| (m.clone(), c.clone())) {
            let t = rm.div(&lm)?;
            let tc = rc * &lc_inv;
            r = r.sub(&other.mul_monomial(&t, &tc));
            q.add_term(t, tc);
        }
        Some(q)
    }

    /// Pseudo-remainder of `a` by `b` with respect to variable `v`.
    fn prem(a: &ParamPoly, b: &ParamPoly, v: usize) -> ParamPoly {
        let db = b.degree_in(v);
        let bc = b.coeffs_in(v);
        let lb = bc[db as usize].clone();
        let mut r = a.clone();
        while !r.is_zero() && r.degree_in(v) >= db {
            let dr = r.degree_in(v);
            let lr = r.coeffs_in(v)[dr as usize].clone();
            let shift = Monomial::var(v).pow(dr - db);
            r = r.mul(&lb).sub(&b.mul(&lr).mul_monomial(&shift, &Rational::one()));
        }
        r
    }

    /// gcd of the coefficients of `self` viewed as a polynomial in `v`.
    fn content_in(&self, v: usize) -> ParamPoly {
        let mut g = ParamPoly::zero();
        for c in self.coeffs_in(v) {
            if c.is_zero() {
                continue;
            }
            g = ParamPoly::gcd(&g, &c);
            if g.is_constant() {
                return ParamPoly::one();
            }
        }
        g
    }

    fn primitive_in(&self, v: usize) -> ParamPoly {
        let c = self.content_in(v);
        self.div_exact(&c).expect("content divides").monic()
    }

    /// Monic greatest common divisor, computed by recursion on the content and
    /// primitive parts with a primitive pseudo-remainder sequence.
    pub fn gcd(a: &ParamPoly, b: &ParamPoly) -> ParamPoly {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        if a.is_constant() || b.is_constant() {
            return ParamPoly::one();
        }
        if a == b {
            return a.monic();
        }
        let v = match (a.min_var(), b.min_var()) {
            (Some(x), Some(y)) => x.min(y),
            _ => return ParamPoly::one(),
        };
        let (da, db) = (a.degree_in(v), b.degree_in(v));
        if da == 0 {
            return ParamPoly::gcd(a, &b.content_in(v));
        }
        if db == 0 {
            return ParamPoly::gcd(&a.content_in(v), b);
        }
        let ca = a.content_in(v);
        let cb = b.content_in(v);
        let gc = ParamPoly::gcd(&ca, &cb);
        let mut p = a.div_exact(&ca).expect("content divides");
        let mut q = b.div_exact(&cb).expect("content divides");
        if p.degree_in(v) < q.degree_in(v) {
            std::mem::swap(&mut p, &mut q);
        }
        loop {
            let r = ParamPoly::prem(&p, &q, v);
            if r.is_zero() {
                break;
            }
            if r.degree_in(v) == 0 {
                q = ParamPoly::one();
                break;
            }
            p = q;
            q = r.primitive_in(v);
        }
        let q = if q.is_constant() { q } else { q.primitive_in(v) };
        gc.mul(&q).monic()
    }

    /// Square root when `self` is the square of a polynomial, normalized to a
    /// positive leading coefficient.
    pub fn sqrt_exact(&self) -> Option<ParamPoly> {
        use super::ExactSqrt;
        if self.is_zero() {
            return Some(ParamPoly::zero());
        }
        let (lm, lc) = self.leading()?;
        if lm.0.iter().any(|e| e % 2 == 1) {
            return None;
        }
        let root_m = Monomial::new(lm.0.iter().map(|e| e / 2).collect());
        let root_c = lc.sqrt_exact()?;
        let two_lead_inv = (root_c.clone() * Rational::from_integer(2.into())).recip();
        let mut s = ParamPoly::zero();
        s.add_term(root_m.clone(), root_c);
        // Peel off terms from the top: r = self - s^2, next term lt(r)/(2 lt(s)).
        for _ in 0..=self.num_terms() * 4 + 4 {
            let r = self.sub(&s.mul(&s));
            if r.is_zero() {
                return Some(s);
            }
            let (rm, rc) = r.leading()?;
            let m = rm.div(&root_m)?;
            if m >= root_m {
                return None;
            }
            s.add_term(m, rc * &two_lead_inv);
        }
        None
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { p: self, names }
    }
}

impl Monomial {
    pub fn pow(&self, n: u32) -> Monomial {
        Monomial::new(self.0.iter().map(|e| e * n).collect())
    }
}

pub struct PolyDisplay<'a> {
    p: &'a ParamPoly,
    names: &'a [String],
}

pub(crate) fn fmt_monomial(m: &Monomial, names: &[String], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.exps().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        match names.get(i) {
            Some(n) => write!(f, "{n}")?,
            None => write!(f, "p{i}")?,
        }
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.p.terms.iter().rev() {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            if m.is_one() {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    if a.is_integer() {
                        write!(f, "{a}*")?;
                    } else {
                        write!(f, "({a})*")?;
                    }
                }
                fmt_monomial(m, self.names, f)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display(&[]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }
    fn x() -> ParamPoly {
        ParamPoly::var(0)
    }
    fn y() -> ParamPoly {
        ParamPoly::var(1)
    }
    fn z() -> ParamPoly {
        ParamPoly::var(2)
    }

    #[test]
    fn grlex_order() {
        let a = Monomial::new(vec![1, 0]);
        let b = Monomial::new(vec![0, 1]);
        let c = Monomial::new(vec![0, 2]);
        assert!(a > b);
        assert!(c > a);
        assert!(Monomial::one() < b);
        assert_eq!(Monomial::new(vec![1, 0, 0]), Monomial::var(0));
    }

    #[test]
    fn gcd_univariate() {
        // (x-1)(x+2), (x-1)(x+3)
        let a = x().sub(&ParamPoly::one()).mul(&x().add(&ParamPoly::constant(q(2))));
        let b = x().sub(&ParamPoly::one()).mul(&x().add(&ParamPoly::constant(q(3))));
        assert_eq!(ParamPoly::gcd(&a, &b), x().sub(&ParamPoly::one()));
    }

    #[test]
    fn gcd_multivariate_shared_factor() {
        let f = x().mul(&y()).add(&z()); // xy + z
        let g1 = x().add(&y().pow(2));
        let g2 = z().sub(&x()).add(&ParamPoly::constant(q(5)));
        let a = f.mul(&g1).scale(&q(6));
        let b = f.mul(&f).mul(&g2).scale(&q(-4));
        assert_eq!(ParamPoly::gcd(&a, &b), f);
    }

    #[test]
    fn gcd_coprime_is_one() {
        let a = x().mul(&x()).add(&y().mul(&y())).add(&ParamPoly::one());
        let b = x().sub(&y());
        assert_eq!(ParamPoly::gcd(&a, &b), ParamPoly::one());
    }

    #[test]
    fn gcd_content_only() {
        // y*(x+1) and y^2*(x+2): gcd y
        let a = y().mul(&x().add(&ParamPoly::one()));
        let b = y().pow(2).mul(&x().add(&ParamPoly::constant(q(2))));
        assert_eq!(ParamPoly::gcd(&a, &b), y());
    }

    #[test]
    fn exact_division() {
        let a = x().add(&y());
        let b = x().sub(&y().scale(&q(3)));
        let p = a.mul(&b);
        assert_eq!(p.div_exact(&a), Some(b.clone()));
        assert_eq!(p.add(&ParamPoly::one()).div_exact(&a), None);
    }

    #[test]
    fn derivative_and_eval() {
        let p = x().pow(3).mul(&y()).add(&y().scale(&q(2)));
        assert_eq!(p.derivative(0), x().pow(2).mul(&y()).scale(&q(3)));
        assert_eq!(p.eval(&[q(2), q(5)]), q(50));
    }

    #[test]
    fn perfect_square_root() {
        let s = x().scale(&q(2)).add(&y()).sub(&ParamPoly::constant(q(3)));
        let p = s.mul(&s);
        let r = p.sqrt_exact().unwrap();
        assert_eq!(r.mul(&r), p);
        assert!(x().mul(&y()).add(&ParamPoly::one()).sqrt_exact().is_none());
    }

    #[test]
    fn substitution() {
        // x^2 y with x -> y + 1
        let p = x().pow(2).mul(&y());
        let s = p.substitute(&[Some(y().add(&ParamPoly::one())), None]);
        assert_eq!(s, y().add(&ParamPoly::one()).pow(2).mul(&y()));
    }
}
