use std::collections::BTreeMap;
use std::fmt;

use crate::field::{Field, Rational};

pub type Exp3 = [u32; 3];

pub fn exp_degree(e: &Exp3) -> u32 {
    e[0] + e[1] + e[2]
}

/// Polynomial in the three state variables over a coefficient field.
#[derive(Clone, PartialEq)]
pub struct StatePoly<T> {
    terms: BTreeMap<Exp3, T>,
}

impl<T: Field> Default for StatePoly<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Field> StatePoly<T> {
    pub fn zero() -> Self {
        StatePoly { terms: BTreeMap::new() }
    }

    pub fn constant(c: T) -> Self {
        let mut p = Self::zero();
        p.add_term([0, 0, 0], c);
        p
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0, 0, 0];
        e[i] = 1;
        Self::monomial(e, T::one())
    }

    pub fn monomial(e: Exp3, c: T) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Exp3, T)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: Exp3, c: T) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                v.add_assign_ref(&c);
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp3, &T)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &Exp3) -> T {
        self.terms.get(e).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(exp_degree).max().unwrap_or(0)
    }

    /// Smallest total degree present (0 for the zero polynomial).
    pub fn min_degree(&self) -> u32 {
        self.terms.keys().map(exp_degree).min().unwrap_or(0)
    }

    pub fn homogeneous(&self, deg: u32) -> Self {
        StatePoly {
            terms: self.terms.iter().filter(|(e, _)| exp_degree(e) == deg).map(|(e, c)| (*e, c.clone())).collect(),
        }
    }

    /// Terms of total degree at least `deg`.
    pub fn tail(&self, deg: u32) -> Self {
        StatePoly {
            terms: self.terms.iter().filter(|(e, _)| exp_degree(e) >= deg).map(|(e, c)| (*e, c.clone())).collect(),
        }
    }

    pub fn truncate(&self, max_deg: u32) -> Self {
        StatePoly {
            terms: self.terms.iter().filter(|(e, _)| exp_degree(e) <= max_deg).map(|(e, c)| (*e, c.clone())).collect(),
        }
    }

    pub fn map<U: Field, F: Fn(&T) -> U>(&self, f: F) -> StatePoly<U> {
        StatePoly::from_terms(self.terms.iter().map(|(e, c)| (*e, f(c))))
    }

    pub fn try_map<U: Field, E, F: Fn(&T) -> Result<U, E>>(&self, f: F) -> Result<StatePoly<U>, E> {
        let mut out = StatePoly::zero();
        for (e, c) in &self.terms {
            out.add_term(*e, f(c)?);
        }
        Ok(out)
    }

    pub fn scale(&self, k: &T) -> Self {
        StatePoly::from_terms(self.terms.iter().map(|(e, c)| (*e, c.mul_ref(k))))
    }

    pub fn neg(&self) -> Self {
        StatePoly { terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut acc: BTreeMap<Exp3, T> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
                match acc.get_mut(&e) {
                    Some(v) => v.mul_add_assign(ca, cb),
                    None => {
                        acc.insert(e, ca.mul_ref(cb));
                    }
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        StatePoly { terms: acc }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = StatePoly::constant(T::one());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut out = StatePoly::zero();
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut f = *e;
                f[i] -= 1;
                out.add_term(f, c.mul_ref(&T::from_i64(e[i] as i64)));
            }
        }
        out
    }

    pub fn eval(&self, x: &[T; 3]) -> T {
        let mut acc = T::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..3 {
                if e[i] > 0 {
                    t = t.mul_ref(&x[i].pow_u32(e[i]));
                }
            }
            acc.add_assign_ref(&t);
        }
        acc
    }

    /// Substitute a polynomial for each state variable.
    pub fn compose(&self, subs: &[StatePoly<T>; 3]) -> Self {
        let maxd = self.degree();
        let mut powers: Vec<Vec<StatePoly<T>>> = Vec::new();
        for s in subs {
            let mut p = vec![StatePoly::constant(T::one())];
            for k in 1..=maxd as usize {
                let next = p[k - 1].mul(s);
                p.push(next);
            }
            powers.push(p);
        }
        let mut out = StatePoly::zero();
        for (e, c) in &self.terms {
            let t = powers[0][e[0] as usize]
                .mul(&powers[1][e[1] as usize])
                .mul(&powers[2][e[2] as usize])
                .scale(c);
            out = out.add(&t);
        }
        out
    }

    /// Exchange variables `i` and `j`.
    pub fn swap_vars(&self, i: usize, j: usize) -> Self {
        StatePoly::from_terms(self.terms.iter().map(|(e, c)| {
            let mut f = *e;
            f.swap(i, j);
            (f, c.clone())
        }))
    }

    pub fn approx_zero(&self, tol: f64) -> bool {
        self.terms.values().all(|c| c.approx_zero(tol))
    }

    pub fn from_rational(p: &StatePoly<Rational>) -> Self {
        p.map(T::from_rational)
    }
}

impl<T: fmt::Debug> fmt::Debug for StatePoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c:?})*u^{}v^{}w^{}", e[0], e[1], e[2])?;
        }
        Ok(())
    }
}
