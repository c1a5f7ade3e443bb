use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::poly::{Monomial, ParamPoly};
use super::{Field, Rational};

const NO_SLOT: u32 = u32::MAX;

/// Shared layout for jets in `nvars` small parameters truncated at total
/// degree `degree`: the monomial list (graded, then lexicographic) and the
/// product table.
pub struct JetSpace {
    nvars: usize,
    degree: usize,
    monos: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, usize>,
    table: Vec<u32>,
}

impl JetSpace {
    pub fn new(nvars: usize, degree: usize) -> Arc<JetSpace> {
        let mut monos: Vec<Vec<u8>> = vec![vec![0; nvars]];
        let mut layer = monos.clone();
        for _ in 1..=degree {
            let mut next = Vec::new();
            for m in &layer {
                // Extend only at or after the last nonzero slot to avoid duplicates.
                let start = m.iter().rposition(|&e| e > 0).unwrap_or(0);
                for v in start..nvars {
                    let mut n = m.clone();
                    n[v] += 1;
                    next.push(n);
                }
            }
            next.sort_by(|a, b| b.cmp(a));
            monos.extend(next.iter().cloned());
            layer = next;
        }
        let index: HashMap<Vec<u8>, usize> = monos.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let n = monos.len();
        let mut table = vec![NO_SLOT; n * n];
        for i in 0..n {
            for j in 0..n {
                let deg: usize = monos[i].iter().chain(monos[j].iter()).map(|&e| e as usize).sum();
                if deg <= degree {
                    let m: Vec<u8> = monos[i].iter().zip(&monos[j]).map(|(a, b)| a + b).collect();
                    table[i * n + j] = index[&m] as u32;
                }
            }
        }
        Arc::new(JetSpace { nvars, degree, monos, index, table })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.monos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monos.is_empty()
    }

    pub fn monomial(&self, i: usize) -> &[u8] {
        &self.monos[i]
    }

    pub fn slot(&self, exps: &[u8]) -> Option<usize> {
        self.index.get(exps).copied()
    }

    fn mono_degree(&self, i: usize) -> usize {
        self.monos[i].iter().map(|&e| e as usize).sum()
    }
}

impl fmt::Debug for JetSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "JetSpace(nvars={}, degree={})", self.nvars, self.degree)
    }
}

/// Truncated polynomial in small parameters with coefficients in a base
/// field. A jet without a space is a plain constant, which lets `zero()` and
/// `one()` exist without knowing the layout.
#[derive(Clone)]
pub struct Jet<T> {
    space: Option<Arc<JetSpace>>,
    c: Vec<T>,
}

impl<T: Field> Jet<T> {
    pub fn constant(v: T) -> Self {
        Jet { space: None, c: vec![v] }
    }

    /// `base + ε_var`
    pub fn variable(space: &Arc<JetSpace>, var: usize, base: T) -> Self {
        let mut j = Jet::lift(space, base);
        let mut e = vec![0u8; space.nvars];
        e[var] = 1;
        if let Some(s) = space.slot(&e) {
            j.c[s] = T::one();
        }
        j
    }

    pub fn lift(space: &Arc<JetSpace>, base: T) -> Self {
        let mut c = vec![T::zero(); space.len()];
        c[0] = base;
        Jet { space: Some(space.clone()), c }
    }

    pub fn from_coeffs(space: &Arc<JetSpace>, c: Vec<T>) -> Self {
        assert_eq!(c.len(), space.len());
        Jet { space: Some(space.clone()), c }
    }

    pub fn space(&self) -> Option<&Arc<JetSpace>> {
        self.space.as_ref()
    }

    pub fn base(&self) -> &T {
        &self.c[0]
    }

    pub fn coeff(&self, exps: &[u8]) -> T {
        match &self.space {
            None => {
                if exps.iter().all(|&e| e == 0) {
                    self.c[0].clone()
                } else {
                    T::zero()
                }
            }
            Some(s) => s.slot(exps).map(|i| self.c[i].clone()).unwrap_or_else(T::zero),
        }
    }

    /// Coefficients of ε_1 … ε_n.
    pub fn linear_part(&self, nvars: usize) -> Vec<T> {
        (0..nvars)
            .map(|v| {
                let mut e = vec![0u8; nvars];
                e[v] = 1;
                self.coeff(&e)
            })
            .collect()
    }

    /// Nonzero terms of total degree exactly `deg`.
    pub fn homogeneous_terms(&self, deg: usize) -> Vec<(Vec<u8>, T)> {
        match &self.space {
            None => {
                if deg == 0 && !self.c[0].is_zero() {
                    vec![(Vec::new(), self.c[0].clone())]
                } else {
                    Vec::new()
                }
            }
            Some(s) => (0..s.len())
                .filter(|&i| s.mono_degree(i) == deg && !self.c[i].is_zero())
                .map(|i| (s.monos[i].clone(), self.c[i].clone()))
                .collect(),
        }
    }

    pub fn map<U: Field, F: Fn(&T) -> U>(&self, f: F) -> Jet<U> {
        Jet { space: self.space.clone(), c: self.c.iter().map(f).collect() }
    }

    fn common_space(&self, other: &Self) -> Option<Arc<JetSpace>> {
        match (&self.space, &other.space) {
            (Some(a), Some(b)) => {
                debug_assert!(Arc::ptr_eq(a, b) || (a.nvars == b.nvars && a.degree == b.degree));
                Some(a.clone())
            }
            (Some(a), None) => Some(a.clone()),
            (None, Some(b)) => Some(b.clone()),
            (None, None) => None,
        }
    }

    fn promoted(&self, space: &Option<Arc<JetSpace>>) -> Vec<T> {
        match (space, &self.space) {
            (Some(s), None) => {
                let mut c = vec![T::zero(); s.len()];
                c[0] = self.c[0].clone();
                c
            }
            _ => self.c.clone(),
        }
    }

    fn scale(&self, k: &T) -> Self {
        Jet { space: self.space.clone(), c: self.c.iter().map(|x| x.mul_ref(k)).collect() }
    }
}

impl Jet<Rational> {
    /// Homogeneous part of degree `deg` as a polynomial in the small
    /// parameters.
    pub fn homogeneous_poly(&self, deg: usize) -> ParamPoly {
        ParamPoly::from_terms(
            self.homogeneous_terms(deg)
                .into_iter()
                .map(|(e, c)| (Monomial::new(e.into_iter().map(u32::from).collect()), c)),
        )
    }
}

impl<T: Field> fmt::Debug for Jet<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.space {
            None => write!(f, "Jet({:?})", self.c[0]),
            Some(s) => {
                write!(f, "Jet[")?;
                let mut first = true;
                for (i, v) in self.c.iter().enumerate() {
                    if v.is_zero() {
                        continue;
                    }
                    if !first {
                        write!(f, ", ")?;
                    }
                    first = false;
                    write!(f, "{:?}:{:?}", s.monos[i], v)?;
                }
                write!(f, "]")
            }
        }
    }
}

impl<T: Field> PartialEq for Jet<T> {
    fn eq(&self, other: &Self) -> bool {
        let s = self.common_space(other);
        self.promoted(&s) == other.promoted(&s)
    }
}

impl<T: Field> Zero for Jet<T> {
    fn zero() -> Self {
        Jet::constant(T::zero())
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }
}

impl<T: Field> One for Jet<T> {
    fn one() -> Self {
        Jet::constant(T::one())
    }
}

impl<T: Field> Neg for Jet<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Jet { space: self.space, c: self.c.into_iter().map(|x| -x).collect() }
    }
}

impl<T: Field> Add for Jet<T> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self.add_assign_ref(&rhs);
        self
    }
}

impl<T: Field> Sub for Jet<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<T: Field> Mul for Jet<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.mul_ref(&rhs)
    }
}

impl<T: Field> Div for Jet<T> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let inv = rhs.try_inv().expect("jet with zero constant term is not invertible");
        self.mul_ref(&inv)
    }
}

impl<T: Field> AddAssign for Jet<T> {
    fn add_assign(&mut self, rhs: Self) {
        self.add_assign_ref(&rhs);
    }
}

impl<T: Field> SubAssign for Jet<T> {
    fn sub_assign(&mut self, rhs: Self) {
        self.add_assign_ref(&(-rhs));
    }
}

impl<T: Field> MulAssign for Jet<T> {
    fn mul_assign(&mut self, rhs: Self) {
        *self = self.mul_ref(&rhs);
    }
}

impl<T: Field> Field for Jet<T> {
    fn from_rational(q: &Rational) -> Self {
        Jet::constant(T::from_rational(q))
    }

    fn try_inv(&self) -> Option<Self> {
        let c0inv = self.c[0].try_inv()?;
        let space = match &self.space {
            None => return Some(Jet::constant(c0inv)),
            Some(s) => s.clone(),
        };
        // x = c0 (1 + e) with e nilpotent of order degree+1.
        let mut e = self.scale(&c0inv);
        e.c[0] = T::zero();
        let mut term = Jet::lift(&space, T::one());
        let mut acc = term.clone();
        for k in 1..=space.degree {
            term = term.mul_ref(&e);
            if k % 2 == 1 {
                acc = acc - term.clone();
            } else {
                acc = acc + term.clone();
            }
        }
        Some(acc.scale(&c0inv))
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        if self.space.is_none() {
            return rhs.scale(&self.c[0]);
        }
        if rhs.space.is_none() {
            return self.scale(&rhs.c[0]);
        }
        let space = self.space.as_ref().unwrap();
        let n = space.len();
        let mut out = vec![T::zero(); n];
        let nz_b: Vec<usize> = (0..n).filter(|&j| !rhs.c[j].is_zero()).collect();
        for i in 0..n {
            let a = &self.c[i];
            if a.is_zero() {
                continue;
            }
            let row = &space.table[i * n..(i + 1) * n];
            for &j in &nz_b {
                let k = row[j];
                if k != NO_SLOT {
                    out[k as usize].mul_add_assign(a, &rhs.c[j]);
                }
            }
        }
        Jet { space: self.space.clone(), c: out }
    }

    fn add_assign_ref(&mut self, rhs: &Self) {
        match (&self.space, &rhs.space) {
            (_, None) => self.c[0].add_assign_ref(&rhs.c[0]),
            (None, Some(s)) => {
                let base = self.c[0].clone();
                self.space = Some(s.clone());
                self.c = rhs.c.clone();
                self.c[0].add_assign_ref(&base);
            }
            (Some(_), Some(_)) => {
                for (a, b) in self.c.iter_mut().zip(&rhs.c) {
                    if !b.is_zero() {
                        a.add_assign_ref(b);
                    }
                }
            }
        }
    }

    fn approx_zero(&self, tol: f64) -> bool {
        self.c.iter().all(|x| x.approx_zero(tol))
    }

    fn is_exact() -> bool {
        T::is_exact()
    }
}
