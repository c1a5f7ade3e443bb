use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use super::{Field, Rational};

/// `re + i·im` over a real field. Conjugation fixes the base field, so every
/// parameter is treated as real.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Gauss<T> {
    pub re: T,
    pub im: T,
}

impl<T: Field> Gauss<T> {
    pub fn new(re: T, im: T) -> Self {
        Gauss { re, im }
    }

    pub fn real(re: T) -> Self {
        Gauss { re, im: T::zero() }
    }

    pub fn i() -> Self {
        Gauss { re: T::zero(), im: T::one() }
    }

    pub fn conj(&self) -> Self {
        Gauss { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn norm_sqr(&self) -> T {
        self.re.mul_ref(&self.re) + self.im.mul_ref(&self.im)
    }

    pub fn scale(&self, k: &T) -> Self {
        Gauss { re: self.re.mul_ref(k), im: self.im.mul_ref(k) }
    }

    pub fn mul_i(&self) -> Self {
        Gauss { re: -self.im.clone(), im: self.re.clone() }
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self.re.clone() - other.re.clone()).approx_zero(tol) && (self.im.clone() - other.im.clone()).approx_zero(tol)
    }
}

impl<T: Field> fmt::Debug for Gauss<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?} + i·{:?})", self.re, self.im)
    }
}

impl<T: Field> Zero for Gauss<T> {
    fn zero() -> Self {
        Gauss { re: T::zero(), im: T::zero() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl<T: Field> One for Gauss<T> {
    fn one() -> Self {
        Gauss::real(T::one())
    }
}

impl<T: Field> Neg for Gauss<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Gauss { re: -self.re, im: -self.im }
    }
}

impl<T: Field> Add for Gauss<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Gauss { re: self.re + rhs.re, im: self.im + rhs.im }
    }
}

impl<T: Field> Sub for Gauss<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Gauss { re: self.re - rhs.re, im: self.im - rhs.im }
    }
}

impl<T: Field> Mul for Gauss<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.mul_ref(&rhs)
    }
}

impl<T: Field> Div for Gauss<T> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let inv = rhs.try_inv().expect("division by zero Gauss element");
        self.mul_ref(&inv)
    }
}

impl<T: Field> AddAssign for Gauss<T> {
    fn add_assign(&mut self, rhs: Self) {
        self.re.add_assign_ref(&rhs.re);
        self.im.add_assign_ref(&rhs.im);
    }
}

impl<T: Field> SubAssign for Gauss<T> {
    fn sub_assign(&mut self, rhs: Self) {
        self.re -= rhs.re;
        self.im -= rhs.im;
    }
}

impl<T: Field> MulAssign for Gauss<T> {
    fn mul_assign(&mut self, rhs: Self) {
        *self = self.mul_ref(&rhs);
    }
}

impl<T: Field> Field for Gauss<T> {
    fn from_rational(q: &Rational) -> Self {
        Gauss::real(T::from_rational(q))
    }
    fn try_inv(&self) -> Option<Self> {
        if self.im.is_zero() {
            return self.re.try_inv().map(Gauss::real);
        }
        let n = self.norm_sqr().try_inv()?;
        Some(Gauss { re: self.re.mul_ref(&n), im: -self.im.mul_ref(&n) })
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        if self.im.is_zero() {
            return rhs.scale(&self.re);
        }
        if rhs.im.is_zero() {
            return self.scale(&rhs.re);
        }
        let mut re = self.re.mul_ref(&rhs.re);
        re -= self.im.mul_ref(&rhs.im);
        let mut im = self.re.mul_ref(&rhs.im);
        im.mul_add_assign(&self.im, &rhs.re);
        Gauss { re, im }
    }
    fn add_assign_ref(&mut self, rhs: &Self) {
        self.re.add_assign_ref(&rhs.re);
        self.im.add_assign_ref(&rhs.im);
    }
    fn mul_add_assign(&mut self, a: &Self, b: &Self) {
        self.re.mul_add_assign(&a.re, &b.re);
        self.re.mul_add_assign(&(-a.im.clone()), &b.im);
        self.im.mul_add_assign(&a.re, &b.im);
        self.im.mul_add_assign(&a.im, &b.re);
    }
    fn approx_zero(&self, tol: f64) -> bool {
        self.re.approx_zero(tol) && self.im.approx_zero(tol)
    }
    fn is_exact() -> bool {
        T::is_exact()
    }
    fn magnitude(&self) -> f64 {
        self.re.magnitude().hypot(self.im.magnitude())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(a: i64, b: i64) -> Gauss<Rational> {
        Gauss::new(Rational::from_integer(a.into()), Rational::from_integer(b.into()))
    }

    #[test]
    fn multiplication_and_inverse() {
        assert_eq!(g(1, 2) * g(3, -1), g(5, 5));
        let x = g(3, 4);
        assert_eq!(x.clone() * x.try_inv().unwrap(), g(1, 0));
        assert!(g(0, 0).try_inv().is_none());
    }

    #[test]
    fn conjugation_is_multiplicative() {
        let (a, b) = (g(2, -7), g(-3, 5));
        assert_eq!((a.clone() * b.clone()).conj(), a.conj() * b.conj());
        assert_eq!(a.conj().conj(), a);
    }
}
