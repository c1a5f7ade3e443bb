use std::cmp::Ordering;
use std::fmt::Debug;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;

use num_traits::{One, Signed, ToPrimitive, Zero};
use twofloat::TwoFloat;

use super::Rational;

/// Commutative ring with (partial) division, the coefficient domain of every
/// algorithm in the crate.
///
/// Exact types (rationals, rational functions, jets over them) report exact
/// zero tests. Floating types treat values below a caller-supplied tolerance
/// as zero in [`Field::approx_zero`].
pub trait Field:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + Send
    + Sync
{
    fn from_rational(q: &Rational) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(n)))
    }

    /// Multiplicative inverse, `None` when the element is not invertible.
    fn try_inv(&self) -> Option<Self>;

    fn mul_ref(&self, rhs: &Self) -> Self {
        self.clone() * rhs.clone()
    }

    fn add_assign_ref(&mut self, rhs: &Self) {
        *self += rhs.clone();
    }

    /// `self += a * b`
    fn mul_add_assign(&mut self, a: &Self, b: &Self) {
        *self += a.mul_ref(b);
    }

    fn approx_zero(&self, _tol: f64) -> bool {
        self.is_zero()
    }

    fn is_exact() -> bool {
        true
    }

    /// Size estimate for relative tolerances; `0` for exact types.
    fn magnitude(&self) -> f64 {
        0.0
    }

    fn pow_u32(&self, n: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }
}

/// Fields with a (possibly undecidable) order, used for Hopf sign conditions.
pub trait Ordered: Field {
    /// `None` when the sign cannot be decided (e.g. a non-constant rational
    /// function).
    fn sign(&self) -> Option<Ordering>;
    fn to_f64(&self) -> Option<f64>;
}

/// Square roots that stay inside the field.
pub trait ExactSqrt: Field {
    fn sqrt_exact(&self) -> Option<Self>;
}

impl Field for Rational {
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn add_assign_ref(&mut self, rhs: &Self) {
        *self += rhs;
    }
    fn mul_add_assign(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
}

impl Ordered for Rational {
    fn sign(&self) -> Option<Ordering> {
        Some(if self.is_positive() {
            Ordering::Greater
        } else if self.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        })
    }
    fn to_f64(&self) -> Option<f64> {
        rational_to_f64(self)
    }
}

impl ExactSqrt for Rational {
    fn sqrt_exact(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        if &(&n * &n) == self.numer() && &(&d * &d) == self.denom() {
            Some(Rational::new(n, d))
        } else {
            None
        }
    }
}

/// Correctly rounded conversion of a rational to a double (via integer
/// scaling so that huge numerators and denominators do not overflow).
pub fn rational_to_f64(q: &Rational) -> Option<f64> {
    if let (Some(n), Some(d)) = (q.numer().to_f64(), q.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && n.abs() < 9.0e15 && d < 9.0e15 {
            return Some(n / d);
        }
    }
    // Scale so that the integer quotient carries 64 significant bits.
    let nb = q.numer().bits() as i64;
    let db = q.denom().bits() as i64;
    let shift = 64 - (nb - db);
    let scaled = if shift >= 0 {
        (q.numer() << (shift as usize)) / q.denom()
    } else {
        q.numer() / (q.denom() << ((-shift) as usize))
    };
    let m = scaled.to_f64()?;
    Some(m * 2f64.powi(-(shift as i32)))
}

macro_rules! float_field {
    ($t:ty) => {
        impl Ordered for $t {
            fn sign(&self) -> Option<Ordering> {
                self.partial_cmp(&<$t>::zero())
            }
            fn to_f64(&self) -> Option<f64> {
                ToPrimitive::to_f64(self)
            }
        }
    };
}

impl Field for f64 {
    fn from_rational(q: &Rational) -> Self {
        rational_to_f64(q).unwrap_or(f64::NAN)
    }
    fn from_i64(n: i64) -> Self {
        n as f64
    }
    fn try_inv(&self) -> Option<Self> {
        if *self == 0.0 {
            None
        } else {
            Some(1.0 / self)
        }
    }
    fn approx_zero(&self, tol: f64) -> bool {
        self.abs() <= tol
    }
    fn is_exact() -> bool {
        false
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}
float_field!(f64);

impl ExactSqrt for f64 {
    fn sqrt_exact(&self) -> Option<Self> {
        if *self < 0.0 {
            None
        } else {
            Some(self.sqrt())
        }
    }
}

impl Field for TwoFloat {
    fn from_rational(q: &Rational) -> Self {
        // Split numerator and denominator into double-double pieces.
        let hi = rational_to_f64(q).unwrap_or(f64::NAN);
        let rem = q - Rational::from_float(hi).unwrap_or_else(Rational::zero);
        let lo = rational_to_f64(&rem).unwrap_or(0.0);
        TwoFloat::from(hi) + TwoFloat::from(lo)
    }
    fn from_i64(n: i64) -> Self {
        TwoFloat::from(n)
    }
    fn try_inv(&self) -> Option<Self> {
        if *self == TwoFloat::from(0.0) {
            None
        } else {
            Some(TwoFloat::from(1.0) / *self)
        }
    }
    fn approx_zero(&self, tol: f64) -> bool {
        num_traits::Float::abs(*self) <= TwoFloat::from(tol)
    }
    fn is_exact() -> bool {
        false
    }
    fn magnitude(&self) -> f64 {
        num_traits::Float::abs(self.hi())
    }
}
float_field!(TwoFloat);

impl ExactSqrt for TwoFloat {
    fn sqrt_exact(&self) -> Option<Self> {
        if *self < TwoFloat::from(0.0) {
            None
        } else {
            Some(num_traits::Float::sqrt(*self))
        }
    }
}
