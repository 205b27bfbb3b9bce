//! Exact scalars of the form q · π^(k/2) with q rational.
//!
//! Gamma values at half-integers are rational multiples of √π, so ratios of
//! such values stay inside this set. The √π exponent is tracked as an integer
//! so that products and quotients reduce without any floating point.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

/// A rational number times an integer power of √π.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactScalar {
    /// Rational factor, kept in lowest terms by `BigRational`.
    pub value: BigRational,
    /// Exponent k in π^(k/2). Zero whenever `value` is zero.
    pub sqrt_pi_power: i32,
}

impl ExactScalar {
    pub fn new(value: BigRational, sqrt_pi_power: i32) -> Self {
        if value.is_zero() {
            return Self::zero();
        }
        ExactScalar {
            value,
            sqrt_pi_power,
        }
    }

    pub fn zero() -> Self {
        ExactScalar {
            value: BigRational::zero(),
            sqrt_pi_power: 0,
        }
    }

    pub fn one() -> Self {
        ExactScalar {
            value: BigRational::one(),
            sqrt_pi_power: 0,
        }
    }

    pub fn from_rational(value: BigRational) -> Self {
        Self::new(value, 0)
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// The purely rational part, available when no √π factor is left.
    pub fn as_rational(&self) -> Option<&BigRational> {
        (self.sqrt_pi_power == 0 || self.is_zero()).then_some(&self.value)
    }

    pub fn to_f64(&self) -> f64 {
        let q = self.value.to_f64().unwrap_or(f64::NAN);
        if self.is_zero() {
            return 0.0;
        }
        q * std::f64::consts::PI.powf(self.sqrt_pi_power as f64 / 2.0)
    }

    pub fn abs(&self) -> Self {
        ExactScalar {
            value: self.value.abs(),
            sqrt_pi_power: self.sqrt_pi_power,
        }
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of exact zero");
        ExactScalar::new(self.value.recip(), -self.sqrt_pi_power)
    }
}

impl Mul for ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: ExactScalar) -> ExactScalar {
        ExactScalar::new(self.value * rhs.value, self.sqrt_pi_power + rhs.sqrt_pi_power)
    }
}

impl Div for ExactScalar {
    type Output = ExactScalar;
    fn div(self, rhs: ExactScalar) -> ExactScalar {
        assert!(!rhs.is_zero(), "division by exact zero");
        ExactScalar::new(self.value / rhs.value, self.sqrt_pi_power - rhs.sqrt_pi_power)
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar::new(-self.value, self.sqrt_pi_power)
    }
}

/// Addition is only defined for matching √π powers; mixed sums leave the set.
impl Add for ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: ExactScalar) -> ExactScalar {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        assert_eq!(
            self.sqrt_pi_power, rhs.sqrt_pi_power,
            "cannot add exact scalars with different sqrt(pi) powers"
        );
        ExactScalar::new(self.value + rhs.value, self.sqrt_pi_power)
    }
}

impl Sub for ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: ExactScalar) -> ExactScalar {
        self + (-rhs)
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sqrt_pi_power == 0 || self.is_zero() {
            write!(f, "{}", self.value)
        } else if self.sqrt_pi_power == 1 {
            write!(f, "{}*sqrt(pi)", self.value)
        } else if self.sqrt_pi_power % 2 == 0 {
            write!(f, "{}*pi^{}", self.value, self.sqrt_pi_power / 2)
        } else {
            write!(f, "{}*pi^({}/2)", self.value, self.sqrt_pi_power)
        }
    }
}

/// Rational from an integer pair, panicking on zero denominator.
pub fn rational(numer: i64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Rational from an integer.
pub fn rational_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// True when `q` is an integer.
pub fn is_integer(q: &BigRational) -> bool {
    q.is_integer()
}

/// `q` as an `i64` when it is an integer of moderate size.
pub fn to_i64(q: &BigRational) -> Option<i64> {
    q.is_integer().then(|| q.to_integer().to_i64()).flatten()
}

/// True when 2q is an integer (integer or half-odd-integer).
pub fn is_half_integer(q: &BigRational) -> bool {
    (q * rational_int(2)).is_integer()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_pi_powers_fold_in_products() {
        let a = ExactScalar::new(rational(3, 4), 1); // (3/4)·√π
        let b = ExactScalar::new(rational(1, 2), 1); // (1/2)·√π
        let p = a.clone() * b;
        assert_eq!(p.value, rational(3, 8));
        assert_eq!(p.sqrt_pi_power, 2); // (3/8)·π
        let q = p / a;
        assert_eq!(q.sqrt_pi_power, 1);
        assert_eq!(q.value, rational(1, 2));
    }

    #[test]
    fn zero_normalizes_power() {
        let z = ExactScalar::new(BigRational::zero(), 1);
        assert!(z.is_zero());
        assert_eq!(z.sqrt_pi_power, 0);
    }

    #[test]
    fn to_f64_matches_pi() {
        let x = ExactScalar::new(rational(4, 3), -2); // 4/(3π)
        let expect = 4.0 / (3.0 * std::f64::consts::PI);
        assert!((x.to_f64() - expect).abs() < 1e-15);
    }

    #[test]
    fn half_integer_predicate() {
        assert!(is_half_integer(&rational(5, 2)));
        assert!(is_half_integer(&rational(3, 1)));
        assert!(!is_half_integer(&rational(1, 3)));
    }
}
