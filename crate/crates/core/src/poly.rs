//! Dense polynomials with exact rational coefficients.
//!
//! Used for closed-form radial solutions and for certifying polynomial
//! identities coefficient-by-coefficient, with no floating point involved.

use num::{BigRational, One, ToPrimitive, Zero};

/// Polynomial with ascending rational coefficients; the zero polynomial is
/// the empty coefficient list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        let mut p = RatPoly { coeffs };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        RatPoly {
            coeffs: vec![BigRational::one()],
        }
    }

    pub fn constant(c: BigRational) -> Self {
        RatPoly::new(vec![c])
    }

    /// The monomial x.
    pub fn x() -> Self {
        RatPoly {
            coeffs: vec![BigRational::zero(), BigRational::one()],
        }
    }

    fn trim(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        (!self.coeffs.is_empty()).then(|| self.coeffs.len() - 1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + rhs.coeff(k));
        }
        RatPoly::new(out)
    }

    pub fn sub(&self, rhs: &RatPoly) -> RatPoly {
        self.add(&rhs.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }

    /// Multiply by x (shift coefficients up one degree).
    pub fn mul_x(&self) -> RatPoly {
        if self.is_zero() {
            return RatPoly::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(BigRational::zero());
        out.extend(self.coeffs.iter().cloned());
        RatPoly::new(out)
    }

    pub fn derivative(&self) -> RatPoly {
        if self.coeffs.len() <= 1 {
            return RatPoly::zero();
        }
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * BigRational::from_integer(k.into()))
            .collect();
        RatPoly::new(out)
    }

    /// Substitute x → −x.
    pub fn reflect(&self) -> RatPoly {
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| if k % 2 == 0 { c.clone() } else { -c })
            .collect();
        RatPoly::new(out)
    }

    /// Substitute x → α + βx, by Horner over polynomial coefficients.
    pub fn compose_affine(&self, alpha: &BigRational, beta: &BigRational) -> RatPoly {
        let sub = RatPoly::new(vec![alpha.clone(), beta.clone()]);
        let mut acc = RatPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&sub).add(&RatPoly::constant(c.clone()));
        }
        acc
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::NAN))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rational, rational_int};

    fn p(v: &[i64]) -> RatPoly {
        RatPoly::new(v.iter().map(|&c| rational_int(c)).collect())
    }

    #[test]
    fn mul_and_derivative() {
        // (1 + x)(1 - x) = 1 - x²
        let q = p(&[1, 1]).mul(&p(&[1, -1]));
        assert_eq!(q, p(&[1, 0, -1]));
        assert_eq!(q.derivative(), p(&[0, -2]));
    }

    #[test]
    fn affine_composition() {
        // q(x) = x², q(1 - 2x) = 1 - 4x + 4x²
        let q = p(&[0, 0, 1]).compose_affine(&rational_int(1), &rational_int(-2));
        assert_eq!(q, p(&[1, -4, 4]));
    }

    #[test]
    fn reflect_parity() {
        let q = p(&[0, 3, 0, -5]); // odd polynomial
        assert_eq!(q.reflect(), q.scale(&rational(-1, 1)));
    }

    #[test]
    fn eval_matches_rational_and_float() {
        let q = p(&[2, -1, 3]);
        let x = rational(1, 2);
        let exact = q.eval_rational(&x);
        assert_eq!(exact, rational(9, 4));
        assert!((q.eval_f64(0.5) - 2.25).abs() < 1e-15);
    }
}
