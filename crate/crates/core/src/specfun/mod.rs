//! Scalar special-function kernel.
//!
//! Pochhammer symbols, Gamma values (exact at half-integers, floating point
//! elsewhere), the Gauss hypergeometric series, Gauss's limit constant at
//! x = 1, equal-index Jacobi polynomials, and the logarithmic second solution
//! of the hypergeometric equation at integer parameter difference.
//!
//! Everything here is a pure function of its inputs. Classification paths use
//! the exact rational routines; residual and quadrature paths use `f64` or
//! `Complex64`.

mod frobenius;
mod gamma;
mod hyp2f1;
mod jacobi;

pub use frobenius::{frobenius_second_solution, FrobeniusSolution};
pub use gamma::{
    digamma, gamma_exact, gamma_float, gauss_limit_constant, gauss_limit_constant_exact,
    ExactGamma, FloatGamma,
};
pub use hyp2f1::{hyp2f1, hyp2f1_exact_terminating, Hyp2f1Eval, SERIES_CAP};
pub use jacobi::{
    jacobi_deriv_identity_rhs, jacobi_equal_index_coeffs, jacobi_norm_at_one, jacobi_poly,
    jacobi_poly_exact, jacobi_three_term_rhs,
};

use num::complex::Complex64;
use num::{BigRational, One, Zero};

use crate::error::{Error, Result};

/// Rising factorial (a)_m = a(a+1)···(a+m−1).
pub fn pochhammer(a: Complex64, m: usize) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    for k in 0..m {
        acc *= a + k as f64;
    }
    acc
}

/// Rising factorial with exact rational arithmetic.
pub fn pochhammer_rational(a: &BigRational, m: usize) -> BigRational {
    let mut acc = BigRational::one();
    for k in 0..m {
        acc *= a + BigRational::from_integer(k.into());
    }
    acc
}

/// True when `z` is 0, −1, −2, … exactly.
pub(crate) fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0
}

/// Parameters (a, b; c) of the Gauss series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypergeometricParams {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
}

impl HypergeometricParams {
    /// Validates that c avoids the poles of the series: c ∉ −ℕ₀ unless the
    /// series terminates at a degree not past the pole.
    pub fn new(a: Complex64, b: Complex64, c: Complex64) -> Result<Self> {
        let p = HypergeometricParams { a, b, c };
        if is_nonpositive_integer(c) {
            let pole_index = -c.re;
            match p.terminating_degree() {
                Some(d) if (d as f64) <= pole_index => {}
                _ => {
                    return Err(Error::domain(format!(
                        "hypergeometric parameter c = {c} is a non-positive integer \
                         and the series does not terminate before the pole"
                    )))
                }
            }
        }
        Ok(p)
    }

    pub fn real(a: f64, b: f64, c: f64) -> Result<Self> {
        Self::new(
            Complex64::new(a, 0.0),
            Complex64::new(b, 0.0),
            Complex64::new(c, 0.0),
        )
    }

    /// Degree of the terminating series, when a or b lies in −ℕ₀.
    pub fn terminating_degree(&self) -> Option<usize> {
        let from = |z: Complex64| is_nonpositive_integer(z).then(|| (-z.re) as usize);
        match (from(self.a), from(self.b)) {
            (Some(da), Some(db)) => Some(da.min(db)),
            (Some(da), None) => Some(da),
            (None, Some(db)) => Some(db),
            (None, None) => None,
        }
    }
}

/// Degree of the polynomial defined by a terminating Gauss series, if any.
pub fn is_terminating(p: &HypergeometricParams) -> Option<usize> {
    p.terminating_degree()
}

/// Rational-parameter variant of [`is_terminating`].
pub fn terminating_degree_rational(a: &BigRational, b: &BigRational) -> Option<usize> {
    let from = |q: &BigRational| {
        (q.is_integer() && *q <= BigRational::zero())
            .then(|| crate::scalar::to_i64(&(-q)).map(|d| d as usize))
            .flatten()
    };
    match (from(a), from(b)) {
        (Some(da), Some(db)) => Some(da.min(db)),
        (Some(da), None) => Some(da),
        (None, Some(db)) => Some(db),
        (None, None) => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rational, rational_int};
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn pochhammer_base_cases() {
        assert_eq!(pochhammer(c(7.3), 0), Complex64::new(1.0, 0.0));
        assert_relative_eq!(pochhammer(c(1.0), 4).re, 24.0, epsilon = 1e-14);
        assert_relative_eq!(pochhammer(c(0.5), 2).re, 0.75, epsilon = 1e-14);
    }

    #[test]
    fn pochhammer_rational_exact() {
        assert_eq!(
            pochhammer_rational(&rational(1, 2), 2),
            rational(3, 4) // (1/2)(3/2)
        );
        assert_eq!(pochhammer_rational(&rational_int(1), 4), rational_int(24));
        assert_eq!(pochhammer_rational(&rational_int(-3), 5), rational_int(0));
    }

    #[test]
    fn termination_detection() {
        let p = HypergeometricParams::real(2.0, -3.0, 1.5).unwrap();
        assert_eq!(is_terminating(&p), Some(3));
        let p = HypergeometricParams::real(2.0, 0.0, 1.5).unwrap();
        assert_eq!(is_terminating(&p), Some(0));
        let p = HypergeometricParams::real(2.5, 1.1, 1.5).unwrap();
        assert_eq!(is_terminating(&p), None);
    }

    #[test]
    fn c_pole_rejected_unless_terminating_first() {
        assert!(HypergeometricParams::real(2.0, 1.0, -1.0).is_err());
        // b = −1 terminates at degree 1 ≤ 2 = −c, so the pole is never hit
        assert!(HypergeometricParams::real(2.0, -1.0, -2.0).is_ok());
        // terminates at degree 3 > 2 = −c: hits the pole
        assert!(HypergeometricParams::real(2.0, -3.0, -2.0).is_err());
    }

    proptest! {
        #[test]
        fn pochhammer_splits_multiplicatively(a in -6i64..6, m in 0usize..8, k in 0usize..8) {
            // (a)_{m+k} = (a)_m (a+m)_k
            let a = rational(a, 2);
            let lhs = pochhammer_rational(&a, m + k);
            let rhs = pochhammer_rational(&a, m)
                * pochhammer_rational(&(a + rational_int(m as i64)), k);
            prop_assert_eq!(lhs, rhs);
        }
    }
}
