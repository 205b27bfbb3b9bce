//! Equal-index Jacobi polynomials P_l^(α,α), the Gegenbauer family in
//! disguise. Exact monomial coefficients drive the certification paths; a
//! three-term recurrence drives the floating-point path.

use num::{BigRational, One, Zero};

use super::pochhammer_rational;
use crate::poly::RatPoly;
use crate::scalar::{rational, rational_int};

/// Exact monomial coefficients of P_l^(α,α)(z).
///
/// Built from the terminating Gauss series
/// P_l^(α,α)(z) = ((α+1)_l / l!) F(l+2α+1, −l; α+1; (1−z)/2).
///
/// Panics when (α+1)_l has a zero factor (α a negative integer ≥ −l), which
/// no caller with α > −1 or α = λ > 0 can trigger.
pub fn jacobi_equal_index_coeffs(l: usize, alpha: &BigRational) -> RatPoly {
    let a = BigRational::from_integer((l as i64).into()) + alpha * rational_int(2) + BigRational::one();
    let b = rational_int(-(l as i64));
    let c = alpha + BigRational::one();

    // series in u = (1-z)/2
    let mut term = BigRational::one();
    let mut series = vec![term.clone()];
    for m in 0..l {
        let mf = rational_int(m as i64);
        let denom = (&c + &mf) * (&mf + BigRational::one());
        assert!(
            !denom.is_zero(),
            "jacobi polynomial undefined: (alpha+1)_m vanishes at alpha = {alpha}, m = {}",
            m + 1
        );
        term = term * (&a + &mf) * (&b + &mf) / denom;
        series.push(term.clone());
    }
    let in_u = RatPoly::new(series);
    let in_z = in_u.compose_affine(&rational(1, 2), &rational(-1, 2));
    let lead = pochhammer_rational(&(alpha + BigRational::one()), l)
        / pochhammer_rational(&BigRational::one(), l);
    in_z.scale(&lead)
}

/// Exact value of P_l^(α,α)(z) for rational inputs.
pub fn jacobi_poly_exact(l: usize, alpha: &BigRational, z: &BigRational) -> BigRational {
    jacobi_equal_index_coeffs(l, alpha).eval_rational(z)
}

/// P_l^(α,α)(1) = (α+1)_l / l!, the normalization at the right endpoint.
pub fn jacobi_norm_at_one(l: usize, alpha: &BigRational) -> BigRational {
    pochhammer_rational(&(alpha + BigRational::one()), l)
        / pochhammer_rational(&BigRational::one(), l)
}

/// Floating-point P_l^(α,α)(z) by the three-term recurrence
/// (l+α+1)(2l+2α+1) z P_l = (l+α)(l+α+1) P_{l−1} + (l+1)(l+2α+1) P_{l+1}.
pub fn jacobi_poly(l: usize, alpha: f64, z: f64) -> f64 {
    if l == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = (alpha + 1.0) * z;
    for k in 1..l {
        let kf = k as f64;
        let next = ((kf + alpha + 1.0) * (2.0 * kf + 2.0 * alpha + 1.0) * z * cur
            - (kf + alpha) * (kf + alpha + 1.0) * prev)
            / ((kf + 1.0) * (kf + 2.0 * alpha + 1.0));
        prev = cur;
        cur = next;
    }
    cur
}

/// Right-hand side of the derivative identity
/// (1−z²) (P_l^(α,α))'(z) = (l+2α+1) z P_l(z) − ((l+1)(l+2α+1)/(l+α+1)) P_{l+1}(z),
/// as an exact polynomial. Tests compare it against the differentiated left side.
pub fn jacobi_deriv_identity_rhs(l: usize, alpha: &BigRational) -> RatPoly {
    let lf = rational_int(l as i64);
    let two_alpha = alpha * rational_int(2);
    let k1 = &lf + &two_alpha + BigRational::one(); // l + 2α + 1
    let k2 = (&lf + BigRational::one()) * &k1 / (&lf + alpha + BigRational::one());
    let p_l = jacobi_equal_index_coeffs(l, alpha);
    let p_next = jacobi_equal_index_coeffs(l + 1, alpha);
    p_l.mul_x().scale(&k1).sub(&p_next.scale(&k2))
}

/// Right-hand side of the three-term recurrence
/// (l+α+1)(2l+2α+1) z P_l = (l+α)(l+α+1) P_{l−1} + (l+1)(l+2α+1) P_{l+1},
/// as an exact polynomial (the l = 0 case omits the P_{l−1} term).
pub fn jacobi_three_term_rhs(l: usize, alpha: &BigRational) -> RatPoly {
    let lf = rational_int(l as i64);
    let up = jacobi_equal_index_coeffs(l + 1, alpha).scale(
        &((&lf + BigRational::one()) * (&lf + alpha * rational_int(2) + BigRational::one())),
    );
    if l == 0 {
        return up;
    }
    let down = jacobi_equal_index_coeffs(l - 1, alpha)
        .scale(&((&lf + alpha) * (&lf + alpha + BigRational::one())));
    up.add(&down)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use num::ToPrimitive;
    use proptest::prelude::*;

    #[test]
    fn degree_zero_and_one() {
        let alpha = rational(3, 2);
        assert_eq!(jacobi_equal_index_coeffs(0, &alpha), RatPoly::one());
        // P_1^(α,α)(z) = (α+1) z
        let p1 = jacobi_equal_index_coeffs(1, &alpha);
        assert_eq!(p1, RatPoly::x().scale(&rational(5, 2)));
    }

    #[test]
    fn value_at_one_is_pochhammer_ratio() {
        for l in 0..8 {
            for alpha in [rational_int(1), rational(1, 2), rational(7, 2)] {
                let val = jacobi_poly_exact(l, &alpha, &rational_int(1));
                assert_eq!(val, jacobi_norm_at_one(l, &alpha));
            }
        }
    }

    #[test]
    fn float_recurrence_matches_exact_coefficients() {
        for l in 0..=10 {
            for (alpha, z) in [(1.0, 0.3), (2.5, -0.8), (0.5, 0.99)] {
                let alpha_q = BigRational::from_float(alpha).unwrap();
                let z_q = BigRational::from_float(z).unwrap();
                let exact = jacobi_poly_exact(l, &alpha_q, &z_q).to_f64().unwrap();
                let float = jacobi_poly(l, alpha, z);
                assert_relative_eq!(float, exact, max_relative = 1e-11);
            }
        }
    }

    #[test]
    fn parity_exact() {
        // P_l^(α,α)(−z) = (−1)^l P_l^(α,α)(z), coefficient-wise
        for l in 0..=10 {
            for alpha in [rational_int(1), rational(5, 2), rational(1, 3)] {
                let p = jacobi_equal_index_coeffs(l, &alpha);
                let reflected = p.reflect();
                let signed = if l % 2 == 0 {
                    p.clone()
                } else {
                    p.scale(&rational_int(-1))
                };
                assert_eq!(reflected, signed, "parity fails at l = {l}");
            }
        }
    }

    #[test]
    fn derivative_identity_exact() {
        // (1−z²) P_l' = (l+2α+1) z P_l − ((l+1)(l+2α+1)/(l+α+1)) P_{l+1}
        let one_minus_z2 = RatPoly::new(vec![
            BigRational::one(),
            BigRational::zero(),
            -BigRational::one(),
        ]);
        for l in 0..=10 {
            for alpha in [rational_int(1), rational(3, 2), rational(9, 2)] {
                let lhs = one_minus_z2.mul(&jacobi_equal_index_coeffs(l, &alpha).derivative());
                let rhs = jacobi_deriv_identity_rhs(l, &alpha);
                assert_eq!(lhs, rhs, "derivative identity fails at l = {l}, α = {alpha}");
            }
        }
    }

    #[test]
    fn three_term_recurrence_exact() {
        for l in 1..=10 {
            for alpha in [rational_int(2), rational(1, 2), rational(7, 2)] {
                let lf = rational_int(l as i64);
                let lhs = jacobi_equal_index_coeffs(l, &alpha)
                    .mul_x()
                    .scale(&((&lf + &alpha + BigRational::one())
                        * (rational_int(2) * &lf + rational_int(2) * &alpha + BigRational::one())));
                let rhs = jacobi_three_term_rhs(l, &alpha);
                assert_eq!(lhs, rhs, "three-term recurrence fails at l = {l}");
            }
        }
    }

    #[test]
    fn terminating_hypergeometric_matches_jacobi() {
        // F(l+2α+1, −l; α+1; (1−z)/2) · (α+1)_l / l! against the coefficients
        use crate::specfun::hyp2f1_exact_terminating;
        for l in 0..=10usize {
            for alpha in [rational_int(1), rational(5, 2)] {
                let z = rational(-2, 5);
                let f = hyp2f1_exact_terminating(
                    &(rational_int(l as i64) + &alpha * rational_int(2) + BigRational::one()),
                    &rational_int(-(l as i64)),
                    &(&alpha + BigRational::one()),
                    &((BigRational::one() - &z) / rational_int(2)),
                )
                .unwrap();
                let lhs = jacobi_norm_at_one(l, &alpha) * f;
                assert_eq!(lhs, jacobi_poly_exact(l, &alpha, &z));
            }
        }
    }

    proptest! {
        #[test]
        fn float_parity(l in 0usize..10, z in -0.95f64..0.95) {
            let alpha = 1.5;
            let lhs = jacobi_poly(l, alpha, -z);
            let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
            let rhs = sign * jacobi_poly(l, alpha, z);
            prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.abs().max(1.0));
        }
    }
}
