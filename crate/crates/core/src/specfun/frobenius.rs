//! Second solution of Euler's hypergeometric equation at integer parameter
//! c = 1 + λ, by the method of Frobenius.
//!
//! The indicial exponents at x = 0 differ by the integer λ, so the second
//! solution picks up a logarithm:
//!
//!   G(x) = x^(−λ) Σ a_ν x^ν  +  log x · Σ b_ν x^ν,   a_0 = 1.
//!
//! Substituting the ansatz into x(1−x)w'' + (c−(a+b+1)x)w' − ab·w = 0 forces
//! the log part to solve the equation itself, so b_ν = b_0 (a)_ν(b)_ν/(ν!(c)_ν),
//! and matching powers of x gives the linear recurrences implemented below.
//! The free coefficient a_λ is fixed to 0; any other choice differs by a
//! multiple of the first solution F(a,b;c;x).

use num::{BigRational, One, ToPrimitive, Zero};

use super::pochhammer_rational;
use crate::error::{Error, Result};
use crate::scalar::rational_int;

/// Coefficients of the log-type second solution, exact and ready to evaluate.
#[derive(Debug, Clone)]
pub struct FrobeniusSolution {
    lambda_int: u32,
    a_coeffs: Vec<BigRational>,
    b_coeffs: Vec<BigRational>,
    a_f64: Vec<f64>,
    b_f64: Vec<f64>,
}

impl FrobeniusSolution {
    pub fn lambda(&self) -> u32 {
        self.lambda_int
    }

    pub fn a_coeffs(&self) -> &[BigRational] {
        &self.a_coeffs
    }

    pub fn b_coeffs(&self) -> &[BigRational] {
        &self.b_coeffs
    }

    pub fn truncation_order(&self) -> usize {
        self.a_coeffs.len() - 1
    }

    fn check_domain(x: f64) -> Result<()> {
        if x <= 0.0 || x >= 1.0 {
            return Err(Error::domain(format!(
                "Frobenius solution is evaluated on 0 < x < 1, got x = {x}"
            )));
        }
        Ok(())
    }

    /// G(x).
    pub fn eval(&self, x: f64) -> Result<f64> {
        Self::check_domain(x)?;
        let a = horner(&self.a_f64, x);
        let b = horner(&self.b_f64, x);
        Ok(x.powi(-(self.lambda_int as i32)) * a + x.ln() * b)
    }

    /// G'(x).
    pub fn eval_d1(&self, x: f64) -> Result<f64> {
        Self::check_domain(x)?;
        let lam = self.lambda_int as f64;
        let a = horner(&self.a_f64, x);
        let da = horner_d1(&self.a_f64, x);
        let b = horner(&self.b_f64, x);
        let db = horner_d1(&self.b_f64, x);
        Ok(x.powf(-lam - 1.0) * (x * da - lam * a) + b / x + x.ln() * db)
    }

    /// G''(x).
    pub fn eval_d2(&self, x: f64) -> Result<f64> {
        Self::check_domain(x)?;
        let lam = self.lambda_int as f64;
        let a = horner(&self.a_f64, x);
        let da = horner_d1(&self.a_f64, x);
        let d2a = horner_d2(&self.a_f64, x);
        let b = horner(&self.b_f64, x);
        let db = horner_d1(&self.b_f64, x);
        let d2b = horner_d2(&self.b_f64, x);
        Ok(x.powf(-lam) * d2a - 2.0 * lam * x.powf(-lam - 1.0) * da
            + lam * (lam + 1.0) * x.powf(-lam - 2.0) * a
            + 2.0 * db / x
            - b / (x * x)
            + x.ln() * d2b)
    }
}

fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

fn horner_d1(coeffs: &[f64], x: f64) -> f64 {
    let mut acc = 0.0;
    for (k, &c) in coeffs.iter().enumerate().skip(1).rev() {
        acc = acc * x + k as f64 * c;
    }
    acc
}

fn horner_d2(coeffs: &[f64], x: f64) -> f64 {
    let mut acc = 0.0;
    for (k, &c) in coeffs.iter().enumerate().skip(2).rev() {
        acc = acc * x + (k * (k - 1)) as f64 * c;
    }
    acc
}

/// Builds the second solution for parameters (a, b; 1+λ) with λ ∈ ℕ⁺.
///
/// Both series are truncated at `order` (≥ 1). Fails when the recursion
/// forces b_0 = 0, i.e. when the second solution is log-free; that happens
/// exactly when (a−λ)_λ (b−λ)_λ = 0, outside the regime this solver serves.
pub fn frobenius_second_solution(
    a: &BigRational,
    b: &BigRational,
    lambda_int: u32,
    order: usize,
) -> Result<FrobeniusSolution> {
    if lambda_int == 0 {
        return Err(Error::domain("Frobenius solver requires λ ≥ 1"));
    }
    if order < 1 {
        return Err(Error::domain("Frobenius truncation order must be ≥ 1"));
    }
    let lam = lambda_int as usize;
    let lam_q = rational_int(lambda_int as i64);
    let c = &lam_q + BigRational::one();

    // a_m for m < λ: a_m · m(m−λ) = a_{m−1} (a+m−1−λ)(b+m−1−λ).
    // The whole prefix is needed for b_0 even when `order` truncates earlier.
    let mut prefix = Vec::with_capacity(lam);
    prefix.push(BigRational::one());
    for m in 1..lam {
        let mf = rational_int(m as i64);
        let shift = &mf - &lam_q - BigRational::one();
        let num = &prefix[m - 1] * (a + &shift) * (b + &shift);
        let den = &mf * (&mf - &lam_q);
        prefix.push(num / den);
    }

    // b_0 from the matching condition at the power x^(−1)
    let b0 = &prefix[lam - 1] * (a - BigRational::one()) * (b - BigRational::one()) / &lam_q;
    if b0.is_zero() {
        return Err(Error::domain(
            "second solution is log-free here: the obstruction coefficient vanishes".to_string(),
        ));
    }
    let mut a_coeffs: Vec<BigRational> = prefix.into_iter().take(order + 1).collect();

    // b_ν = b_0 (a)_ν (b)_ν / (ν! (c)_ν)
    let mut b_coeffs = Vec::with_capacity(order + 1);
    for nu in 0..=order {
        let t = &b0 * pochhammer_rational(a, nu) * pochhammer_rational(b, nu)
            / (pochhammer_rational(&BigRational::one(), nu) * pochhammer_rational(&c, nu));
        b_coeffs.push(t);
    }

    // a_λ is free: fixed to 0
    if a_coeffs.len() <= order {
        a_coeffs.push(BigRational::zero());
    }

    // a_m for m > λ picks up the inhomogeneity from the log part
    for m in (lam + 1)..=order {
        let mf = rational_int(m as i64);
        let shift = &mf - &lam_q - BigRational::one();
        let p = m - lam - 1;
        let inhom = (a + b + rational_int(2 * p as i64)) * &b_coeffs[p]
            - (&lam_q + rational_int(2 * p as i64 + 2)) * &b_coeffs[p + 1];
        let num = &a_coeffs[m - 1] * (a + &shift) * (b + &shift) + inhom;
        let den = &mf * (&mf - &lam_q);
        a_coeffs.push(num / den);
    }

    let a_f64 = a_coeffs
        .iter()
        .map(|q| q.to_f64().unwrap_or(f64::NAN))
        .collect();
    let b_f64 = b_coeffs
        .iter()
        .map(|q| q.to_f64().unwrap_or(f64::NAN))
        .collect();
    Ok(FrobeniusSolution {
        lambda_int,
        a_coeffs,
        b_coeffs,
        a_f64,
        b_f64,
    })
}
