//! Radial eigenfunctions of the Laplace–Beltrami operator on the hyperboloid.
//!
//! In the coordinates (y, t) ∈ S^(n−1) × ℝ the operator separates, and a
//! K-type of degree j contributes the radial equation
//!
//!   φ'' + 2ρ tanh t · φ' + j(j+n−2) sech²t · φ = (λ² − ρ²) φ,   ρ = (n−1)/2.
//!
//! The distinguished solution decays like (cosh t)^(−λ−ρ) as t → +∞ and is
//! hypergeometric in x = (1+e^(2t))⁻¹; its reflection, the branch with the
//! second exponent λ−ρ, and a logarithmic second solution (for integer λ)
//! complete the picture. Evaluators carry analytic first and second
//! derivatives so residual checks do not rely on finite differencing.

mod kernel;
mod zonal;

pub use kernel::RadialEvaluator;
pub use zonal::{zonal_harmonic, zonal_harmonic_exact, zonal_laplacian_residual, zonal_poly};

use num::complex::Complex64;
use num::{BigRational, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::RatPoly;
use crate::scalar::{rational, rational_int, to_i64, ExactScalar};
use crate::specfun::{
    frobenius_second_solution, gauss_limit_constant, gauss_limit_constant_exact,
    jacobi_equal_index_coeffs, pochhammer_rational, HypergeometricParams,
};

use kernel::{compose_affine_c64, ln_cosh, poly_to_c64, KernelForm};

/// Default tolerance for series-backed evaluation.
pub const DEFAULT_SERIES_TOL: f64 = 1e-12;
/// Default step for finite-difference residuals; balances the h⁴ truncation
/// of the 5-point stencils against eps/h² rounding amplification.
pub const DEFAULT_FD_STEP: f64 = 1e-3;
/// Truncation order of the logarithmic second solution.
pub const DEFAULT_LOG_ORDER: usize = 80;

/// The pair (n, ρ) fixing the hyperboloid and all derived constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Geometry {
    n: u32,
    rho: BigRational,
}

impl Geometry {
    pub fn new(n: u32) -> Result<Geometry> {
        if n < 3 {
            return Err(Error::domain(format!("dimension parameter n must be ≥ 3, got {n}")));
        }
        Ok(Geometry {
            n,
            rho: rational(n as i64 - 1, 2),
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// ρ = (n−1)/2: integer for n odd, half-odd for n even.
    pub fn rho(&self) -> &BigRational {
        &self.rho
    }

    pub fn rho_f64(&self) -> f64 {
        (self.n as f64 - 1.0) / 2.0
    }

    pub fn is_n_even(&self) -> bool {
        self.n % 2 == 0
    }

    /// Exponent n−1 = 2ρ of the invariant radial weight cosh^(n−1) t.
    pub fn weight_exponent(&self) -> u32 {
        self.n - 1
    }
}

/// The eigenvalue parameter λ: exact rational when λ − ρ ∈ ℤ, complex float
/// otherwise.
#[derive(Debug, Clone, PartialEq)]
enum Lambda {
    Exact(BigRational),
    Float(Complex64),
}

/// Eigenvalue parameter bound to a geometry, with Δ-eigenvalue λ² − ρ².
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralParam {
    geometry: Geometry,
    lambda: Lambda,
}

impl SpectralParam {
    /// λ = ρ + k with an exact integer offset k.
    pub fn from_offset(geometry: Geometry, k: i64) -> SpectralParam {
        let lambda = geometry.rho() + rational_int(k);
        SpectralParam {
            geometry,
            lambda: Lambda::Exact(lambda),
        }
    }

    /// Rational λ; stored exactly when λ − ρ ∈ ℤ, as a float otherwise.
    pub fn from_rational(geometry: Geometry, lambda: BigRational) -> SpectralParam {
        if (&lambda - geometry.rho()).is_integer() {
            SpectralParam {
                geometry,
                lambda: Lambda::Exact(lambda),
            }
        } else {
            let v = lambda.to_f64().unwrap_or(f64::NAN);
            SpectralParam {
                geometry,
                lambda: Lambda::Float(Complex64::new(v, 0.0)),
            }
        }
    }

    /// Float-mode λ, including complex values.
    pub fn from_complex(geometry: Geometry, lambda: Complex64) -> SpectralParam {
        SpectralParam {
            geometry,
            lambda: Lambda::Float(lambda),
        }
    }

    pub fn geometry(&self) -> &Geometry {
        &self.geometry
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.lambda, Lambda::Exact(_))
    }

    /// λ as an exact rational, when λ − ρ ∈ ℤ.
    pub fn lambda_rational(&self) -> Option<&BigRational> {
        match &self.lambda {
            Lambda::Exact(q) => Some(q),
            Lambda::Float(_) => None,
        }
    }

    /// The integer offset k = λ − ρ, when exact.
    pub fn offset(&self) -> Option<i64> {
        self.lambda_rational()
            .and_then(|q| to_i64(&(q - self.geometry.rho())))
    }

    pub fn lambda_c64(&self) -> Complex64 {
        match &self.lambda {
            Lambda::Exact(q) => Complex64::new(q.to_f64().unwrap_or(f64::NAN), 0.0),
            Lambda::Float(z) => *z,
        }
    }

    pub fn re_lambda(&self) -> f64 {
        self.lambda_c64().re
    }

    /// Same geometry, λ replaced by −λ. An exact parameter stays exact since
    /// −λ − ρ = −(k + 2ρ) is still an integer.
    pub fn negated(&self) -> SpectralParam {
        match &self.lambda {
            Lambda::Exact(q) => SpectralParam {
                geometry: self.geometry.clone(),
                lambda: Lambda::Exact(-q.clone()),
            },
            Lambda::Float(z) => SpectralParam {
                geometry: self.geometry.clone(),
                lambda: Lambda::Float(-z),
            },
        }
    }

    /// Hypergeometric parameters (a, b; c) = (λ+ρ+j, λ−ρ+1−j; 1+λ).
    pub fn hyper_abc(&self, j: u32) -> (Complex64, Complex64, Complex64) {
        let lam = self.lambda_c64();
        let rho = self.geometry.rho_f64();
        let jf = j as f64;
        (
            lam + rho + jf,
            lam - rho + 1.0 - jf,
            lam + 1.0,
        )
    }

    /// Exact rational (a, b; c) when λ is exact.
    pub fn hyper_abc_rational(&self, j: u32) -> Option<(BigRational, BigRational, BigRational)> {
        let lam = self.lambda_rational()?;
        let rho = self.geometry.rho();
        let jq = rational_int(j as i64);
        Some((
            lam + rho + &jq,
            lam - rho + BigRational::one() - &jq,
            lam + BigRational::one(),
        ))
    }

    /// The ladder index l ≥ 0 with j = λ − ρ + 1 + l, when j sits in the
    /// arithmetic progression.
    pub fn discrete_index(&self, j: u32) -> Option<u32> {
        let k = self.offset()?;
        let l = j as i64 - k - 1;
        (l >= 0).then_some(l as u32)
    }
}

/// Solution branches of the radial equation, tagged by their behavior at
/// t → +∞.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    /// The branch decaying like (cosh t)^(−λ−ρ); hypergeometric in x(t).
    Principal,
    /// The principal branch evaluated at −t.
    PrincipalReflected,
    /// The branch with the second exponent, growing like (cosh t)^(λ−ρ)
    /// relative to the principal one; λ replaced by −λ. Requires n even in
    /// exact mode.
    Secondary,
    /// The logarithmic second solution, for n odd and λ a positive integer.
    SecondaryLog,
}

impl Branch {
    pub fn label(&self) -> &'static str {
        match self {
            Branch::Principal => "principal",
            Branch::PrincipalReflected => "reflected",
            Branch::Secondary => "secondary",
            Branch::SecondaryLog => "secondary-log",
        }
    }
}

/// A selected radial solution: spectral parameter, K-type index and branch.
#[derive(Debug, Clone)]
pub struct RadialSolution {
    spectral: SpectralParam,
    j: u32,
    branch: Branch,
    l: Option<u32>,
}

impl RadialSolution {
    pub fn new(spectral: SpectralParam, j: u32, branch: Branch) -> Result<RadialSolution> {
        match branch {
            Branch::Principal | Branch::PrincipalReflected => {
                // λ ∉ −ℕ so that c = 1+λ avoids the series poles
                let (a, b, c) = spectral.hyper_abc(j);
                HypergeometricParams::new(a, b, c)?;
            }
            Branch::Secondary => {
                if spectral.is_exact() && !spectral.geometry().is_n_even() {
                    return Err(Error::domain(
                        "secondary branch needs n even in exact mode; for n odd use the \
                         logarithmic second solution"
                            .to_string(),
                    ));
                }
                let neg = spectral.negated();
                let (a, b, c) = neg.hyper_abc(j);
                HypergeometricParams::new(a, b, c)?;
            }
            Branch::SecondaryLog => {
                let ok = !spectral.geometry().is_n_even()
                    && spectral
                        .lambda_rational()
                        .map_or(false, |q| q.is_integer() && q.is_positive());
                if !ok {
                    return Err(Error::domain(
                        "logarithmic branch requires n odd and λ a positive integer".to_string(),
                    ));
                }
            }
        }
        let l = spectral.discrete_index(j);
        Ok(RadialSolution {
            spectral,
            j,
            branch,
            l,
        })
    }

    pub fn spectral(&self) -> &SpectralParam {
        &self.spectral
    }

    pub fn j(&self) -> u32 {
        self.j
    }

    pub fn branch(&self) -> Branch {
        self.branch
    }

    /// Ladder index l with j = λ−ρ+1+l, when applicable.
    pub fn discrete_index(&self) -> Option<u32> {
        self.l
    }

    /// Compiles the evaluator for this solution.
    pub fn evaluator(&self, tol: f64) -> Result<RadialEvaluator> {
        let (param, reflected) = match self.branch {
            Branch::Principal => (self.spectral.clone(), false),
            Branch::PrincipalReflected => (self.spectral.clone(), true),
            Branch::Secondary => (self.spectral.negated(), false),
            Branch::SecondaryLog => {
                let lam = self.spectral.lambda_rational().unwrap();
                let lam_int = to_i64(lam).unwrap() as u32;
                let (a, b, _c) = self.spectral.hyper_abc_rational(self.j).unwrap();
                let g = frobenius_second_solution(&a, &b, lam_int, DEFAULT_LOG_ORDER)?;
                let rho = self.spectral.geometry().rho_f64();
                let lamf = lam.to_f64().unwrap();
                return Ok(RadialEvaluator {
                    exponent: Complex64::new(-(lamf + rho), 0.0),
                    kernel: KernelForm::Log(g),
                    reflected: false,
                });
            }
        };
        let lam = param.lambda_c64();
        let rho = param.geometry().rho_f64();
        let exponent = -(lam + rho);
        let kernel = build_kernel(&param, self.j, tol)?;
        Ok(RadialEvaluator {
            exponent,
            kernel,
            reflected,
        })
    }
}

/// Kernel for the hypergeometric branches, chosen by the parameter pattern.
fn build_kernel(param: &SpectralParam, j: u32, tol: f64) -> Result<KernelForm> {
    // Exact Jacobi closed form: j = λ−ρ+1+l terminates the series.
    if let Some(form) = jacobi_radial_form(param, j) {
        let in_x = form.poly_in_x();
        let in_w = form.poly_in_w();
        return Ok(KernelForm::Polynomial {
            in_x: poly_to_c64(&in_x),
            in_w: poly_to_c64(&in_w),
        });
    }

    let (a, b, c) = param.hyper_abc(j);
    let p = HypergeometricParams::new(a, b, c)?;

    if let Some(degree) = p.terminating_degree() {
        // terminating outside the Jacobi progression (e.g. λ replaced by −λ)
        let (in_x, in_w) = if let Some((aq, bq, cq)) = param.hyper_abc_rational(j) {
            let poly = terminating_poly_exact(&aq, &bq, &cq, degree)?;
            (poly_to_c64(&poly), {
                let w = poly.compose_affine(&BigRational::one(), &rational_int(-1));
                poly_to_c64(&w)
            })
        } else {
            terminating_poly_c64(a, b, c, degree)?
        };
        return Ok(KernelForm::Polynomial { in_x, in_w });
    }

    // Euler transform F = w^(c−a−b) F(c−a, c−b; c; x): terminating when
    // c−a or c−b is a non-positive integer, which happens for all integer ρ.
    let ca = c - a;
    let cb = c - b;
    let euler = HypergeometricParams::new(ca, cb, c)
        .ok()
        .and_then(|q| q.terminating_degree());
    if let Some(degree) = euler {
        let s = c - a - b;
        let (in_x, in_w) = if let Some((aq, bq, cq)) = param.hyper_abc_rational(j) {
            let poly = terminating_poly_exact(&(&cq - &aq), &(&cq - &bq), &cq, degree)?;
            (poly_to_c64(&poly), {
                let w = poly.compose_affine(&BigRational::one(), &rational_int(-1));
                poly_to_c64(&w)
            })
        } else {
            terminating_poly_c64(ca, cb, c, degree)?
        };
        return Ok(KernelForm::PowerPolynomial { s, in_x, in_w });
    }

    Ok(KernelForm::series(a, b, c, tol))
}

fn terminating_poly_exact(
    a: &BigRational,
    b: &BigRational,
    c: &BigRational,
    degree: usize,
) -> Result<RatPoly> {
    let mut term = BigRational::one();
    let mut coeffs = vec![term.clone()];
    for m in 0..degree {
        let mf = rational_int(m as i64);
        let den = (c + &mf) * (&mf + BigRational::one());
        if den.is_zero() {
            return Err(Error::domain(format!(
                "terminating series hits the pole of (c)_m at c = {c}"
            )));
        }
        term = term * (a + &mf) * (b + &mf) / den;
        coeffs.push(term.clone());
    }
    Ok(RatPoly::new(coeffs))
}

fn terminating_poly_c64(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    degree: usize,
) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
    let mut term = Complex64::new(1.0, 0.0);
    let mut coeffs = vec![term];
    for m in 0..degree {
        let mf = m as f64;
        let den = (c + mf) * (mf + 1.0);
        if den.norm() < 1e-300 {
            return Err(Error::domain(
                "terminating series hits the pole of (c)_m".to_string(),
            ));
        }
        term *= (a + mf) * (b + mf) / den;
        coeffs.push(term);
    }
    let in_w = compose_affine_c64(&coeffs, 1.0, -1.0);
    Ok((coeffs, in_w))
}

/// Exact closed form φ = (l!/(λ+1)_l) (cosh t)^(−λ−ρ) P_l^(λ,λ)(tanh t),
/// available when j = λ−ρ+1+l with l ∈ ℕ₀.
#[derive(Debug, Clone)]
pub struct JacobiRadialForm {
    /// Ladder index l = j − (λ−ρ) − 1.
    pub l: u32,
    /// Normalization l!/(λ+1)_l making the form equal to φ itself.
    pub scale: BigRational,
    /// P_l^(λ,λ) as a polynomial in the variable tanh t.
    pub poly_tanh: RatPoly,
}

impl JacobiRadialForm {
    /// scale · P_l(1−2x): the kernel polynomial in x.
    pub fn poly_in_x(&self) -> RatPoly {
        self.poly_tanh
            .compose_affine(&BigRational::one(), &rational_int(-2))
            .scale(&self.scale)
    }

    /// scale · P_l(2w−1): the kernel polynomial in w = 1−x.
    pub fn poly_in_w(&self) -> RatPoly {
        self.poly_tanh
            .compose_affine(&-BigRational::one(), &rational_int(2))
            .scale(&self.scale)
    }
}

/// The Jacobi closed form of the principal branch, when j lies in the
/// arithmetic progression λ−ρ+1+ℕ₀.
pub fn jacobi_radial_form(param: &SpectralParam, j: u32) -> Option<JacobiRadialForm> {
    let l = param.discrete_index(j)?;
    let lam = param.lambda_rational()?.clone();
    let poly_tanh = jacobi_equal_index_coeffs(l as usize, &lam);
    let scale = pochhammer_rational(&BigRational::one(), l as usize)
        / pochhammer_rational(&(&lam + BigRational::one()), l as usize);
    Some(JacobiRadialForm {
        l,
        scale,
        poly_tanh,
    })
}

/// d/dt of (cosh t)^e Q(tanh t), divided by the common (cosh t)^e factor:
/// e·x·Q + (1−x²)·Q' as a polynomial in x = tanh t.
pub fn cosh_weighted_derivative(q: &RatPoly, exponent: &BigRational) -> RatPoly {
    let one_minus_x2 = RatPoly::new(vec![
        BigRational::one(),
        BigRational::zero(),
        -BigRational::one(),
    ]);
    q.mul_x()
        .scale(exponent)
        .add(&one_minus_x2.mul(&q.derivative()))
}

/// log cosh t without overflow for large |t|.
pub fn stable_ln_cosh(t: f64) -> f64 {
    ln_cosh(t)
}

/// x(t) = (1+e^(2t))⁻¹ ∈ (0,1), computed on a non-cancelling branch.
pub fn x_of_t(t: f64) -> f64 {
    if t > 0.0 {
        let e = (-2.0 * t).exp();
        e / (1.0 + e)
    } else {
        1.0 / (1.0 + (2.0 * t).exp())
    }
}

/// φ_(λ,j)(t): the principal radial eigenfunction.
pub fn radial_eigenfunction(s: &SpectralParam, j: u32, t: f64, tol: f64) -> Result<Complex64> {
    RadialSolution::new(s.clone(), j, Branch::Principal)?
        .evaluator(tol)?
        .value(t)
}

/// Δ-eigenvalue λ² − ρ².
pub fn casimir_eigenvalue(s: &SpectralParam) -> Complex64 {
    let lam = s.lambda_c64();
    let rho = s.geometry().rho_f64();
    lam * lam - rho * rho
}

/// Exact λ² − ρ² when λ is exact.
pub fn casimir_exact(s: &SpectralParam) -> Option<BigRational> {
    let lam = s.lambda_rational()?;
    let rho = s.geometry().rho();
    Some(lam * lam - rho * rho)
}

/// Residual of the radial equation for an arbitrary evaluator, with 5-point
/// central differences of step h.
pub fn radial_ode_residual<F: Fn(f64) -> Complex64>(
    s: &SpectralParam,
    j: u32,
    f: F,
    t: f64,
    h: f64,
) -> Complex64 {
    assert!(h > 0.0, "finite-difference step must be positive");
    let fm2 = f(t - 2.0 * h);
    let fm1 = f(t - h);
    let f0 = f(t);
    let fp1 = f(t + h);
    let fp2 = f(t + 2.0 * h);
    let d1 = (-fp2 + 8.0 * fp1 - 8.0 * fm1 + fm2) / (12.0 * h);
    let d2 = (-fp2 + 16.0 * fp1 - 30.0 * f0 + 16.0 * fm1 - fm2) / (12.0 * h * h);
    ode_combination(s, j, t, f0, d1, d2)
}

/// Real-valued wrapper around [`radial_ode_residual`].
pub fn radial_ode_residual_real<F: Fn(f64) -> f64>(
    s: &SpectralParam,
    j: u32,
    f: F,
    t: f64,
    h: f64,
) -> f64 {
    radial_ode_residual(s, j, |t| Complex64::new(f(t), 0.0), t, h).re
}

fn ode_combination(
    s: &SpectralParam,
    j: u32,
    t: f64,
    f0: Complex64,
    d1: Complex64,
    d2: Complex64,
) -> Complex64 {
    let rho2 = s.geometry().n() as f64 - 1.0; // 2ρ
    let jj = (j as f64) * (j as f64 + s.geometry().n() as f64 - 2.0);
    let sech2 = {
        let c = t.cosh();
        1.0 / (c * c)
    };
    d2 + rho2 * t.tanh() * d1 + jj * sech2 * f0 - casimir_eigenvalue(s) * f0
}

/// Relative residual of the radial equation using the evaluator's analytic
/// derivatives; the scale is the sum of the magnitudes of the four terms.
pub fn relative_ode_residual(
    s: &SpectralParam,
    j: u32,
    ev: &RadialEvaluator,
    t: f64,
) -> Result<f64> {
    let (v, d1, d2) = ev.value_d1_d2(t)?;
    let rho2 = s.geometry().n() as f64 - 1.0;
    let jj = (j as f64) * (j as f64 + s.geometry().n() as f64 - 2.0);
    let sech2 = {
        let c = t.cosh();
        1.0 / (c * c)
    };
    let kappa = casimir_eigenvalue(s);
    let res = d2 + rho2 * t.tanh() * d1 + jj * sech2 * v - kappa * v;
    // Scale without the tanh/sech attenuation, so zeros of individual terms
    // (parity zeros at t = 0, polynomial roots) cannot collapse it.
    let scale = d2.norm() + rho2 * d1.norm() + (jj + kappa.norm()) * v.norm();
    Ok(res.norm() / scale.max(1e-300))
}

/// Exact value of the Gauss limit constant, or its float stand-in.
#[derive(Debug, Clone)]
pub enum GaussLimit {
    Exact(ExactScalar),
    Float(Complex64),
}

impl GaussLimit {
    pub fn to_c64(&self) -> Complex64 {
        match self {
            GaussLimit::Exact(e) => Complex64::new(e.to_f64(), 0.0),
            GaussLimit::Float(z) => *z,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            GaussLimit::Exact(e) => e.is_zero(),
            GaussLimit::Float(z) => z.norm() == 0.0,
        }
    }
}

/// Probe of e^(−2λt) (cosh t)^(λ+ρ) φ̌(t) → A against the Γ-formula for A.
#[derive(Debug, Clone)]
pub struct AsymptoticConstant {
    pub estimate: Complex64,
    pub exact: GaussLimit,
}

/// Estimates the growth constant of the reflected branch at t = t_probe and
/// pairs it with A = Γ(1+λ)Γ(λ)/(Γ(λ+ρ+j)Γ(λ−ρ+1−j)), computed exactly when
/// λ − ρ ∈ ℤ.
pub fn asymptotic_constant(s: &SpectralParam, j: u32, t_probe: f64) -> Result<AsymptoticConstant> {
    if s.re_lambda() <= 0.0 {
        return Err(Error::domain("asymptotic constant requires Re λ > 0"));
    }
    if t_probe < 8.0 {
        return Err(Error::domain("probe point must satisfy t ≥ 8"));
    }
    let lam = s.lambda_c64();
    let rho = s.geometry().rho_f64();
    let phi = RadialSolution::new(s.clone(), j, Branch::Principal)?
        .evaluator(DEFAULT_SERIES_TOL)?
        .value(-t_probe)?;
    let scale = (-2.0 * lam * t_probe + (lam + rho) * ln_cosh(t_probe)).exp();
    let estimate = scale * phi;

    let exact = if let Some((a, b, c)) = s.hyper_abc_rational(j) {
        GaussLimit::Exact(gauss_limit_constant_exact(&a, &b, &c)?)
    } else {
        let (a, b, c) = s.hyper_abc(j);
        GaussLimit::Float(gauss_limit_constant(&HypergeometricParams::new(a, b, c)?)?)
    };
    Ok(AsymptoticConstant { estimate, exact })
}

/// The second solution: the λ → −λ branch for n even, the logarithmic
/// Frobenius branch for n odd.
pub fn second_solution(s: &SpectralParam, j: u32, t: f64) -> Result<Complex64> {
    let branch = if s.geometry().is_n_even() {
        Branch::Secondary
    } else {
        Branch::SecondaryLog
    };
    RadialSolution::new(s.clone(), j, branch)?
        .evaluator(DEFAULT_SERIES_TOL)?
        .value(t)
}

#[cfg(test)]
mod tests;
