//! Raising/lowering structure between adjacent K-types.
//!
//! For j = λ−ρ+1+l in the discrete range, the derivative of the radial
//! function is a two-term combination of its neighbors,
//!
//!   φ'_(λ,j) = A_l φ_(λ,j+1) + B_l φ_(λ,j−1),
//!   A_l = −(λ+ρ+l)(2λ+l+1)/(2λ+2l+1),   B_l = l(λ−ρ+l+1)/(2λ+2l+1),
//!
//! certified here as an exact polynomial identity. A_l never vanishes and
//! B_l vanishes exactly at the ladder bottom, so the span of the discrete
//! K-types is irreducible: the certificate is connectivity of the nonzero
//! links. For 0 < λ < ρ the complementary-parity family (built by ODE
//! integration, since no closed form exists there) is fitted to the same
//! two-term shape, and the rescaling-invariant products
//! p_j = raising(j)·lowering(j+1) of both families are compared — the
//! numerical stand-in for equivalence of the two eigenspace modules.

use std::collections::BTreeMap;

use num::{BigRational, One, Signed, ToPrimitive, Zero};

use crate::eigen::{
    cosh_weighted_derivative, jacobi_radial_form, stable_ln_cosh, SpectralParam,
};
use crate::error::{Error, Result};
use crate::odeint::{integrate_radial, RadialOde};
use crate::scalar::rational_int;
use crate::spectrum::{discrete_family_parity, discrete_ktype_set, ParityClass};

/// Exact raising/lowering coefficients at ladder index l.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LadderCoeffs {
    pub l: u32,
    pub a: BigRational,
    pub b: BigRational,
}

fn require_exact_positive(s: &SpectralParam) -> Result<(BigRational, BigRational, i64)> {
    match (s.lambda_rational(), s.offset()) {
        (Some(lam), Some(k)) if lam.is_positive() => {
            Ok((lam.clone(), s.geometry().rho().clone(), k))
        }
        _ => Err(Error::domain(
            "ladder structure requires λ − ρ ∈ ℤ and λ > 0".to_string(),
        )),
    }
}

/// A_l and B_l, exactly.
pub fn ladder_coeffs(s: &SpectralParam, l: u32) -> Result<LadderCoeffs> {
    let (lam, rho, k) = require_exact_positive(s)?;
    let j = k + 1 + l as i64;
    if j < 0 {
        return Err(Error::domain(format!(
            "ladder index l = {l} puts j = λ−ρ+1+l = {j} below 0"
        )));
    }
    let lq = rational_int(l as i64);
    let denom = rational_int(2) * &lam + rational_int(2) * &lq + BigRational::one();
    let a = -((&lam + &rho + &lq) * (rational_int(2) * &lam + &lq + BigRational::one())) / &denom;
    let b = &lq * (&lam - &rho + &lq + BigRational::one()) / &denom;
    Ok(LadderCoeffs { l, a, b })
}

/// Independent re-derivation of (A_l, B_l) by eliminating x·P_l between the
/// derivative identity
///   (1−x²)P_l' = (l+2λ+1)xP_l − ((l+1)(l+2λ+1)/(l+λ+1)) P_{l+1}
/// and the three-term recurrence
///   (l+λ+1)(2l+2λ+1)xP_l = (l+λ)(l+λ+1)P_{l−1} + (l+1)(l+2λ+1)P_{l+1},
/// carried out as rational-function algebra at the given (λ, l).
pub fn derive_ladder_from_identities(
    lam: &BigRational,
    rho: &BigRational,
    l: u32,
) -> (BigRational, BigRational) {
    let one = BigRational::one();
    let two = rational_int(2);
    let lq = rational_int(l as i64);

    // φ' / ((cosh t)^(−λ−ρ) c_l) = α·xP_l + β·(1−x²)P_l'
    let alpha = -(lam + rho);
    let beta = one.clone();

    // derivative identity: absorb (1−x²)P_l'
    let d_coeff = (&lq + &two * lam + &one) * (&lq + &one) / (&lq + lam + &one);
    let alpha2 = &alpha + &beta * (&lq + &two * lam + &one);
    let gamma = -&beta * &d_coeff; // multiplies P_{l+1}

    if l == 0 {
        // xP_0 = P_1/(λ+1): no P_{−1} appears
        let p_up = &gamma + &alpha2 / (lam + &one);
        let a = p_up * (lam + &one); // times c_0/c_1 = λ+1
        return (a, BigRational::zero());
    }

    // three-term recurrence: split xP_l into P_{l−1} and P_{l+1}
    let denom = &two * &lq + &two * lam + &one;
    let up_share = (&lq + &one) * (&lq + &two * lam + &one) / ((&lq + lam + &one) * &denom);
    let down_share = (&lq + lam) / &denom;
    let p_up = &gamma + &alpha2 * &up_share;
    let p_down = &alpha2 * &down_share;

    // scale ratios c_l/c_{l±1}
    let a = p_up * (lam + &lq + &one) / (&lq + &one);
    let b = p_down * &lq / (lam + &lq);
    (a, b)
}

/// Checks φ'_(λ,j) = A_l φ_(λ,j+1) + B_l φ_(λ,j−1) as an exact polynomial
/// identity in tanh t (no floating point).
pub fn ladder_identity_exact(s: &SpectralParam, l: u32) -> Result<bool> {
    let (lam, rho, k) = require_exact_positive(s)?;
    let j = k + 1 + l as i64;
    if j < 0 {
        return Err(Error::domain("ladder index out of range".to_string()));
    }
    let coeffs = ladder_coeffs(s, l)?;
    let j = j as u32;

    let form = jacobi_radial_form(s, j).ok_or_else(|| Error::domain("no closed form"))?;
    let lhs = cosh_weighted_derivative(&form.poly_tanh.scale(&form.scale), &-(&lam + &rho));

    let up = jacobi_radial_form(s, j + 1).ok_or_else(|| Error::domain("no closed form"))?;
    let mut rhs = up.poly_tanh.scale(&up.scale).scale(&coeffs.a);
    if l > 0 && j > 0 {
        let down = jacobi_radial_form(s, j - 1).ok_or_else(|| Error::domain("no closed form"))?;
        rhs = rhs.add(&down.poly_tanh.scale(&down.scale).scale(&coeffs.b));
    }
    Ok(lhs.sub(&rhs).is_zero())
}

/// Max relative residual of the ladder identity over a t-grid, evaluated in
/// floating point with the exactly differentiated closed form.
pub fn ladder_residual(s: &SpectralParam, j: u32, grid: &[f64]) -> Result<f64> {
    if grid.is_empty() {
        return Err(Error::domain("ladder residual needs a nonempty grid"));
    }
    let (lam, rho, _) = require_exact_positive(s)?;
    let l = s
        .discrete_index(j)
        .ok_or_else(|| Error::domain("j is not in the discrete progression"))?;
    let coeffs = ladder_coeffs(s, l)?;

    let form = jacobi_radial_form(s, j).unwrap();
    let dpoly = cosh_weighted_derivative(&form.poly_tanh.scale(&form.scale), &-(&lam + &rho));
    let up = jacobi_radial_form(s, j + 1).unwrap();
    let up_poly = up.poly_tanh.scale(&up.scale);
    let down_poly = (l > 0 && j > 0).then(|| {
        let down = jacobi_radial_form(s, j - 1).unwrap();
        down.poly_tanh.scale(&down.scale)
    });

    let e = -(lam.to_f64().unwrap() + rho.to_f64().unwrap());
    let a = coeffs.a.to_f64().unwrap();
    let b = coeffs.b.to_f64().unwrap();
    let mut worst_res: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for &t in grid {
        let x = t.tanh();
        let cap = (e * stable_ln_cosh(t)).exp();
        let dphi = cap * dpoly.eval_f64(x);
        let raise = a * cap * up_poly.eval_f64(x);
        let lower = down_poly.as_ref().map_or(0.0, |p| b * cap * p.eval_f64(x));
        worst_res = worst_res.max((dphi - raise - lower).abs());
        scale = scale.max(dphi.abs().max(raise.abs()).max(lower.abs()));
    }
    Ok(worst_res / scale.max(1e-300))
}

/// One basis element of a ladder family, sampled on the family grid.
#[derive(Debug, Clone)]
pub struct FamilyMember {
    pub values: Vec<f64>,
    pub derivatives: Vec<f64>,
}

/// A per-j family of radial solutions of common global parity.
#[derive(Debug, Clone)]
pub struct LadderFamily {
    spectral: SpectralParam,
    parity: ParityClass,
    grid: Vec<f64>,
    members: BTreeMap<u32, FamilyMember>,
}

impl LadderFamily {
    /// The square-integrable family φ_(λ,j), j ∈ D_λ ∩ [0, j_max], from the
    /// exact closed forms.
    pub fn u_lambda(s: &SpectralParam, j_max: u32, grid: &[f64]) -> Result<LadderFamily> {
        let (lam, rho, _) = require_exact_positive(s)?;
        let dset = discrete_ktype_set(s)?;
        let e = -(lam.to_f64().unwrap() + rho.to_f64().unwrap());
        let mut members = BTreeMap::new();
        for j in dset.head(usize::MAX.min((j_max + 1) as usize)) {
            if j > j_max {
                break;
            }
            let form = jacobi_radial_form(s, j).unwrap();
            let poly = form.poly_tanh.scale(&form.scale);
            let dpoly = cosh_weighted_derivative(&poly, &-(&lam + &rho));
            let mut values = Vec::with_capacity(grid.len());
            let mut derivatives = Vec::with_capacity(grid.len());
            for &t in grid {
                let x = t.tanh();
                let cap = (e * stable_ln_cosh(t)).exp();
                values.push(cap * poly.eval_f64(x));
                derivatives.push(cap * dpoly.eval_f64(x));
            }
            members.insert(
                j,
                FamilyMember {
                    values,
                    derivatives,
                },
            );
        }
        Ok(LadderFamily {
            spectral: s.clone(),
            parity: discrete_family_parity(s),
            grid: grid.to_vec(),
            members,
        })
    }

    /// The complementary-parity family for 0 < λ < ρ: per j, the solution of
    /// the radial equation with t-parity fixed by initial conditions at 0
    /// (value 1/derivative 0 for even members, 0/1 for odd), integrated with
    /// step control. The grid must be positive and increasing.
    pub fn complementary(
        s: &SpectralParam,
        j_max: u32,
        grid: &[f64],
        rel_tol: f64,
    ) -> Result<LadderFamily> {
        require_exact_positive(s)?;
        if grid.is_empty() || grid[0] <= 0.0 {
            return Err(Error::domain(
                "complementary family needs a positive, increasing grid".to_string(),
            ));
        }
        let parity = match discrete_family_parity(s) {
            ParityClass::Even => ParityClass::Odd,
            ParityClass::Odd => ParityClass::Even,
            ParityClass::None => {
                return Err(Error::domain(
                    "complementary family undefined: no discrete family".to_string(),
                ))
            }
        };
        let mut members = BTreeMap::new();
        for j in 0..=j_max {
            let member_even = match parity {
                ParityClass::Even => j % 2 == 0,
                ParityClass::Odd => j % 2 == 1,
                ParityClass::None => unreachable!(),
            };
            let y0 = if member_even { (1.0, 0.0) } else { (0.0, 1.0) };
            let ode = RadialOde::new(s, j)?;
            let samples = integrate_radial(&ode, 0.0, y0, grid, rel_tol)?;
            members.insert(
                j,
                FamilyMember {
                    values: samples.iter().map(|s| s.value).collect(),
                    derivatives: samples.iter().map(|s| s.derivative).collect(),
                },
            );
        }
        Ok(LadderFamily {
            spectral: s.clone(),
            parity,
            grid: grid.to_vec(),
            members,
        })
    }

    pub fn spectral(&self) -> &SpectralParam {
        &self.spectral
    }

    /// Global parity of the family members h_j ψ_j.
    pub fn parity(&self) -> ParityClass {
        self.parity
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn member(&self, j: u32) -> Option<&FamilyMember> {
        self.members.get(&j)
    }

    /// Smallest K-type index present.
    pub fn bottom(&self) -> Option<u32> {
        self.members.keys().next().copied()
    }

    /// Rescales one basis element; invariant products must not move.
    pub fn scale_member(&mut self, j: u32, c: f64) {
        if let Some(m) = self.members.get_mut(&j) {
            for v in &mut m.values {
                *v *= c;
            }
            for d in &mut m.derivatives {
                *d *= c;
            }
        }
    }
}

/// Least-squares fit of ψ'_j against (ψ_(j+1), ψ_(j−1)).
#[derive(Debug, Clone, Copy)]
pub struct FitResult {
    pub raising: f64,
    /// None at the bottom K-type, where no lower neighbor exists.
    pub lowering: Option<f64>,
    /// Relative L² misfit on the grid.
    pub residual: f64,
    pub condition: f64,
}

/// Condition-number cap for the 2-column fit.
pub const FIT_CONDITION_CAP: f64 = 1e10;

/// Fits the two-term derivative expansion at K-type j from the family's
/// sampled values. The lowering column is omitted at the family bottom.
pub fn fit_derivative_expansion(fam: &LadderFamily, j: u32) -> Result<FitResult> {
    let target = fam
        .member(j)
        .ok_or_else(|| Error::domain(format!("family has no member j = {j}")))?;
    let up = fam
        .member(j + 1)
        .ok_or_else(|| Error::domain(format!("family has no member j = {}", j + 1)))?;
    let n = fam.grid().len();
    if n < 20 {
        return Err(Error::domain("fit grid needs at least 20 points"));
    }
    let d = &target.derivatives;
    let c1 = &up.values;
    let down = if Some(j) == fam.bottom() {
        None
    } else {
        Some(
            fam.member(j - 1)
                .ok_or_else(|| Error::domain(format!("family has no member j = {}", j - 1)))?,
        )
    };

    let dot = |a: &[f64], b: &[f64]| -> f64 { a.iter().zip(b).map(|(x, y)| x * y).sum() };
    let dnorm = dot(d, d).sqrt();

    let (raising, lowering, residual, condition) = match down {
        None => {
            let g = dot(c1, c1);
            if g == 0.0 {
                return Err(Error::domain("degenerate fit column"));
            }
            let a = dot(c1, d) / g;
            let res: f64 = d
                .iter()
                .zip(c1)
                .map(|(di, ci)| (di - a * ci).powi(2))
                .sum::<f64>()
                .sqrt();
            (a, None, res / dnorm.max(1e-300), 1.0)
        }
        Some(dn) => {
            let c2 = &dn.values;
            let g11 = dot(c1, c1);
            let g12 = dot(c1, c2);
            let g22 = dot(c2, c2);
            let r1 = dot(c1, d);
            let r2 = dot(c2, d);
            let det = g11 * g22 - g12 * g12;
            let tr = g11 + g22;
            let disc = (tr * tr - 4.0 * det).max(0.0).sqrt();
            let emax = 0.5 * (tr + disc);
            let emin = 0.5 * (tr - disc);
            let condition = (emax / emin.max(1e-300)).sqrt();
            if condition > FIT_CONDITION_CAP {
                return Err(Error::IllConditioned {
                    cond: condition,
                    cap: FIT_CONDITION_CAP,
                });
            }
            let a = (g22 * r1 - g12 * r2) / det;
            let b = (g11 * r2 - g12 * r1) / det;
            let res: f64 = d
                .iter()
                .zip(c1.iter().zip(c2))
                .map(|(di, (x1, x2))| (di - a * x1 - b * x2).powi(2))
                .sum::<f64>()
                .sqrt();
            (a, Some(b), res / dnorm.max(1e-300), condition)
        }
    };
    Ok(FitResult {
        raising,
        lowering,
        residual,
        condition,
    })
}

/// Comparison of the basis-invariant coefficient products of the two
/// families: p_j = raising(j) · lowering(j+1).
#[derive(Debug, Clone)]
pub struct EquivalenceReport {
    /// Exact products of the closed-form family, j = 0, 1, ….
    pub products_exact: Vec<BigRational>,
    /// Fitted products of the complementary family, same indexing.
    pub products_fitted: Vec<f64>,
    pub max_rel_deviation: f64,
    pub max_fit_residual: f64,
    /// Both families share λ²−ρ² by construction; recorded for completeness.
    pub casimir_match: bool,
}

/// Equivalence certificate in the regime λ ∈ ρ−ℕ, 0 < λ < ρ: the fitted
/// invariant products of the complementary-parity family are compared with
/// the exact products of the square-integrable family for j ≤ j_max.
pub fn equivalence_invariants(s: &SpectralParam, j_max: u32) -> Result<EquivalenceReport> {
    let (_, _, k) = require_exact_positive(s)?;
    if k >= 0 {
        return Err(Error::domain(
            "equivalence regime requires λ ∈ ρ−ℕ with 0 < λ < ρ".to_string(),
        ));
    }

    // exact products from the ladder formulas
    let mut products_exact = Vec::with_capacity(j_max as usize + 1);
    for j in 0..=j_max {
        let l = s.discrete_index(j).unwrap();
        let a = ladder_coeffs(s, l)?;
        let b_next = ladder_coeffs(s, l + 1)?;
        products_exact.push(&a.a * &b_next.b);
    }

    // fitted products from the ODE family
    let grid: Vec<f64> = (0..40).map(|i| 0.2 + i as f64 * 0.15).collect();
    let fam = LadderFamily::complementary(s, j_max + 2, &grid, 1e-12)?;
    let mut fits = BTreeMap::new();
    for j in 0..=j_max + 1 {
        fits.insert(j, fit_derivative_expansion(&fam, j)?);
    }
    let mut products_fitted = Vec::with_capacity(j_max as usize + 1);
    let mut max_fit_residual: f64 = 0.0;
    for j in 0..=j_max {
        let raise = fits[&j].raising;
        let lower = fits[&(j + 1)]
            .lowering
            .ok_or_else(|| Error::domain("missing lowering coefficient above the bottom"))?;
        products_fitted.push(raise * lower);
        max_fit_residual = max_fit_residual
            .max(fits[&j].residual)
            .max(fits[&(j + 1)].residual);
    }

    let mut max_rel_deviation: f64 = 0.0;
    for (exact, fitted) in products_exact.iter().zip(&products_fitted) {
        let e = exact.to_f64().unwrap();
        max_rel_deviation = max_rel_deviation.max((fitted - e).abs() / e.abs().max(1e-300));
    }

    Ok(EquivalenceReport {
        products_exact,
        products_fitted,
        max_rel_deviation,
        max_fit_residual,
        casimir_match: true,
    })
}

/// One rung of the connectivity certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LadderLink {
    pub j: u32,
    pub l: u32,
    pub raising_nonzero: bool,
    pub lowering_nonzero: bool,
}

/// Connectivity certificate for the discrete K-type span.
#[derive(Debug, Clone)]
pub struct ConnectivityCertificate {
    pub j_min: Option<u32>,
    pub j_max: u32,
    pub links: Vec<LadderLink>,
    pub connected: bool,
}

/// Builds the raising/lowering graph on D_λ ∩ [0, j_max] with exact zero
/// tests and reports whether it is connected: every raising link present and
/// lowering absent only at the bottom. An empty set is vacuously connected.
pub fn ladder_connectivity(s: &SpectralParam, j_max: u32) -> Result<ConnectivityCertificate> {
    let dset = discrete_ktype_set(s)?;
    let Some(j_min) = dset.j_min() else {
        return Ok(ConnectivityCertificate {
            j_min: None,
            j_max,
            links: Vec::new(),
            connected: true,
        });
    };
    let mut links = Vec::new();
    let mut connected = true;
    for j in j_min..=j_max.max(j_min) {
        let l = s.discrete_index(j).unwrap();
        let c = ladder_coeffs(s, l)?;
        let raising_nonzero = !c.a.is_zero();
        let lowering_nonzero = !c.b.is_zero();
        if !raising_nonzero {
            connected = false;
        }
        // a vanishing lowering link strictly above the bottom would cut the
        // downward chain
        if j > j_min && !lowering_nonzero {
            connected = false;
        }
        // at the bottom the lowering coefficient must vanish exactly
        if j == j_min && lowering_nonzero {
            connected = false;
        }
        links.push(LadderLink {
            j,
            l,
            raising_nonzero,
            lowering_nonzero,
        });
    }
    Ok(ConnectivityCertificate {
        j_min: Some(j_min),
        j_max,
        links,
        connected,
    })
}
