//! Which eigenspaces meet L², the tempered space, and the L^p scale.
//!
//! All decisions are made analytically from exact arithmetic on λ − ρ and the
//! known asymptotic exponents of the solution branches; quadrature never
//! decides membership, it corroborates it. The discrete K-type set is
//!
//!   D_λ = ℕ₀ ∩ (λ−ρ+ℕ)   when λ−ρ ∈ ℤ and λ > 0,   ∅ otherwise,
//!
//! and a principal radial function is square integrable against the weight
//! cosh^(n−1) t exactly when its K-type index lies in D_λ.

use num::{BigRational, Signed};

use crate::eigen::{Branch, RadialSolution, SpectralParam, DEFAULT_SERIES_TOL};
use crate::error::{Error, Result};
use crate::quad::integrate;
use crate::scalar::rational_int;

/// Parity of a function class under the antipodal symmetry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParityClass {
    Even,
    Odd,
    None,
}

impl ParityClass {
    pub fn label(&self) -> &'static str {
        match self {
            ParityClass::Even => "even",
            ParityClass::Odd => "odd",
            ParityClass::None => "none",
        }
    }

    fn of_index(l: u32) -> ParityClass {
        if l % 2 == 0 {
            ParityClass::Even
        } else {
            ParityClass::Odd
        }
    }
}

/// The set of K-type indices whose principal radial function is square
/// integrable: empty, or a ray {j_min, j_min+1, …}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscreteKTypeSet {
    j_min: Option<u32>,
}

impl DiscreteKTypeSet {
    pub fn is_empty(&self) -> bool {
        self.j_min.is_none()
    }

    pub fn j_min(&self) -> Option<u32> {
        self.j_min
    }

    pub fn contains(&self, j: u32) -> bool {
        self.j_min.map_or(false, |m| j >= m)
    }

    /// The first `count` members.
    pub fn head(&self, count: usize) -> Vec<u32> {
        match self.j_min {
            Some(m) => (m..).take(count).collect(),
            None => Vec::new(),
        }
    }
}

/// D_λ for Re λ ≥ 0: nonempty exactly when λ−ρ ∈ ℤ and λ > 0, with
/// j_min = max(0, λ−ρ+1).
pub fn discrete_ktype_set(s: &SpectralParam) -> Result<DiscreteKTypeSet> {
    if s.re_lambda() < 0.0 {
        return Err(Error::domain("discrete K-type set requires Re λ ≥ 0"));
    }
    let j_min = match (s.lambda_rational(), s.offset()) {
        (Some(lam), Some(k)) if lam.is_positive() => Some((k + 1).max(0) as u32),
        _ => None,
    };
    Ok(DiscreteKTypeSet { j_min })
}

/// Parity of the square-integrable family: even when λ−ρ is odd, odd when
/// λ−ρ is even, none when the family is empty.
pub fn discrete_family_parity(s: &SpectralParam) -> ParityClass {
    match (s.lambda_rational(), s.offset()) {
        (Some(lam), Some(k)) if lam.is_positive() => {
            if k.rem_euclid(2) == 1 {
                ParityClass::Even
            } else {
                ParityClass::Odd
            }
        }
        _ => ParityClass::None,
    }
}

/// Joint classification verdict for one eigenvalue parameter.
///
/// The `*_discrete` flags state that the parity eigenspace meets L²
/// non-trivially. The containment flags (`*_in_l2`, `*_tempered`) and the
/// multiplicities are populated only by the small-λ classifier, where the
/// whole parity eigenspace is one irreducible module.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TheoremVerdict {
    pub even_discrete: bool,
    pub odd_discrete: bool,
    pub even_in_l2: bool,
    pub odd_in_l2: bool,
    pub even_tempered: bool,
    pub odd_tempered: bool,
    pub multiplicity_full: u32,
    pub multiplicity_temp: u32,
}

/// Which parities carry discrete series at this λ (Re λ > 0): the even
/// eigenspace meets L² iff λ ∈ ρ+1+2ℤ, the odd one iff λ ∈ ρ+2ℤ.
pub fn classify_discrete_series(s: &SpectralParam) -> Result<TheoremVerdict> {
    if s.re_lambda() <= 0.0 {
        return Err(Error::domain("discrete-series classification requires Re λ > 0"));
    }
    let parity = discrete_family_parity(s);
    Ok(TheoremVerdict {
        even_discrete: parity == ParityClass::Even,
        odd_discrete: parity == ParityClass::Odd,
        even_in_l2: false,
        odd_in_l2: false,
        even_tempered: false,
        odd_tempered: false,
        multiplicity_full: 0,
        multiplicity_temp: 0,
    })
}

/// Classification in the regime λ ∈ ρ−ℕ with 0 < λ < ρ, where both parity
/// eigenspaces are irreducible and equivalent: one of them is contained in
/// L² (hence tempered), the other is not tempered, and the underlying module
/// has multiplicity 2 in the full smooth eigenspace against 1 in the
/// tempered part. Returns None outside the regime.
pub fn classify_small_lambda(s: &SpectralParam) -> Option<TheoremVerdict> {
    let lam = s.lambda_rational()?;
    let k = s.offset()?;
    if !(lam.is_positive() && k <= -1) {
        return None;
    }
    let parity = discrete_family_parity(s);
    let even_side = parity == ParityClass::Even;
    Some(TheoremVerdict {
        even_discrete: even_side,
        odd_discrete: !even_side,
        even_in_l2: even_side,
        odd_in_l2: !even_side,
        even_tempered: even_side,
        odd_tempered: !even_side,
        multiplicity_full: 2,
        multiplicity_temp: 1,
    })
}

/// L²/tempered/L^p verdict for one radial solution.
#[derive(Debug, Clone, PartialEq)]
pub struct MembershipVerdict {
    pub in_l2: bool,
    pub tempered: bool,
    /// The solution lies in L^p for p > p*; None when in L² or in no L^p.
    pub lp_threshold: Option<f64>,
    /// Exact p* = 2ρ/(ρ−λ) when λ is exact.
    pub lp_threshold_exact: Option<BigRational>,
    pub parity_class: ParityClass,
}

/// Membership decided from the asymptotic exponents at t → ±∞.
///
/// A principal solution with j ∈ D_λ decays like (cosh t)^(−λ−ρ) in both
/// directions and is square integrable and tempered. Every other branch has
/// the exponent λ−ρ on at least one side: for Re λ < ρ it enters L^p exactly
/// for p > p* = 2 + 2Reλ/(ρ−Reλ), and for Re λ ≥ ρ it is in no L^p.
pub fn lp_membership(s: &SpectralParam, j: u32, branch: Branch) -> Result<MembershipVerdict> {
    if s.re_lambda() <= 0.0 {
        return Err(Error::domain("membership classification requires Re λ > 0"));
    }
    let dset = discrete_ktype_set(s)?;
    let decaying = matches!(branch, Branch::Principal | Branch::PrincipalReflected)
        && dset.contains(j);
    if decaying {
        let parity = s
            .discrete_index(j)
            .map_or(ParityClass::None, ParityClass::of_index);
        return Ok(MembershipVerdict {
            in_l2: true,
            tempered: true,
            lp_threshold: None,
            lp_threshold_exact: None,
            parity_class: parity,
        });
    }

    let rho = s.geometry().rho_f64();
    let re = s.re_lambda();
    let (threshold, threshold_exact) = if re < rho {
        let t = 2.0 * rho / (rho - re);
        let exact = s.lambda_rational().map(|lam| {
            let rho_q = s.geometry().rho();
            rational_int(2) * rho_q / (rho_q - lam)
        });
        (Some(t), exact)
    } else {
        (None, None)
    };

    // Secondary branches in exact mode (n even) have definite parity too:
    // their ladder index against −λ is j + λ + ρ − 1.
    let parity = if branch == Branch::Secondary {
        s.negated()
            .discrete_index(j)
            .map_or(ParityClass::None, ParityClass::of_index)
    } else {
        ParityClass::None
    };

    Ok(MembershipVerdict {
        in_l2: false,
        tempered: false,
        lp_threshold: threshold,
        lp_threshold_exact: threshold_exact,
        parity_class: parity,
    })
}

/// Expected exponent g in ∫^T |φ|^p cosh^(2ρ) ≈ C e^(gT) for the growing
/// direction of a branch, or the (negative) decay exponent when the branch
/// is integrable.
pub fn predicted_growth_exponent(s: &SpectralParam, j: u32, branch: Branch, p: f64) -> f64 {
    let rho = s.geometry().rho_f64();
    let re = s.re_lambda();
    let decaying = matches!(branch, Branch::Principal | Branch::PrincipalReflected)
        && discrete_ktype_set(s).map_or(false, |d| d.contains(j));
    if decaying {
        -p * (re + rho) + 2.0 * rho
    } else {
        p * (re - rho) + 2.0 * rho
    }
}

/// Truncated weighted norm with its convergence diagnostic.
#[derive(Debug, Clone)]
pub struct WeightedNorm {
    /// ∫ over the full truncated window.
    pub value: f64,
    /// Same integral with the window shrunk by 5 on each side.
    pub inner_value: f64,
    /// |value − inner| / |value|.
    pub rel_change: f64,
    pub classification: NormClassification,
    pub quad_error: f64,
}

/// Converging/diverging call made from the two truncation levels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NormClassification {
    Converging,
    Diverging {
        observed_rate: f64,
        predicted_rate: f64,
    },
}

/// Relative change below which the truncated integral counts as converged.
pub const NORM_CONVERGENCE_THRESHOLD: f64 = 1e-6;

/// Adaptive quadrature of ∫ |φ(t)|^p cosh^(2ρ) t dt over [−T, T], compared
/// against the window [−(T−5), T−5] to classify convergence, with the
/// divergence rate checked against the branch's asymptotic exponent.
///
/// The logarithmic branch is integrated over [1/2, T] instead: its series
/// representation converges there, and its growth (hence the classification)
/// is visible at +∞ alone.
pub fn weighted_lp_norm(
    s: &SpectralParam,
    j: u32,
    branch: Branch,
    p: f64,
    t_max: f64,
) -> Result<WeightedNorm> {
    if p < 1.0 {
        return Err(Error::domain("weighted norm requires p ≥ 1"));
    }
    if t_max <= 5.0 {
        return Err(Error::domain(
            "truncation must exceed 5 to leave room for the inner window",
        ));
    }
    let rho2 = s.geometry().weight_exponent() as f64;
    // overflow guard from the branch's own asymptotic exponent: the
    // integrand peaks at the boundary like e^(gT) when growing and stays
    // O(1) otherwise
    let g = predicted_growth_exponent(s, j, branch, p);
    if g.max(0.0) * t_max + 10.0 > 690.0 {
        return Err(Error::domain(format!(
            "weighted norm overflows f64 at p = {p}, T = {t_max}"
        )));
    }

    let ev = RadialSolution::new(s.clone(), j, branch)?.evaluator(DEFAULT_SERIES_TOL)?;
    let integrand = move |t: f64| -> Result<f64> {
        let v = ev.value(t)?;
        Ok(v.norm().powf(p) * (rho2 * crate::eigen::stable_ln_cosh(t)).exp())
    };

    let lo_full = if branch == Branch::SecondaryLog { 0.5 } else { -t_max };
    let lo_inner = if branch == Branch::SecondaryLog {
        0.5
    } else {
        -(t_max - 5.0)
    };
    let full = integrate(&integrand, lo_full, t_max, 1e-10, 1e-300)?;
    let inner = integrate(&integrand, lo_inner, t_max - 5.0, 1e-10, 1e-300)?;

    let rel_change = (full.value - inner.value).abs() / full.value.abs().max(1e-300);
    let classification = if rel_change < NORM_CONVERGENCE_THRESHOLD {
        NormClassification::Converging
    } else {
        NormClassification::Diverging {
            observed_rate: (full.value / inner.value).ln() / 5.0,
            predicted_rate: predicted_growth_exponent(s, j, branch, p),
        }
    };
    Ok(WeightedNorm {
        value: full.value,
        inner_value: inner.value,
        rel_change,
        classification,
        quad_error: full.error_estimate,
    })
}
