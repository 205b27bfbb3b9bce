//! Zonal spherical harmonics on S^(n−1).
//!
//! The unique degree-j harmonic invariant under the stabilizer of the pole,
//! normalized to 1 there, is a function of the polar angle alone. It is
//! realized here as the ratio of equal-index Jacobi polynomials with index
//! ν = (n−3)/2; the Δ_K eigenvalue −j(j+n−2) is verified numerically rather
//! than assumed.

use num::{BigRational, One, ToPrimitive};

use crate::error::{Error, Result};
use crate::poly::RatPoly;
use crate::specfun::{jacobi_equal_index_coeffs, jacobi_norm_at_one, jacobi_poly};

use super::Geometry;

fn nu(g: &Geometry) -> BigRational {
    g.rho() - BigRational::one()
}

/// h_j(s) for s = cos(polar angle) ∈ [−1, 1].
pub fn zonal_harmonic(g: &Geometry, j: u32, s: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&s) {
        return Err(Error::domain(format!(
            "zonal harmonic argument must satisfy |s| ≤ 1, got {s}"
        )));
    }
    let nu_f = g.rho_f64() - 1.0;
    let norm = jacobi_norm_at_one(j as usize, &nu(g)).to_f64().unwrap();
    Ok(jacobi_poly(j as usize, nu_f, s) / norm)
}

/// Exact rational h_j(s).
pub fn zonal_harmonic_exact(g: &Geometry, j: u32, s: &BigRational) -> BigRational {
    let nu_q = nu(g);
    let p = jacobi_equal_index_coeffs(j as usize, &nu_q);
    p.eval_rational(s) / jacobi_norm_at_one(j as usize, &nu_q)
}

/// The zonal polynomial in the variable s = cos θ, normalized to 1 at s = 1.
pub fn zonal_poly(g: &Geometry, j: u32) -> RatPoly {
    let nu_q = nu(g);
    let norm = jacobi_norm_at_one(j as usize, &nu_q);
    jacobi_equal_index_coeffs(j as usize, &nu_q).scale(&norm.recip())
}

/// Max relative residual of Δ_K h_j = −j(j+n−2) h_j over a θ-grid, with the
/// angular Laplacian d²/dθ² + (n−2) cot θ d/dθ applied by 5-point central
/// differences. This is the independent check of the closed-form choice.
pub fn zonal_laplacian_residual(g: &Geometry, j: u32, grid_points: usize) -> Result<f64> {
    let h_step = 1e-3;
    let eigen = -(j as f64) * (j as f64 + g.n() as f64 - 2.0);
    // keep clear of the coordinate poles at θ = 0, π
    let lo = 0.3;
    let hi = std::f64::consts::PI - 0.3;
    let m = grid_points.max(2);
    let mut residuals = Vec::with_capacity(m);
    let mut grid_scale: f64 = 0.0;
    for i in 0..m {
        let theta = lo + (hi - lo) * i as f64 / (m - 1) as f64;
        let f = |th: f64| zonal_harmonic(g, j, th.cos()).unwrap();
        let fm2 = f(theta - 2.0 * h_step);
        let fm1 = f(theta - h_step);
        let f0 = f(theta);
        let fp1 = f(theta + h_step);
        let fp2 = f(theta + 2.0 * h_step);
        let d1 = (-fp2 + 8.0 * fp1 - 8.0 * fm1 + fm2) / (12.0 * h_step);
        let d2 = (-fp2 + 16.0 * fp1 - 30.0 * f0 + 16.0 * fm1 - fm2) / (12.0 * h_step * h_step);
        let lap = d2 + (g.n() as f64 - 2.0) / theta.tan() * d1;
        residuals.push((lap - eigen * f0).abs());
        grid_scale = grid_scale.max(d2.abs() + (eigen * f0).abs());
    }
    // relative to the scale of the identity over the whole grid, so isolated
    // zeros of the harmonic do not dominate
    let worst = residuals.into_iter().fold(0.0f64, f64::max);
    Ok(worst / grid_scale.max(1e-300))
}
