//! Adaptive Runge–Kutta integration of the radial equation.
//!
//! The complementary-parity solution family has no closed form, so its basis
//! is built by integrating φ'' = −2ρ tanh t φ' − j(j+n−2) sech²t φ + (λ²−ρ²) φ
//! outward from t = 0 with parity-fixing initial conditions. A Dormand–Prince
//! 5(4) pair with PI-free step control and step-to-grid output keeps the
//! samples at exactly the requested points.

use crate::eigen::SpectralParam;
use crate::error::{Error, Result};

/// Coefficient set of the radial equation for fixed (n, λ, j), real λ.
#[derive(Debug, Clone, Copy)]
pub struct RadialOde {
    two_rho: f64,
    jj: f64,
    kappa: f64,
}

impl RadialOde {
    pub fn new(s: &SpectralParam, j: u32) -> Result<RadialOde> {
        let lam = s.lambda_c64();
        if lam.im != 0.0 {
            return Err(Error::domain(
                "ODE integration path supports real λ only".to_string(),
            ));
        }
        let n = s.geometry().n() as f64;
        let rho = s.geometry().rho_f64();
        Ok(RadialOde {
            two_rho: n - 1.0,
            jj: j as f64 * (j as f64 + n - 2.0),
            kappa: lam.re * lam.re - rho * rho,
        })
    }

    #[inline]
    fn rhs(&self, t: f64, y: [f64; 2]) -> [f64; 2] {
        let sech2 = {
            let c = t.cosh();
            1.0 / (c * c)
        };
        [
            y[1],
            -self.two_rho * t.tanh() * y[1] - self.jj * sech2 * y[0] + self.kappa * y[0],
        ]
    }
}

/// One sampled point of an integrated solution.
#[derive(Debug, Clone, Copy)]
pub struct OdeSample {
    pub t: f64,
    pub value: f64,
    pub derivative: f64,
}

// Dormand–Prince 5(4) tableau.
const A: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const C: [f64; 6] = [1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

fn dopri_step(ode: &RadialOde, t: f64, y: [f64; 2], h: f64) -> ([f64; 2], f64) {
    let mut k = [[0.0f64; 2]; 7];
    k[0] = ode.rhs(t, y);
    for stage in 0..6 {
        let mut ys = y;
        for (i, ki) in k.iter().enumerate().take(stage + 1) {
            ys[0] += h * A[stage][i] * ki[0];
            ys[1] += h * A[stage][i] * ki[1];
        }
        k[stage + 1] = ode.rhs(t + C[stage] * h, ys);
    }
    let mut y5 = y;
    let mut y4 = y;
    for i in 0..7 {
        y5[0] += h * B5[i] * k[i][0];
        y5[1] += h * B5[i] * k[i][1];
        y4[0] += h * B4[i] * k[i][0];
        y4[1] += h * B4[i] * k[i][1];
    }
    let err = ((y5[0] - y4[0]).powi(2) + (y5[1] - y4[1]).powi(2)).sqrt();
    (y5, err)
}

/// Integrates from `t0` with initial (value, derivative), sampling the
/// solution at the strictly increasing `grid` (all ≥ t0).
pub fn integrate_radial(
    ode: &RadialOde,
    t0: f64,
    y0: (f64, f64),
    grid: &[f64],
    rel_tol: f64,
) -> Result<Vec<OdeSample>> {
    let abs_tol = 1e-30;
    let mut out = Vec::with_capacity(grid.len());
    let mut t = t0;
    let mut y = [y0.0, y0.1];
    let mut h: f64 = 1e-3;
    let mut steps = 0usize;

    for &target in grid {
        if target < t - 1e-14 {
            return Err(Error::domain(
                "sample grid must be increasing and start at or after t0".to_string(),
            ));
        }
        while t < target {
            let clipped = h.min(target - t);
            let (ynew, err) = dopri_step(ode, t, y, clipped);
            let scale = abs_tol
                + rel_tol
                    * (y[0].abs() + y[1].abs())
                        .max(ynew[0].abs() + ynew[1].abs())
                        .max(1e-12);
            if err <= scale {
                t += clipped;
                y = ynew;
                // grow only when the full step was taken
                if (clipped - h).abs() < f64::EPSILON * h {
                    let factor = f64::min(0.9 * (scale / err.max(1e-300)).powf(0.2), 4.0);
                    h *= factor.max(1.0);
                }
            } else {
                h = clipped * (0.9 * (scale / err).powf(0.2)).max(0.2);
                if h < 1e-13 {
                    return Err(Error::Quadrature(
                        "ODE step size underflow".to_string(),
                    ));
                }
            }
            steps += 1;
            if steps > 5_000_000 {
                return Err(Error::Quadrature("ODE step budget exhausted".to_string()));
            }
        }
        out.push(OdeSample {
            t: target,
            value: y[0],
            derivative: y[1],
        });
    }
    Ok(out)
}
