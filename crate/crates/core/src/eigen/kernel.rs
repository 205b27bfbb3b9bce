//! Evaluation kernels for radial solutions.
//!
//! Every branch has the shape φ(t) = (cosh t)^e · V(x(t)) with
//! x(t) = (1+e^(2t))⁻¹ ∈ (0,1). The kernel computes V and its first two
//! x-derivatives; the evaluator applies the chain rule in t.
//!
//! V is represented so that evaluation stays stable over the whole line:
//! polynomials carry coefficient vectors in both x and w = 1−x; terminating
//! Euler transforms carry w^s times such a polynomial; genuinely infinite
//! series are summed in x for x ≤ 1/2 and through the two-term connection at
//! w = 1−x otherwise. The connection coefficients use the floating-point
//! Gamma, never the exact one, so that exact-arithmetic checks remain an
//! independent route.

use num::complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::RatPoly;
use crate::specfun::{gamma_float, FloatGamma, FrobeniusSolution, SERIES_CAP};

/// Stable complementary pair x(t) = (1+e^(2t))⁻¹ and w(t) = 1 − x(t).
#[derive(Debug, Clone, Copy)]
pub(crate) struct XPair {
    pub x: f64,
    pub w: f64,
}

pub(crate) fn x_pair(t: f64) -> XPair {
    // Each side is computed from a non-cancelling expression.
    XPair {
        x: 1.0 / (1.0 + (2.0 * t).exp()),
        w: 1.0 / (1.0 + (-2.0 * t).exp()),
    }
}

/// log(cosh t) without overflow for large |t|.
pub(crate) fn ln_cosh(t: f64) -> f64 {
    let a = t.abs();
    a + (-2.0 * a).exp().ln_1p() - std::f64::consts::LN_2
}

fn horner3(coeffs: &[Complex64], z: f64) -> (Complex64, Complex64, Complex64) {
    let zero = Complex64::new(0.0, 0.0);
    let mut v = zero;
    let mut d1 = zero;
    let mut d2 = zero;
    for &c in coeffs.iter().rev() {
        d2 = d2 * z + d1 * 2.0;
        d1 = d1 * z + v;
        v = v * z + c;
    }
    (v, d1, d2)
}

pub(crate) fn poly_to_c64(p: &RatPoly) -> Vec<Complex64> {
    p.to_f64_coeffs()
        .into_iter()
        .map(|c| Complex64::new(c, 0.0))
        .collect()
}

/// p(α + βz) for a complex coefficient vector, by Horner over polynomials.
pub(crate) fn compose_affine_c64(coeffs: &[Complex64], alpha: f64, beta: f64) -> Vec<Complex64> {
    let mut acc: Vec<Complex64> = Vec::new();
    for &c in coeffs.iter().rev() {
        // acc = acc·(α + βz) + c
        let mut next = vec![Complex64::new(0.0, 0.0); acc.len() + 1];
        for (k, &a) in acc.iter().enumerate() {
            next[k] += a * alpha;
            next[k + 1] += a * beta;
        }
        if next.is_empty() {
            next.push(Complex64::new(0.0, 0.0));
        }
        next[0] += c;
        acc = next;
    }
    acc
}

/// Gauss series with first and second derivatives, summed at z with tail
/// control. Used both for direct arguments and for connection arguments.
fn series3(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    z: f64,
    tol: f64,
) -> Result<(Complex64, Complex64, Complex64)> {
    let zero = Complex64::new(0.0, 0.0);
    let mut f = zero;
    let mut f1 = zero;
    let mut f2 = zero;
    let mut coef = Complex64::new(1.0, 0.0);
    // z^m, z^(m-1), z^(m-2)
    let mut zp0 = 1.0;
    let mut zp1 = 0.0;
    let mut zp2 = 0.0;
    let cmax = c.norm();
    let (amax, bmax) = (a.norm(), b.norm());
    let mut quiet = 0usize;
    for m in 0..SERIES_CAP {
        let mf = m as f64;
        let term = coef * zp0;
        f += term;
        if m >= 1 {
            f1 += coef * mf * zp1;
        }
        if m >= 2 {
            f2 += coef * (mf * (mf - 1.0)) * zp2;
        }

        let scale = f.norm().max(1e-300);
        let incr = term.norm() * (1.0 + mf + mf * mf);
        if incr <= tol * scale {
            quiet += 1;
            if quiet >= 3 && mf > cmax + 2.0 {
                let r = z.abs() * (mf + 1.0 + amax) * (mf + 1.0 + bmax)
                    / ((mf + 2.0) * (mf + 1.0 - cmax));
                if r < 1.0 {
                    return Ok((f, f1, f2));
                }
            }
        } else {
            quiet = 0;
        }

        coef *= (a + mf) * (b + mf) / ((c + mf) * (mf + 1.0));
        zp2 = zp1;
        zp1 = zp0;
        zp0 *= z;
    }
    Err(Error::Convergence {
        context: "radial kernel series",
        terms: SERIES_CAP,
        last_term: (coef * zp0).norm(),
    })
}

/// Continuation strategy for a genuinely infinite series past x = 1/2.
#[derive(Debug, Clone)]
pub(crate) enum Connection {
    /// C₁ F(a,b;a+b−c+1;w) + C₂ w^(c−a−b) F(c−a,c−b;c−a−b+1;w).
    Generic(Complex64, Complex64),
    /// a+b−c = m ∈ ℕ⁺ (real parameters): the connection picks up log w.
    IntegerCase {
        m: u32,
        /// Γ(m)Γ(c)/(Γ(a)Γ(b)), weighting the finite w^(−m) block.
        front: f64,
        /// −(−1)^m Γ(c)/(Γ(a−m)Γ(b−m)), weighting the log series.
        tail: f64,
    },
    Unavailable,
}

/// Connection value at w = 1−x for a+b−c = m ∈ ℕ⁺ (real parameters):
///
///   F = front · Σ_{k<m} u_k w^(k−m) + tail · Σ_k e_k w^k (ln w + d_k),
///
/// with u_k = (a−m)_k(b−m)_k/(k!(1−m)_k), e_k = (a)_k(b)_k/(k!(k+m)!) and
/// d_k = ψ(a+k) + ψ(b+k) − ψ(k+1) − ψ(k+m+1). Returns (F, dF/dw, d²F/dw²).
fn integer_connection(
    a: f64,
    b: f64,
    m: u32,
    front: f64,
    tail: f64,
    w: f64,
    tol: f64,
) -> Result<(f64, f64, f64)> {
    use crate::specfun::digamma;
    let mf = m as f64;

    // finite block front · Σ u_k w^(k−m)
    let mut s1 = 0.0;
    let mut s1d = 0.0;
    let mut s1dd = 0.0;
    let mut u = 1.0;
    for k in 0..m {
        let kf = k as f64;
        let pw = w.powf(kf - mf);
        s1 += u * pw;
        s1d += u * (kf - mf) * pw / w;
        s1dd += u * (kf - mf) * (kf - mf - 1.0) * pw / (w * w);
        if k + 1 < m {
            u *= (a - mf + kf) * (b - mf + kf) / ((kf + 1.0) * (1.0 - mf + kf));
        }
    }

    // log series tail · Σ e_k w^k (ln w + d_k)
    let lw = w.ln();
    let mut e = 1.0;
    for k in 1..=m {
        e /= k as f64; // e_0 = 1/m!
    }
    let mut d = digamma(a) + digamma(b) - digamma(1.0) - digamma(mf + 1.0);
    let mut s2 = 0.0;
    let mut s2d = 0.0;
    let mut s2dd = 0.0;
    let mut wp = 1.0; // w^k
    let mut quiet = 0usize;
    let mut converged = false;
    for k in 0..SERIES_CAP {
        let kf = k as f64;
        let block = lw + d;
        s2 += e * wp * block;
        if k >= 1 {
            s2d += e * wp / w * (kf * block + 1.0);
        } else {
            s2d += e / w; // k = 0 contributes w^(−1) from the log derivative
        }
        if k >= 2 {
            s2dd += e * wp / (w * w) * (kf * (kf - 1.0) * block + 2.0 * kf - 1.0);
        } else if k == 1 {
            s2dd += e / w; // d²/dw²[w ln w] = 1/w
        } else {
            s2dd += -e / (w * w); // d²/dw²[ln w] = −1/w²
        }

        let incr = (e * wp).abs() * (block.abs() + 1.0) * (1.0 + kf + kf * kf);
        if incr <= tol * s2.abs().max(1.0) {
            quiet += 1;
            if quiet >= 3 {
                converged = true;
                break;
            }
        } else {
            quiet = 0;
        }

        d += 1.0 / (a + kf) + 1.0 / (b + kf) - 1.0 / (kf + 1.0) - 1.0 / (kf + mf + 1.0);
        e *= (a + kf) * (b + kf) / ((kf + 1.0) * (kf + mf + 1.0));
        wp *= w;
    }
    if !converged {
        return Err(Error::Convergence {
            context: "integer-case connection series",
            terms: SERIES_CAP,
            last_term: (e * wp).abs(),
        });
    }
    Ok((
        front * s1 + tail * s2,
        front * s1d + tail * s2d,
        front * s1dd + tail * s2dd,
    ))
}

/// The V-factor of a radial branch, with its evaluation strategy.
#[derive(Debug, Clone)]
pub(crate) enum KernelForm {
    /// V is a polynomial; coefficients stored in x and in w = 1−x.
    Polynomial {
        in_x: Vec<Complex64>,
        in_w: Vec<Complex64>,
    },
    /// V = w^s · p with p polynomial (Euler-transformed terminating series).
    PowerPolynomial {
        s: Complex64,
        in_x: Vec<Complex64>,
        in_w: Vec<Complex64>,
    },
    /// V = F(a,b;c;x): direct series for x ≤ 1/2, connection beyond.
    Series {
        a: Complex64,
        b: Complex64,
        c: Complex64,
        s: Complex64,
        conn: Connection,
        tol: f64,
    },
    /// V = G(x), the logarithmic second solution.
    Log(FrobeniusSolution),
}

impl KernelForm {
    pub(crate) fn series(a: Complex64, b: Complex64, c: Complex64, tol: f64) -> Self {
        let s = c - a - b;
        // Connection coefficients for the regime x > 1/2:
        //   C₁ = Γ(c)Γ(c−a−b) / (Γ(c−a)Γ(c−b)),
        //   C₂ = Γ(c)Γ(a+b−c) / (Γ(a)Γ(b)).
        // They degenerate for integer c−a−b; callers in that regime never
        // reach this kernel (the Euler transform terminates first).
        let near_int = (s.im == 0.0) && (s.re - s.re.round()).abs() < 1e-9;
        // A Γ pole in a denominator zeroes that term; overflow loses the kernel.
        let over_gamma = |num: Complex64, d1: Complex64, d2: Complex64| -> Option<Complex64> {
            match (gamma_float(d1), gamma_float(d2)) {
                (FloatGamma::Value(g1), FloatGamma::Value(g2)) => Some(num / (g1 * g2)),
                (FloatGamma::Pole, _) | (_, FloatGamma::Pole) => Some(Complex64::new(0.0, 0.0)),
                _ => None,
            }
        };
        let conn = if near_int {
            // a+b−c = m ∈ ℕ⁺ with real parameters: logarithmic connection
            let m = (-s.re).round();
            let real = a.im == 0.0 && b.im == 0.0 && c.im == 0.0;
            if real && m >= 1.0 {
                let gm = gamma_float(Complex64::new(m, 0.0)).value();
                let gc = gamma_float(c).value();
                let front = match (gm, gc, over_gamma(Complex64::new(1.0, 0.0), a, b)) {
                    (Some(gm), Some(gc), Some(inv_ab)) => Some((gm * gc * inv_ab).re),
                    _ => None,
                };
                let sign = if (m as i64) % 2 == 0 { -1.0 } else { 1.0 };
                let tail = gc.and_then(|gc| {
                    over_gamma(Complex64::new(1.0, 0.0), a - m, b - m)
                        .map(|inv| (gc * inv).re * sign)
                });
                match (front, tail) {
                    (Some(front), Some(tail)) => Connection::IntegerCase {
                        m: m as u32,
                        front,
                        tail,
                    },
                    _ => Connection::Unavailable,
                }
            } else {
                Connection::Unavailable
            }
        } else {
            match (
                gamma_float(c).value(),
                gamma_float(s).value(),
                gamma_float(-s).value(),
            ) {
                (Some(gc), Some(gs), Some(gns)) => {
                    let c1 = over_gamma(gc * gs, c - a, c - b);
                    let c2 = over_gamma(gc * gns, a, b);
                    match (c1, c2) {
                        (Some(c1), Some(c2)) => Connection::Generic(c1, c2),
                        _ => Connection::Unavailable,
                    }
                }
                _ => Connection::Unavailable,
            }
        };
        KernelForm::Series {
            a,
            b,
            c,
            s,
            conn,
            tol,
        }
    }

    /// (V, dV/dx, d²V/dx²) at the stable coordinate pair.
    pub(crate) fn eval(&self, p: XPair) -> Result<(Complex64, Complex64, Complex64)> {
        match self {
            KernelForm::Polynomial { in_x, in_w } => {
                if p.x <= 0.5 {
                    Ok(horner3(in_x, p.x))
                } else {
                    let (v, d1, d2) = horner3(in_w, p.w);
                    Ok((v, -d1, d2))
                }
            }
            KernelForm::PowerPolynomial { s, in_x, in_w } => {
                let s = *s;
                if p.w <= 0.0 {
                    return Err(Error::domain(
                        "power-polynomial kernel needs w = 1 - x > 0".to_string(),
                    ));
                }
                let lw = p.w.ln();
                let ws = (s * lw).exp();
                let (q, dq_dx, d2q_dx2) = if p.x <= 0.5 {
                    horner3(in_x, p.x)
                } else {
                    let (v, d1, d2) = horner3(in_w, p.w);
                    (v, -d1, d2)
                };
                // V = w^s q(x), d/dx w^s = −s w^(s−1)
                let v = ws * q;
                let d1 = ws * (dq_dx - s * q / p.w);
                let d2 = ws * (d2q_dx2 - 2.0 * s * dq_dx / p.w + s * (s - 1.0) * q / (p.w * p.w));
                Ok((v, d1, d2))
            }
            KernelForm::Series {
                a,
                b,
                c,
                s,
                conn,
                tol,
            } => {
                if p.x <= 0.5 {
                    return series3(*a, *b, *c, p.x, *tol);
                }
                match conn {
                    Connection::Generic(c1, c2) => {
                        let one = Complex64::new(1.0, 0.0);
                        let (f1v, f1d, f1dd) = series3(*a, *b, *a + *b - *c + one, p.w, *tol)?;
                        let (f2v, f2d, f2dd) = series3(*c - *a, *c - *b, *s + one, p.w, *tol)?;
                        let lw = p.w.ln();
                        let ws = (*s * lw).exp();
                        // V(w) = C₁F₁(w) + C₂ w^s F₂(w); then dV/dx = −dV/dw.
                        let v = c1 * f1v + c2 * ws * f2v;
                        let dw = c1 * f1d + c2 * ws * (f2d + *s * f2v / p.w);
                        let d2w = c1 * f1dd
                            + c2 * ws
                                * (f2dd
                                    + 2.0 * *s * f2d / p.w
                                    + *s * (*s - 1.0) * f2v / (p.w * p.w));
                        Ok((v, -dw, d2w))
                    }
                    Connection::IntegerCase { m, front, tail } => {
                        let (v, dw, d2w) =
                            integer_connection(a.re, b.re, *m, *front, *tail, p.w, *tol)?;
                        Ok((
                            Complex64::new(v, 0.0),
                            Complex64::new(-dw, 0.0),
                            Complex64::new(d2w, 0.0),
                        ))
                    }
                    Connection::Unavailable => Err(Error::domain(
                        "series kernel cannot cross x = 1/2: connection coefficients degenerate"
                            .to_string(),
                    )),
                }
            }
            KernelForm::Log(g) => {
                let v = g.eval(p.x)?;
                let d1 = g.eval_d1(p.x)?;
                let d2 = g.eval_d2(p.x)?;
                Ok((
                    Complex64::new(v, 0.0),
                    Complex64::new(d1, 0.0),
                    Complex64::new(d2, 0.0),
                ))
            }
        }
    }
}

/// Compiled evaluator for one radial solution: value and t-derivatives.
#[derive(Debug, Clone)]
pub struct RadialEvaluator {
    pub(crate) exponent: Complex64,
    pub(crate) kernel: KernelForm,
    pub(crate) reflected: bool,
}

impl RadialEvaluator {
    /// φ(t).
    pub fn value(&self, t: f64) -> Result<Complex64> {
        Ok(self.value_d1_d2(t)?.0)
    }

    /// dφ/dt.
    pub fn derivative(&self, t: f64) -> Result<Complex64> {
        Ok(self.value_d1_d2(t)?.1)
    }

    /// (φ, φ', φ'') at t, all analytic (no finite differences).
    pub fn value_d1_d2(&self, t: f64) -> Result<(Complex64, Complex64, Complex64)> {
        let tt = if self.reflected { -t } else { t };
        let p = x_pair(tt);
        let (v, vx, vxx) = self.kernel.eval(p)?;

        let e = self.exponent;
        let g = (e * ln_cosh(tt)).exp();
        let tanh = p.w - p.x;
        let sech2 = 4.0 * p.x * p.w;
        let xdot = -2.0 * p.x * p.w;
        let xddot = 4.0 * p.x * p.w * (p.w - p.x);

        let val = g * v;
        let d1 = g * (e * tanh * v + xdot * vx);
        let d2 = g
            * ((e * e * tanh * tanh + e * sech2) * v
                + (2.0 * e * tanh * xdot + xddot) * vx
                + xdot * xdot * vxx);
        if self.reflected {
            Ok((val, -d1, d2))
        } else {
            Ok((val, d1, d2))
        }
    }

    /// φ(t) for branches with real parameters.
    pub fn value_real(&self, t: f64) -> Result<f64> {
        Ok(self.value(t)?.re)
    }
}
