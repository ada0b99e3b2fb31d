//! Puiseux coefficients of the eigenvalue pair that splits at a critical point.
//!
//! Near `rho_c` the two coalescing eigenvalues behave as
//!
//! ```text
//! lambda(rho) = lambda_c [1 +- a eps^(1/2) + b eps + O(eps^(3/2))],  eps = rho - rho_c
//! ```
//!
//! Two independent routes give `a` and `b`: derivatives of `lambda(mu)` and
//! `rho(mu)` at `mu_c` fed through series reversion, and closed forms in `t_c`.
//! `a` is only defined up to sign; `b` is sign-fixed.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::chebyshev::cheb_t_int;
use crate::critical::CriticalPoint;
use crate::error::{KmsError, Result};
use crate::wrap_angle;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PuiseuxParams {
    pub lambda_c: Complex64,
    pub alpha: Complex64,
    pub beta: Complex64,
    pub a: Complex64,
    pub b: Complex64,
    pub theta_a: f64,
    pub theta_b: f64,
    /// `theta_b - 2 theta_a`, reduced to `(-pi, pi]`.
    pub big_theta: f64,
    /// Bifurcation strength `(|a|^2 - 2|b| cos Theta) / 2`.
    pub c: f64,
}

impl PuiseuxParams {
    pub fn from_ab(lambda_c: Complex64, a: Complex64, b: Complex64) -> Self {
        let theta_a = a.arg();
        let theta_b = b.arg();
        let big_theta = wrap_angle(theta_b - 2.0 * theta_a);
        let c = 0.5 * (a.norm_sqr() - 2.0 * b.norm() * big_theta.cos());
        Self {
            lambda_c,
            alpha: a * lambda_c,
            beta: b * lambda_c,
            a,
            b,
            theta_a,
            theta_b,
            big_theta,
            c,
        }
    }

    /// Same expansion with the other square-root branch for `a`.
    pub fn flipped(&self) -> Self {
        Self::from_ab(self.lambda_c, -self.a, self.b)
    }

    /// `|a|^2 - 2|b| cos Theta`, which must be nonzero for level curves.
    pub fn level_condition(&self) -> f64 {
        2.0 * self.c
    }
}

/// `lambda'`, `lambda''`, `rho''`, `rho'''` at `mu_c` (`rho'` vanishes there).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DerivativeBundle {
    pub lambda_c_p: Complex64,
    pub lambda_c_pp: Complex64,
    pub rho_c_pp: Complex64,
    pub rho_c_ppp: Complex64,
}

fn nonzero(z: Complex64) -> Result<Complex64> {
    if z.norm() == 0.0 || !z.is_finite() {
        Err(KmsError::ZeroLeadingCoefficient)
    } else {
        Ok(z)
    }
}

/// Reversion of `w = a1 z + a2 z^2`: coefficients of `w` and `w^2` in `z(w)`.
pub fn series_invert_regular(a1: Complex64, a2: Complex64) -> Result<(Complex64, Complex64)> {
    let a1 = nonzero(a1)?;
    Ok((1.0 / a1, -a2 / (a1 * a1 * a1)))
}

/// Reversion of `w = a2 z^2 + a3 z^3`: coefficients of `sqrt(w)` and `w` in
/// `z(w)`, principal square root.
pub fn series_invert_puiseux(a2: Complex64, a3: Complex64) -> Result<(Complex64, Complex64)> {
    let a2 = nonzero(a2)?;
    Ok((1.0 / a2.sqrt(), -a3 / (2.0 * a2 * a2)))
}

/// `f = f0 + f1 z + f2 z^2`, `g = g0 + g2 z^2 + g3 z^3`: eliminates `z` and
/// returns the coefficients of `1`, `(g - g0)^(1/2)` and `(g - g0)` in `f(g)`.
pub fn compose_puiseux(
    f0: Complex64,
    f1: Complex64,
    f2: Complex64,
    g0: Complex64,
    g2: Complex64,
    g3: Complex64,
) -> Result<(Complex64, Complex64, Complex64)> {
    let _ = g0;
    let f1 = nonzero(f1)?;
    let g2 = nonzero(g2)?;
    Ok((
        f0,
        f1 / g2.sqrt(),
        (2.0 * f2 * g2 - f1 * g3) / (2.0 * g2 * g2),
    ))
}

pub fn derivatives_at_critical(cp: &CriticalPoint) -> Result<DerivativeBundle> {
    let n = cp.n as f64;
    let mu = cp.mu_c;
    let mp = cp.eig_type.mp();
    let (s, c) = (mu.sin(), mu.cos());
    let floor = |z: Complex64, what: &'static str| {
        if z.norm() < 1e-12 {
            Err(KmsError::DegenerateMu { mu, what })
        } else {
            Ok(z)
        }
    };
    let s = floor(s, "sin(mu_c)")?;
    let den = floor(1.0 + mp * ((n - 1.0) * mu).cos(), "1 -+ cos((n-1)mu_c)")?;

    let lambda_c_p = n * (c + mp * (n * mu).cos()) / s;
    let lambda_c_pp = (-n * s - 2.0 * lambda_c_p * c - mp * n * n * (n * mu).sin()) / s;
    let rho_c_pp = -lambda_c_p * s / den;
    let rho_c_ppp = (mp * 2.0 * (n - 1.0) * rho_c_pp * ((n - 1.0) * mu).sin()
        - lambda_c_pp * s
        - 2.0 * lambda_c_p * c)
        / den;
    if rho_c_pp.norm() <= 1e-12 * (1.0 + lambda_c_p.norm()) {
        return Err(KmsError::HypothesisViolation(format!(
            "rho''(mu_c) vanishes at rho_c = {}",
            cp.rho_c
        )));
    }
    Ok(DerivativeBundle {
        lambda_c_p,
        lambda_c_pp,
        rho_c_pp,
        rho_c_ppp,
    })
}

pub fn puiseux_from_derivatives(
    lambda_c: Complex64,
    d: &DerivativeBundle,
) -> Result<PuiseuxParams> {
    if lambda_c.norm() == 0.0 {
        return Err(KmsError::HypothesisViolation("lambda_c = 0".into()));
    }
    if d.lambda_c_p.norm() == 0.0 || d.rho_c_pp.norm() == 0.0 {
        return Err(KmsError::HypothesisViolation(
            "lambda'_c or rho''_c vanishes".into(),
        ));
    }
    let alpha = d.lambda_c_p * (2.0 / d.rho_c_pp).sqrt();
    let beta = (3.0 * d.lambda_c_pp * d.rho_c_pp - d.lambda_c_p * d.rho_c_ppp)
        / (3.0 * d.rho_c_pp * d.rho_c_pp);
    let p = PuiseuxParams::from_ab(lambda_c, alpha / lambda_c, beta / lambda_c);
    Ok(PuiseuxParams { alpha, beta, ..p })
}

/// Closed forms for `a` and `b` directly in `t_c`.
pub fn puiseux_ab_from_t(cp: &CriticalPoint) -> Result<PuiseuxParams> {
    let n = cp.n;
    let nf = n as f64;
    let t = cp.t_c;
    let mp = cp.eig_type.mp();
    let pm = cp.eig_type.pm();
    let one_minus_t2 = 1.0 - t * t;
    if one_minus_t2.norm() < 1e-12 {
        return Err(KmsError::DegenerateT(t));
    }
    let tn = cheb_t_int(n as u32, t);
    let tn1 = cheb_t_int(n as u32 - 1, t);
    let t_mp_tn = t + mp * tn;
    if t_mp_tn.norm() < 1e-12 * (1.0 + tn.norm()) {
        return Err(KmsError::DegenerateT(t));
    }
    let a = Complex64::i() * (2.0 / nf).sqrt() * (t_mp_tn * (1.0 + mp * tn1) / one_minus_t2).sqrt();
    let t2 = t * t;
    let rhs = 12.0 * t2 + 5.0 * nf * (nf + 1.0) * (t2 - 1.0) + 4.0 * (nf + 1.0) * tn1 * tn1
        - 4.0 * (nf - 2.0) * tn * tn
        + mp * (nf + 1.0) * (4.0 * t2 - 1.0) * tn1
        + pm * 3.0 * (nf - 7.0) * t * tn;
    let b = rhs / (6.0 * nf * (t2 - 1.0) * t_mp_tn);
    if a.norm() == 0.0 {
        return Err(KmsError::HypothesisViolation(format!("a = 0 at t_c = {t}")));
    }
    Ok(PuiseuxParams::from_ab(cp.lambda_c, a, b))
}

/// Both branches `lambda_c (1 +- a sqrt(eps) + b eps)`, principal `sqrt(eps)`.
pub fn eval_truncated_series(
    lambda_c: Complex64,
    p: &PuiseuxParams,
    eps: Complex64,
) -> (Complex64, Complex64) {
    let root = eps.sqrt();
    let lin = p.b * eps;
    (
        lambda_c * (1.0 + p.a * root + lin),
        lambda_c * (1.0 - p.a * root + lin),
    )
}

/// True if `p` and `q` agree with `a` compared up to sign.
pub fn same_up_to_sign(p: &PuiseuxParams, q: &PuiseuxParams, rel: f64) -> bool {
    let close = |x: Complex64, y: Complex64| (x - y).norm() <= rel * y.norm().max(1e-300);
    (close(p.a, q.a) || close(-p.a, q.a)) && close(p.b, q.b)
}
