//! Critical (exceptional) points: the `rho_c` at which `K_n(rho_c)` has the
//! double eigenvalue `-n`.
//!
//! A double type-1 eigenvalue occurs exactly at zeros `t_c` of
//! `q1(n, t) = (U_{n-1}(t) - n) / (t - 1)` (even `n`) or `/(t^2 - 1)` (odd `n`);
//! a double type-2 eigenvalue at zeros of `q2(n, t) = (U_{n-1}(t) + n) / (t + 1)`
//! (even `n`) or `U_{n-1}(t) + n` (odd `n`). The critical parameter is then
//! `U_{(n-1)/2}(t_c) / U_{(n-3)/2}(t_c)` (type 1) or
//! `T_{(n+1)/2}(t_c) / T_{(n-1)/2}(t_c)` (type 2).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::chebyshev::{self, ChebDegree};
use crate::error::{KmsError, Result};
use crate::kms::EigType;
use crate::linalg::CMatrix;
use crate::oracle;

/// Roots closer than this are merged.
pub const DUPLICATE_TOL: f64 = 1e-8;
/// Oracle check: both coalescing eigenvalues within `ORACLE_TOL * n` of `-n`.
pub const ORACLE_TOL: f64 = 1e-5;

/// `q1` or `q2` with exact integer coefficients, constant term first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QPolynomial {
    pub n: usize,
    pub eig_type: EigType,
    pub coeffs: Vec<i128>,
}

impl QPolynomial {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, t: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * t + c as f64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalPoint {
    pub n: usize,
    pub eig_type: EigType,
    pub t_c: Complex64,
    pub mu_c: Complex64,
    pub rho_c: Complex64,
    pub lambda_c: Complex64,
    /// Largest `|lambda + n| / n` over the two oracle eigenvalues nearest `-n`.
    pub oracle_residual: f64,
}

/// Monomial coefficients of `U_k`, constant term first.
pub fn u_monomial_coeffs(k: usize) -> Option<Vec<i128>> {
    let mut prev: Vec<i128> = vec![1];
    if k == 0 {
        return Some(prev);
    }
    let mut cur: Vec<i128> = vec![0, 2];
    for _ in 1..k {
        let mut next = vec![0i128; cur.len() + 1];
        for (i, &c) in cur.iter().enumerate() {
            next[i + 1] = c.checked_mul(2)?;
        }
        for (i, &c) in prev.iter().enumerate() {
            next[i] = next[i].checked_sub(c)?;
        }
        prev = cur;
        cur = next;
    }
    Some(cur)
}

/// Exact division by `(t - root)`; `None` if the remainder is nonzero.
fn divide_by_linear(p: &[i128], root: i128) -> Option<Vec<i128>> {
    let deg = p.len() - 1;
    let mut q = vec![0i128; deg];
    let mut carry: i128 = 0;
    for i in (0..=deg).rev() {
        let v = p[i].checked_add(carry.checked_mul(root)?)?;
        if i == 0 {
            return (v == 0).then_some(q);
        }
        q[i - 1] = v;
        carry = v;
    }
    unreachable!()
}

fn factor_roots(n: usize, ty: EigType) -> &'static [i128] {
    match (ty, n % 2 == 0) {
        (EigType::Type1, true) => &[1],
        (EigType::Type1, false) => &[1, -1],
        (EigType::Type2, true) => &[-1],
        (EigType::Type2, false) => &[],
    }
}

fn check_supported(n: usize, ty: EigType) -> Result<()> {
    if n < 3 {
        return Err(KmsError::Size(n));
    }
    if ty == EigType::Type1 && n == 3 {
        return Err(KmsError::UnsupportedCase(
            "q1 is not defined for n = 3; the type-1 eigenvalue 1 - rho^2 never bifurcates".into(),
        ));
    }
    Ok(())
}

pub fn q_polynomial(n: usize, eig_type: EigType) -> Result<QPolynomial> {
    check_supported(n, eig_type)?;
    let mut p = u_monomial_coeffs(n - 1).ok_or(KmsError::CoefficientOverflow(n))?;
    // U_{n-1}(t) -+ n : type 1 subtracts n, type 2 adds n
    p[0] += (n as i128) * eig_type.mp() as i128;
    for &r in factor_roots(n, eig_type) {
        p = divide_by_linear(&p, r).ok_or_else(|| {
            KmsError::HypothesisViolation(format!(
                "(t - {r}) does not divide U_{{n-1}} for n = {n}"
            ))
        })?;
    }
    Ok(QPolynomial {
        n,
        eig_type,
        coeffs: p,
    })
}

/// `U_{n-1}(t) -+ n` and its derivative.
fn residual(n: usize, ty: EigType, t: Complex64) -> (Complex64, Complex64) {
    let (u, du) = chebyshev::cheb_u_with_derivative(n as u32 - 1, t);
    (u + ty.mp() * n as f64, du)
}

/// Colleague-type matrix whose eigenvalues are the zeros of `U_m(t) + c`.
///
/// Acts on `(U_0, ..., U_{m-1})` through `t U_k = (U_{k+1} + U_{k-1}) / 2`,
/// closing the last row with `U_m = -c U_0`.
fn colleague_matrix(m: usize, c: f64) -> CMatrix {
    let mut a = CMatrix::zeros(m);
    let half = Complex64::new(0.5, 0.0);
    for k in 0..m {
        if k + 1 < m {
            a[(k, k + 1)] = half;
        }
        if k >= 1 {
            a[(k, k - 1)] += half;
        }
    }
    a[(m - 1, 0)] += Complex64::new(-c / 2.0, 0.0);
    a
}

fn newton_polish(n: usize, ty: EigType, mut t: Complex64) -> Complex64 {
    for _ in 0..60 {
        let (f, df) = residual(n, ty, t);
        if df.norm() == 0.0 {
            break;
        }
        let step = f / df;
        t -= step;
        if step.norm() <= 4.0 * f64::EPSILON * (1.0 + t.norm()) {
            break;
        }
    }
    t
}

/// All zeros of `q1(n, .)` or `q2(n, .)`, polished on the Chebyshev residual.
pub fn critical_t_values(n: usize, eig_type: EigType) -> Result<Vec<Complex64>> {
    check_supported(n, eig_type)?;
    let m = n - 1;
    let c = eig_type.mp() * n as f64;
    let spectrum = oracle::eigenvalues(&colleague_matrix(m, c), false)?;
    let mut roots = spectrum.eigenvalues;
    for &r in factor_roots(n, eig_type) {
        let target = Complex64::new(r as f64, 0.0);
        let (pos, dist) = roots
            .iter()
            .enumerate()
            .map(|(i, z)| (i, (z - target).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .ok_or_else(|| KmsError::RootFinding("no roots to deflate".into()))?;
        if dist > 1e-6 {
            return Err(KmsError::RootFinding(format!(
                "factor root {r} not found (closest at distance {dist:e})"
            )));
        }
        roots.remove(pos);
    }
    let tol = 1e-9 * n as f64;
    let mut out: Vec<Complex64> = Vec::with_capacity(roots.len());
    for t0 in roots {
        let t = newton_polish(n, eig_type, t0);
        let (f, _) = residual(n, eig_type, t);
        if !(f.norm() <= tol) {
            return Err(KmsError::RootFinding(format!(
                "residual {:e} at t = {t} exceeds {tol:e}",
                f.norm()
            )));
        }
        if !out.iter().any(|z| (z - t).norm() < DUPLICATE_TOL) {
            out.push(t);
        }
    }
    Ok(out)
}

/// Critical `rho_c` from a zero `t_c`, using half-integer degrees for even `n`.
pub fn rho_c_of_t(n: usize, t_c: Complex64, eig_type: EigType) -> Result<Complex64> {
    if n < 3 {
        return Err(KmsError::Size(n));
    }
    let twice = n as u32;
    let (num, den) = match eig_type {
        EigType::Type1 => (
            chebyshev::cheb_u(ChebDegree::from_twice(twice - 1), t_c)?,
            chebyshev::cheb_u(ChebDegree::from_twice(twice - 3), t_c)?,
        ),
        EigType::Type2 => (
            chebyshev::cheb_t(ChebDegree::from_twice(twice + 1), t_c),
            chebyshev::cheb_t(ChebDegree::from_twice(twice - 1), t_c),
        ),
    };
    if den.norm() < 1e-12 * (1.0 + num.norm()) {
        return Err(KmsError::DegenerateDenominator(t_c));
    }
    let rho = num / den;
    if n % 2 == 0 {
        // the ratio must not depend on the Arccos branch
        let (num2, den2) = match eig_type {
            EigType::Type1 => (
                chebyshev::cheb_u_shifted_branch(ChebDegree::from_twice(twice - 1), t_c)?,
                chebyshev::cheb_u_shifted_branch(ChebDegree::from_twice(twice - 3), t_c)?,
            ),
            EigType::Type2 => (
                chebyshev::cheb_t_shifted_branch(ChebDegree::from_twice(twice + 1), t_c),
                chebyshev::cheb_t_shifted_branch(ChebDegree::from_twice(twice - 1), t_c),
            ),
        };
        let other = num2 / den2;
        if (other - rho).norm() > 1e-10 * (1.0 + rho.norm()) {
            return Err(KmsError::HypothesisViolation(format!(
                "rho_c depends on the Arccos branch at t = {t_c}"
            )));
        }
    }
    Ok(rho)
}

fn is_trivial_rho(rho: Complex64) -> bool {
    [-1.0, 0.0, 1.0].iter().any(|&r| (rho - r).norm() < 1e-9)
}

/// Critical points of one type, each checked against the oracle.
pub fn critical_points(n: usize, eig_type: EigType) -> Result<Vec<CriticalPoint>> {
    let mut out = Vec::new();
    for t_c in critical_t_values(n, eig_type)? {
        let rho_c = rho_c_of_t(n, t_c, eig_type)?;
        if is_trivial_rho(rho_c) {
            continue;
        }
        let s = oracle::kms_spectrum(n, rho_c, false)?;
        let minus_n = Complex64::new(-(n as f64), 0.0);
        let residual = s
            .nearest(minus_n, 2)
            .iter()
            .map(|&i| (s.eigenvalues[i] - minus_n).norm() / n as f64)
            .fold(0.0, f64::max);
        if residual > ORACLE_TOL {
            return Err(KmsError::OracleMismatch(format!(
                "K_{n}({rho_c}) lacks a double eigenvalue -n (residual {residual:e})"
            )));
        }
        out.push(CriticalPoint {
            n,
            eig_type,
            t_c,
            mu_c: t_c.acos(),
            rho_c,
            lambda_c: minus_n,
            oracle_residual: residual,
        });
    }
    out.sort_by(|a, b| a.rho_c.arg().total_cmp(&b.rho_c.arg()));
    Ok(out)
}

/// Every critical point of `K_n`, ordered by type and then by `arg rho_c`.
pub fn all_critical_points(n: usize) -> Result<Vec<CriticalPoint>> {
    if n < 3 {
        return Err(KmsError::Size(n));
    }
    let mut out = Vec::new();
    for ty in EigType::BOTH {
        if ty == EigType::Type1 && n == 3 {
            continue;
        }
        out.extend(critical_points(n, ty)?);
    }
    Ok(out)
}
