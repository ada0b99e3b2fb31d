//! Purely imaginary critical points `rho_c = i y_n` for odd `n`.
//!
//! With `x_n = cosh v_n` and `cosh(n v_n) = n cosh v_n`, the critical point is
//! `y_n = cosh((n+1) v_n / 2) / sinh((n-1) v_n / 2)` and `t_c = i sqrt(x_n^2 - 1)`.
//! Everything is evaluated through hyperbolic functions of `v_n`; since
//! `n v_n ~ ln(2n)` the intermediate values stay of order `n`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::chebyshev::{cheb_t_hyperbolic, cheb_t_int, cheb_u_int};
use crate::critical::rho_c_of_t;
use crate::error::{KmsError, Result};
use crate::geometry::{self, CurveSamples, TrajectoryPoint};
use crate::kms::EigType;
use crate::puiseux::PuiseuxParams;

const MAX_NEWTON: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ImagAxisParams {
    pub n: usize,
    pub v_n: f64,
    pub x_n: f64,
    pub y_n: f64,
    pub a_n: f64,
    pub b_n: f64,
    pub c_n: f64,
    pub eig_type: EigType,
}

impl ImagAxisParams {
    pub fn rho_c(&self) -> Complex64 {
        Complex64::new(0.0, self.y_n)
    }

    pub fn t_c(&self) -> Complex64 {
        Complex64::new(0.0, (self.x_n * self.x_n - 1.0).sqrt())
    }

    /// General Puiseux form: `theta_a = 3 pi / 4`, `theta_b = -pi / 2`.
    pub fn puiseux(&self) -> PuiseuxParams {
        let a = Complex64::from_polar(self.a_n, 0.75 * std::f64::consts::PI);
        let b = Complex64::new(0.0, -self.b_n);
        PuiseuxParams::from_ab(Complex64::new(-(self.n as f64), 0.0), a, b)
    }
}

fn check_odd(n: usize) -> Result<()> {
    if n < 3 {
        Err(KmsError::Size(n))
    } else if n % 2 == 0 {
        Err(KmsError::NotOdd(n))
    } else {
        Ok(())
    }
}

/// Type of the imaginary-axis point: type 1 iff `n = 1 mod 4`.
pub fn imag_type(n: usize) -> EigType {
    if n % 4 == 1 {
        EigType::Type1
    } else {
        EigType::Type2
    }
}

/// Positive root of `cosh(n v) = n cosh v`.
pub fn solve_v_n(n: usize) -> Result<f64> {
    check_odd(n)?;
    let nf = n as f64;
    let f = |v: f64| (nf * v).cosh() - nf * v.cosh();
    let df = |v: f64| nf * ((nf * v).sinh() - v.sinh());
    let l = (2.0 * nf).ln();
    let (mut lo, mut hi) = (l / (2.0 * nf), 2.0 * l / nf);
    if !(f(lo) < 0.0 && f(hi) > 0.0) {
        return Err(KmsError::Convergence(format!(
            "bracket for v_{n} does not straddle the root"
        )));
    }
    let mut v = l / nf;
    for _ in 0..MAX_NEWTON {
        let fv = f(v);
        if fv.abs() <= 1e-13 * nf * v.cosh() {
            return Ok(v);
        }
        if fv < 0.0 {
            lo = v;
        } else {
            hi = v;
        }
        let step = v - fv / df(v);
        v = if step > lo && step < hi {
            step
        } else {
            0.5 * (lo + hi)
        };
        if hi - lo <= 4.0 * f64::EPSILON * hi {
            break;
        }
    }
    if f(v).abs() <= 1e-12 * nf * v.cosh() {
        Ok(v)
    } else {
        Err(KmsError::Convergence(format!(
            "v_{n} after {MAX_NEWTON} iterations"
        )))
    }
}

/// Unique root of `T_n(x) = n x` in `(1, inf)`.
pub fn solve_x_n(n: usize) -> Result<f64> {
    let x = solve_v_n(n)?.cosh();
    let g = |x: f64| cheb_t_hyperbolic(n as u32, x).map(|t| t - n as f64 * x);
    let delta = 1e-6 * (x - 1.0);
    if !(g(x - delta)? < 0.0 && g(x + delta)? > 0.0) {
        return Err(KmsError::Convergence(format!(
            "T_n(x) - n x has no sign change at x_{n}"
        )));
    }
    Ok(x)
}

fn y_from_v(n: usize, v: f64) -> f64 {
    let nf = n as f64;
    ((nf + 1.0) * v / 2.0).cosh() / ((nf - 1.0) * v / 2.0).sinh()
}

/// `y_n`, cross-checked against the Chebyshev form for `n <= 51`.
pub fn y_n_of(n: usize) -> Result<f64> {
    let v = solve_v_n(n)?;
    let y = y_from_v(n, v);
    if n <= 51 {
        let x = v.cosh();
        let t = Complex64::new(0.0, (x * x - 1.0).sqrt());
        let rho = rho_c_of_t(n, t, imag_type(n))?;
        if (rho.im.abs() - y).abs() > 1e-9 * y || rho.re.abs() > 1e-9 * y {
            return Err(KmsError::OracleMismatch(format!(
                "y_{n}: hyperbolic {y} vs Chebyshev {rho}"
            )));
        }
    }
    Ok(y)
}

pub fn imag_axis_params(n: usize) -> Result<ImagAxisParams> {
    let v = solve_v_n(n)?;
    let nf = n as f64;
    let x = v.cosh();
    let x2 = x * x;
    let s = v.sinh();
    let t = ((nf - 1.0) * v).cosh();
    let u = (nf * v).sinh() / s;
    // runtime identity (x^2 - 1) U_{n-1}^2 = n^2 x^2 - 1
    let lhs = s * s * u * u;
    let rhs = nf * nf * x2 - 1.0;
    if (lhs - rhs).abs() > 1e-9 * rhs {
        return Err(KmsError::OracleMismatch(format!(
            "U_(n-1)(x_{n}) identity off by {}",
            lhs - rhs
        )));
    }
    let a = (2.0 / nf).sqrt() * s.sqrt() / x * ((u - 1.0) * (t - 1.0)).sqrt();
    let num = 12.0 + 4.0 * (nf + 1.0) * t * t
        - (5.0 * nf * nf + 5.0 * nf + 12.0) * x2
        - 3.0 * (nf - 7.0) * s * s * u
        + 4.0 * (nf - 2.0) * (nf * nf * x2 - 1.0)
        + (nf + 1.0) * (4.0 * x2 - 3.0) * t;
    let b = num / (6.0 * nf * x2 * s * (u - 1.0));
    if !(a > 0.0) {
        return Err(KmsError::Positivity(format!("a_{n} = {a}")));
    }
    if !(b > 0.0) {
        return Err(KmsError::Positivity(format!("b_{n} = {b}")));
    }
    Ok(ImagAxisParams {
        n,
        v_n: v,
        x_n: x,
        y_n: y_from_v(n, v),
        a_n: a,
        b_n: b,
        c_n: 0.5 * (a * a - 2.0 * b),
        eig_type: imag_type(n),
    })
}

/// `|eps|(theta) = 8 a^2 (1 + sin theta) / (a^2 + (4b - a^2) sin theta)^2`.
pub fn imag_level_radius(params: &ImagAxisParams, theta: f64) -> Result<f64> {
    let a2 = params.a_n * params.a_n;
    let s = theta.sin();
    let den = a2 + (4.0 * params.b_n - a2) * s;
    // value at the cusp theta = -pi/2
    let den0 = 2.0 * a2 - 4.0 * params.b_n;
    if den.abs() < geometry::DENOMINATOR_FLOOR || den.signum() != den0.signum() {
        return Err(KmsError::ConditionViolated);
    }
    // 1 + sin(theta) without cancellation near the cusp
    let half = (theta / 2.0 + std::f64::consts::FRAC_PI_4).sin();
    Ok(16.0 * a2 * half * half / (den * den))
}

/// Level curve around `i y_n` over `theta_range`, endpoints included.
pub fn imag_level_curve(
    params: &ImagAxisParams,
    theta_range: (f64, f64),
    count: usize,
) -> Result<CurveSamples> {
    let count = count.max(2);
    let (t0, t1) = theta_range;
    let mut polar = Vec::with_capacity(count);
    for k in 0..count {
        let theta = t0 + (t1 - t0) * k as f64 / (count - 1) as f64;
        polar.push((theta, imag_level_radius(params, theta)?));
    }
    Ok(CurveSamples::from_polar(params.rho_c(), polar))
}

/// Pair along `rho = i (y_n + d)`.
pub fn imag_trajectory(params: &ImagAxisParams, d_values: &[f64]) -> Vec<TrajectoryPoint> {
    let a = params.a_n;
    let b = params.b_n;
    d_values
        .iter()
        .map(|&d| {
            if d <= 0.0 {
                let ad = -d;
                let re = 1.0 - ad * b;
                let split = a * ad.sqrt();
                let mag = 1.0 + ad * params.c_n;
                TrajectoryPoint {
                    d,
                    re_pair: (re, re),
                    im_pair: (split, -split),
                    mag_pair: (mag, mag),
                }
            } else {
                let split = a * d.sqrt();
                let base = 1.0 + d * b;
                TrajectoryPoint {
                    d,
                    re_pair: (base + split, base - split),
                    im_pair: (0.0, 0.0),
                    mag_pair: (base + split, base - split),
                }
            }
        })
        .collect()
}

/// Eigenvector of `K_n(i y_n)` for `-n`, entries alternately real and imaginary.
pub fn critical_eigenvector_imag(n: usize) -> Result<Vec<Complex64>> {
    let x = solve_x_n(n)?;
    let t = Complex64::new(0.0, (x * x - 1.0).sqrt());
    let ty = imag_type(n);
    let half = (n as i64 - 1) / 2;
    Ok((0..n as i64)
        .map(|j| {
            let m = half - j;
            match ty {
                EigType::Type1 => m.signum() as f64 * cheb_u_int(m.abs() - 1, t),
                EigType::Type2 => cheb_t_int(m.unsigned_abs() as u32, t),
            }
        })
        .collect())
}

/// Leading large-`n` approximations `(v, y, a, b)`.
pub fn large_n_params(n: usize) -> Result<(f64, f64, f64, f64)> {
    check_odd(n)?;
    let nf = n as f64;
    let l = (2.0 * nf).ln();
    let r = (2.0 * nf).sqrt();
    Ok((
        l / nf,
        (2.0 * nf).powf(1.0 / nf),
        r - (l + 1.0) / r,
        4.0 / 3.0 * nf - 4.0 / 3.0 * (l + 1.0),
    ))
}

/// Points `(chi, +-psi)` of the parabola `psi^2 = (a^2 / b)(1 - chi)`.
pub fn parabola_trajectory(
    params: &ImagAxisParams,
    chi_values: &[f64],
) -> Result<Vec<(f64, (f64, f64))>> {
    let k = params.a_n * params.a_n / params.b_n;
    chi_values
        .iter()
        .map(|&chi| {
            if chi > 1.0 || chi.is_nan() {
                return Err(KmsError::Domain(chi));
            }
            let psi = (k * (1.0 - chi)).sqrt();
            Ok((chi, (psi, -psi)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n3_values() {
        let v = solve_v_n(3).unwrap();
        assert!((v - 0.6584789484624084).abs() < 1e-13);
        assert!((v.cosh() - 1.5f64.sqrt()).abs() < 1e-13);
        assert!((y_n_of(3).unwrap() - 8f64.sqrt()).abs() < 1e-12);
        let p = imag_axis_params(3).unwrap();
        assert!((p.a_n - 1.121195220338286).abs() < 1e-12);
        assert!((p.b_n - 8f64.sqrt() / 3.0).abs() < 1e-12);
        assert_eq!(p.eig_type, EigType::Type2);
    }

    #[test]
    fn n19_values() {
        assert!((solve_v_n(19).unwrap() - 0.19238478377044257).abs() < 1e-13);
        let p = imag_axis_params(19).unwrap();
        assert!((p.y_n - 1.2780414700042169).abs() < 1e-12);
        assert!((p.a_n - 5.390971357653346).abs() < 1e-11);
        assert!((p.b_n - 19.473058028784674).abs() < 1e-10);
        assert_eq!(p.eig_type, EigType::Type2);
        assert_eq!(imag_type(17), EigType::Type1);
    }

    #[test]
    fn rejects_even_and_small() {
        assert_eq!(solve_v_n(4), Err(KmsError::NotOdd(4)));
        assert_eq!(solve_v_n(1), Err(KmsError::Size(1)));
    }

    #[test]
    fn n3_eigenvector() {
        let v = critical_eigenvector_imag(3).unwrap();
        // proportional to (1, -i sqrt 2, 1)
        let scale = v[0];
        let w: Vec<Complex64> = v.iter().map(|z| z / scale).collect();
        assert!((w[1] - Complex64::new(0.0, -2f64.sqrt())).norm() < 1e-12);
        assert!((w[2] - 1.0).norm() < 1e-12);
    }

    #[test]
    fn parabola_identity() {
        let p = imag_axis_params(19).unwrap();
        let pts = parabola_trajectory(&p, &[1.0, 0.9, -2.0]).unwrap();
        assert_eq!(pts[0].1, (0.0, 0.0));
        for (chi, (psi, _)) in pts {
            assert!((psi * psi * p.b_n / (p.a_n * p.a_n) + chi - 1.0).abs() < 1e-12);
        }
        assert!(matches!(
            parabola_trajectory(&p, &[1.5]),
            Err(KmsError::Domain(_))
        ));
    }

    #[test]
    fn level_curve_symmetry() {
        let p = imag_axis_params(19).unwrap();
        let half = std::f64::consts::FRAC_PI_2;
        assert_eq!(imag_level_radius(&p, -half).unwrap(), 0.0);
        for k in 1..20 {
            let theta = -half + 0.03 * k as f64;
            let mirror = -std::f64::consts::PI - theta;
            let (r, m) = (
                imag_level_radius(&p, theta).unwrap(),
                imag_level_radius(&p, mirror).unwrap(),
            );
            assert!((r - m).abs() <= 1e-13 * r);
        }
    }
}
