//! Local shape of the level curve `|lambda(rho)| = n` at a critical point and
//! the eigenvalue pair along the cusp bisector.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{KmsError, Result};
use crate::puiseux::PuiseuxParams;
use crate::wrap_angle;

pub const DEFAULT_THETA_WINDOW: f64 = 0.8;
pub const DEFAULT_EPS_CAP: f64 = 0.5;
/// Denominators below this mark a sample invalid.
pub const DENOMINATOR_FLOOR: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurveSample {
    pub theta: f64,
    pub eps_mag: f64,
    pub rho: Complex64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveSamples {
    pub center: Complex64,
    pub samples: Vec<CurveSample>,
}

impl CurveSamples {
    pub fn from_polar(center: Complex64, polar: impl IntoIterator<Item = (f64, f64)>) -> Self {
        let samples = polar
            .into_iter()
            .map(|(theta, eps_mag)| CurveSample {
                theta,
                eps_mag,
                rho: center + Complex64::from_polar(eps_mag, theta),
            })
            .collect();
        Self { center, samples }
    }
}

/// Level curve samples plus the angles that were rejected.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelCurve {
    pub curve: CurveSamples,
    pub dropped: Vec<f64>,
}

/// Eigenvalue pair normalised by `lambda_c`, at signed distance `d` along the bisector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryPoint {
    pub d: f64,
    pub re_pair: (f64, f64),
    pub im_pair: (f64, f64),
    pub mag_pair: (f64, f64),
}

pub fn cusp_bisector_angle(p: &PuiseuxParams) -> f64 {
    wrap_angle(std::f64::consts::PI - 2.0 * p.theta_a)
}

pub fn bifurcation_strength(p: &PuiseuxParams) -> f64 {
    p.c
}

fn check_condition(p: &PuiseuxParams) -> Result<f64> {
    let den0 = p.level_condition();
    if den0.abs() < DENOMINATOR_FLOOR {
        Err(KmsError::ConditionViolated)
    } else {
        Ok(den0)
    }
}

/// `count` angles spread evenly over `[phi - window, phi + window]`, with
/// `phi` itself always present exactly once.
pub(crate) fn angles_around(phi: f64, window: f64, count: usize) -> Vec<f64> {
    let half = count.max(3) / 2;
    let step = window / half as f64;
    (0..=2 * half)
        .map(|k| phi + (k as f64 - half as f64) * step)
        .collect()
}

/// `|eps|(theta)` of the level curve, or `None` where the denominator is too
/// small or has the opposite sign to its value at the cusp.
pub fn level_curve_radius(p: &PuiseuxParams, theta: f64) -> Result<Option<f64>> {
    let den0 = check_condition(p)?;
    let abs_a = p.a.norm();
    // theta / 2 + theta_a = (theta - phi) / 2 + pi / 2 up to a multiple of pi
    let (s, c) = ((theta - cusp_bisector_angle(p)) / 2.0).sin_cos();
    let den = abs_a * abs_a * c * c + 2.0 * p.b.norm() * (theta + p.theta_b).cos();
    if den.abs() < DENOMINATOR_FLOOR || den.signum() != den0.signum() {
        return Ok(None);
    }
    Ok(Some((2.0 * abs_a * s / den).powi(2)))
}

/// Samples of the local level curve around the cusp direction.
pub fn local_level_curve(
    p: &PuiseuxParams,
    rho_c: Complex64,
    theta_window: f64,
    count: usize,
    eps_cap: f64,
) -> Result<LevelCurve> {
    check_condition(p)?;
    if !(theta_window > 0.0) {
        return Err(KmsError::Domain(theta_window));
    }
    let phi = cusp_bisector_angle(p);
    let mut kept = Vec::new();
    let mut dropped = Vec::new();
    for theta in angles_around(phi, theta_window, count) {
        match level_curve_radius(p, theta)? {
            Some(r) if r <= eps_cap => kept.push((theta, r)),
            _ => dropped.push(theta),
        }
    }
    Ok(LevelCurve {
        curve: CurveSamples::from_polar(rho_c, kept),
        dropped,
    })
}

/// Cardioid approximation `4|a|^2 sin^2((theta - phi)/2) / (|a|^2 - 2|b| cos Theta)^2`.
pub fn cardioid_approx(p: &PuiseuxParams, theta: f64) -> Result<f64> {
    let den0 = check_condition(p)?;
    let phi = cusp_bisector_angle(p);
    let s = ((theta - phi) / 2.0).sin();
    Ok(4.0 * p.a.norm_sqr() * s * s / (den0 * den0))
}

/// `rho` at signed distance `d` along the bisector line.
pub fn bisector_point(p: &PuiseuxParams, rho_c: Complex64, d: f64) -> Complex64 {
    rho_c + d * Complex64::from_polar(1.0, -2.0 * p.theta_a)
}

/// Leading-order eigenvalue pair along `rho = rho_c + d exp(-2 i theta_a)`.
pub fn trajectory_along_bisector(p: &PuiseuxParams, d_values: &[f64]) -> Vec<TrajectoryPoint> {
    let abs_a = p.a.norm();
    let abs_b = p.b.norm();
    let (sin_t, cos_t) = p.big_theta.sin_cos();
    d_values
        .iter()
        .map(|&d| {
            let ad = d.abs();
            if d <= 0.0 {
                let re = 1.0 - ad * abs_b * cos_t;
                let split = abs_a * ad.sqrt();
                let shift = ad * abs_b * sin_t;
                let mag = 1.0 + ad * p.c;
                TrajectoryPoint {
                    d,
                    re_pair: (re, re),
                    im_pair: (split - shift, -split - shift),
                    mag_pair: (mag, mag),
                }
            } else {
                let split = abs_a * d.sqrt();
                let base = 1.0 + d * abs_b * cos_t;
                let im = d * abs_b * sin_t;
                TrajectoryPoint {
                    d,
                    re_pair: (base + split, base - split),
                    im_pair: (im, im),
                    mag_pair: (base + split, base - split),
                }
            }
        })
        .collect()
}
