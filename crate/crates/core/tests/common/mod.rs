#![allow(dead_code)]

use kmsbif::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Uniform point in the disc of radius `r`.
pub fn in_disc(rng: &mut StdRng, r: f64) -> Complex64 {
    let rad = r * rng.gen::<f64>().sqrt();
    Complex64::from_polar(
        rad,
        rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI),
    )
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn fit_exponent(x: &[f64], y: &[f64]) -> f64 {
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let m = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / m;
    let my = ly.iter().sum::<f64>() / m;
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

/// `count` points spaced evenly in log between `lo` and `hi`.
pub fn logspace(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..count)
        .map(|k| (a + (b - a) * k as f64 / (count - 1) as f64).exp())
        .collect()
}

/// True if `published` is `value` rounded or truncated to `decimals` places.
pub fn agrees_to_digits(value: f64, published: f64, decimals: i32) -> bool {
    let scale = 10f64.powi(decimals);
    let rounded = (value * scale).round();
    let truncated = (value * scale).trunc();
    let target = (published * scale).round();
    rounded == target || truncated == target
}
