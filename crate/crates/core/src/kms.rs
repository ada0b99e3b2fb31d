//! The KMS matrix and its `mu`-parameterisation of eigenpairs.
//!
//! Every eigenvalue of `K_n(rho)` is of type 1 or type 2. For a type-1
//! (type-2) eigenvalue there is a `mu` with
//!
//! ```text
//! lambda = -sin(n mu)/sin(mu)                (+ for type 2)
//! rho    = sin((n+1)mu/2) / sin((n-1)mu/2)   (cos/cos for type 2)
//! ```
//!
//! and the eigenvector is `sin(mu (j - (n-1)/2))` (`cos` for type 2).

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{KmsError, Result};
use crate::linalg::CMatrix;

/// Eigenvalue class: type 1 has skew-symmetric eigenvectors, type 2 symmetric.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EigType {
    Type1,
    Type2,
}

impl EigType {
    pub const BOTH: [EigType; 2] = [EigType::Type1, EigType::Type2];

    /// Value of the upper-minus sign pair: `-1` for type 1, `+1` for type 2.
    pub fn mp(self) -> f64 {
        match self {
            EigType::Type1 => -1.0,
            EigType::Type2 => 1.0,
        }
    }

    /// Value of the upper-plus sign pair: `+1` for type 1, `-1` for type 2.
    pub fn pm(self) -> f64 {
        -self.mp()
    }

    pub fn index(self) -> u8 {
        match self {
            EigType::Type1 => 1,
            EigType::Type2 => 2,
        }
    }

    pub fn from_index(k: u8) -> Option<Self> {
        match k {
            1 => Some(EigType::Type1),
            2 => Some(EigType::Type2),
            _ => None,
        }
    }
}

impl fmt::Display for EigType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

/// `K_n(rho)`, entries `rho^|j-k|`.
#[derive(Debug, Clone, PartialEq)]
pub struct KmsMatrix {
    pub n: usize,
    pub rho: Complex64,
    pub entries: CMatrix,
}

impl KmsMatrix {
    pub fn trace(&self) -> Complex64 {
        self.entries.trace()
    }
}

/// A point of the `mu`-parameterisation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MuPoint {
    pub n: usize,
    pub mu: Complex64,
    pub eig_type: EigType,
}

impl MuPoint {
    pub fn new(n: usize, mu: Complex64, eig_type: EigType) -> Self {
        Self { n, mu, eig_type }
    }
}

pub(crate) fn check_ratio(
    num: Complex64,
    den: Complex64,
    mu: Complex64,
    what: &'static str,
) -> Result<Complex64> {
    if den.norm() < 1e-12 * (1.0 + num.norm()) {
        return Err(KmsError::DegenerateMu { mu, what });
    }
    Ok(num / den)
}

pub fn build_matrix(n: usize, rho: Complex64) -> Result<KmsMatrix> {
    if n < 3 {
        return Err(KmsError::Size(n));
    }
    let mut powers = Vec::with_capacity(n);
    let mut p = Complex64::new(1.0, 0.0);
    for _ in 0..n {
        powers.push(p);
        p *= rho;
    }
    let entries = CMatrix::from_fn(n, |j, k| powers[j.abs_diff(k)]);
    Ok(KmsMatrix { n, rho, entries })
}

pub fn lambda_of_mu(p: MuPoint) -> Result<Complex64> {
    let n = p.n as f64;
    let num = (n * p.mu).sin() * p.eig_type.mp();
    check_ratio(num, p.mu.sin(), p.mu, "sin(mu)")
}

pub fn rho_of_mu(p: MuPoint) -> Result<Complex64> {
    let n = p.n as f64;
    let (hi, lo) = ((n + 1.0) * p.mu / 2.0, (n - 1.0) * p.mu / 2.0);
    match p.eig_type {
        EigType::Type1 => check_ratio(hi.sin(), lo.sin(), p.mu, "sin((n-1)mu/2)"),
        EigType::Type2 => check_ratio(hi.cos(), lo.cos(), p.mu, "cos((n-1)mu/2)"),
    }
}

pub fn rho_prime_of_mu(p: MuPoint) -> Result<Complex64> {
    let n = p.n as f64;
    let lambda = lambda_of_mu(p)?;
    let num = -(lambda + n) * p.mu.sin();
    let den = 1.0 + p.eig_type.mp() * ((n - 1.0) * p.mu).cos();
    check_ratio(num, den, p.mu, "1 -+ cos((n-1)mu)")
}

fn is_excluded_rho(n: usize, rho: Complex64) -> bool {
    let edge = (n as f64 + 1.0) / (n as f64 - 1.0);
    [-edge, -1.0, 1.0, edge]
        .iter()
        .any(|&r| (rho - r).norm() <= 1e-12 * (1.0 + r.abs()))
}

/// Unnormalised eigenvector, `j = 0..n-1`.
pub fn eigenvector_of_mu(p: MuPoint) -> Result<Vec<Complex64>> {
    if p.mu.sin().norm() < 1e-12 {
        return Err(KmsError::DegenerateMu {
            mu: p.mu,
            what: "sin(mu)",
        });
    }
    let rho = rho_of_mu(p)?;
    if is_excluded_rho(p.n, rho) {
        return Err(KmsError::ExcludedRho(rho));
    }
    let half = (p.n as f64 - 1.0) / 2.0;
    Ok((0..p.n)
        .map(|j| {
            let arg = p.mu * (j as f64 - half);
            match p.eig_type {
                EigType::Type1 => arg.sin(),
                EigType::Type2 => arg.cos(),
            }
        })
        .collect())
}

/// Unconjugated sum of squares `sum v_j^2`.
pub fn isotropy_defect(v: &[Complex64]) -> Complex64 {
    v.iter().map(|z| z * z).sum()
}

/// Scale so that the entry of largest modulus equals 1.
pub fn normalize_max_modulus(v: &[Complex64]) -> Vec<Complex64> {
    let pivot = v
        .iter()
        .copied()
        .max_by(|a, b| a.norm().total_cmp(&b.norm()))
        .unwrap_or(Complex64::new(1.0, 0.0));
    if pivot.norm() == 0.0 {
        return v.to_vec();
    }
    v.iter().map(|z| z / pivot).collect()
}
