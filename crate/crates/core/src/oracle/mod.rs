//! Independent verification engine.
//!
//! The eigensolver treats its input as a general complex matrix, so nothing
//! it reports depends on the `mu`-parameterisation or on any closed form
//! elsewhere in the crate.

mod contour;
mod eigen;

pub use contour::{marching_squares, numeric_borderline, BorderlineCurve, Grid};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{KmsError, Result};
use crate::kms::{build_matrix, EigType};
use crate::linalg::{vec_norm, CMatrix};

/// Threshold on `|lambda + n| / n` used to call an oracle eigenvalue part of
/// the double eigenvalue `-n`. QR accuracy at a defective eigenvalue is only
/// `O(sqrt(eps))`.
pub const DOUBLE_EIGENVALUE_TOL: f64 = 1e-4;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub n: usize,
    /// Parameter the matrix was built from, when it is a KMS matrix.
    pub rho: Option<Complex64>,
    pub eigenvalues: Vec<Complex64>,
    /// Unit-norm right eigenvectors, parallel to `eigenvalues`.
    pub eigenvectors: Option<Vec<Vec<Complex64>>>,
}

impl Spectrum {
    pub fn sum(&self) -> Complex64 {
        self.eigenvalues.iter().sum()
    }

    pub fn product(&self) -> Complex64 {
        self.eigenvalues.iter().product()
    }

    /// Indices of the `count` eigenvalues closest to `target`, nearest first.
    pub fn nearest(&self, target: Complex64, count: usize) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.eigenvalues.len()).collect();
        idx.sort_by(|&i, &j| {
            (self.eigenvalues[i] - target)
                .norm()
                .total_cmp(&(self.eigenvalues[j] - target).norm())
        });
        idx.truncate(count);
        idx
    }

    /// Number of eigenvalues within `tol` of `target`.
    pub fn count_within(&self, target: Complex64, tol: f64) -> usize {
        self.eigenvalues
            .iter()
            .filter(|z| (*z - target).norm() <= tol)
            .count()
    }

    /// Largest `|A v - lambda v| / (|A| |v|)` over all pairs.
    pub fn backward_error(&self, m: &CMatrix) -> Option<f64> {
        let vectors = self.eigenvectors.as_ref()?;
        let scale = m.norm_fro();
        Some(
            self.eigenvalues
                .iter()
                .zip(vectors)
                .map(|(lambda, v)| {
                    let av = m.mul_vec(v);
                    let r: Vec<Complex64> = av.iter().zip(v).map(|(a, b)| a - lambda * b).collect();
                    vec_norm(&r) / (scale * vec_norm(v))
                })
                .fold(0.0, f64::max),
        )
    }
}

/// Eigenvalues (and optionally eigenvectors) of a general complex matrix.
pub fn eigenvalues(m: &CMatrix, want_vectors: bool) -> Result<Spectrum> {
    let dec = eigen::decompose(m, want_vectors)?;
    let mut order: Vec<usize> = (0..dec.values.len()).collect();
    order.sort_by(|&i, &j| {
        let (a, b) = (dec.values[i], dec.values[j]);
        a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
    });
    let eigenvalues = order.iter().map(|&i| dec.values[i]).collect();
    let eigenvectors = dec
        .vectors
        .map(|vs| order.iter().map(|&i| vs[i].clone()).collect());
    Ok(Spectrum {
        n: m.dim(),
        rho: None,
        eigenvalues,
        eigenvectors,
    })
}

/// Oracle spectrum of `K_n(rho)`.
pub fn kms_spectrum(n: usize, rho: Complex64, want_vectors: bool) -> Result<Spectrum> {
    let m = build_matrix(n, rho)?;
    let mut s = eigenvalues(&m.entries, want_vectors)?;
    s.rho = Some(rho);
    Ok(s)
}

/// Symmetric vectors are type 2, skew-symmetric ones type 1.
pub fn classify_vector(v: &[Complex64]) -> Option<EigType> {
    let n = v.len();
    let sym: f64 = (0..n)
        .map(|j| (v[j] - v[n - 1 - j]).norm_sqr())
        .sum::<f64>()
        .sqrt();
    let skew: f64 = (0..n)
        .map(|j| (v[j] + v[n - 1 - j]).norm_sqr())
        .sum::<f64>()
        .sqrt();
    if sym == 0.0 && skew == 0.0 {
        return None;
    }
    // sym small => v_j = v_{n-1-j}
    if sym < 0.5 * skew {
        Some(EigType::Type2)
    } else if skew < 0.5 * sym {
        Some(EigType::Type1)
    } else {
        None
    }
}

/// Type of the eigenvalue at `index`, from the symmetry of its eigenvector.
pub fn classify_eigenvalue(s: &Spectrum, index: usize) -> Result<EigType> {
    let vectors = s
        .eigenvectors
        .as_ref()
        .ok_or_else(|| KmsError::UnsupportedCase("spectrum has no eigenvectors".into()))?;
    let lambda = s.eigenvalues[index];
    let gap = s
        .eigenvalues
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != index)
        .map(|(_, z)| (z - lambda).norm())
        .fold(f64::INFINITY, f64::min);
    if gap <= 1e-6 * (1.0 + lambda.norm()) {
        return Err(KmsError::AmbiguousType(index));
    }
    classify_vector(&vectors[index]).ok_or(KmsError::AmbiguousType(index))
}

/// Count of eigenvalues with `|lambda| > n`.
pub fn count_extraordinary(s: &Spectrum) -> usize {
    let bound = s.n as f64 * (1.0 + 1e-12);
    s.eigenvalues.iter().filter(|z| z.norm() > bound).count()
}

/// Closed-form spectrum of `K_3(rho)`: the type-1 value `1 - rho^2` and the
/// type-2 pair `(2 + rho^2 +- rho sqrt(rho^2 + 8)) / 2`.
pub fn k3_closed_form(rho: Complex64) -> [Complex64; 3] {
    let r2 = rho * rho;
    let root = rho * (r2 + 8.0).sqrt();
    [1.0 - r2, (2.0 + r2 + root) / 2.0, (2.0 + r2 - root) / 2.0]
}

/// Greedy nearest matching of `expected` values to oracle eigenvalues; returns
/// the matched oracle values in the order of `expected`.
pub fn match_nearest(expected: &[Complex64], eigenvalues: &[Complex64]) -> Vec<Complex64> {
    let mut used = vec![false; eigenvalues.len()];
    let mut pairs: Vec<(f64, usize, usize)> = Vec::new();
    for (i, e) in expected.iter().enumerate() {
        for (j, z) in eigenvalues.iter().enumerate() {
            pairs.push(((e - z).norm(), i, j));
        }
    }
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut out = vec![None; expected.len()];
    for (_, i, j) in pairs {
        if out[i].is_none() && !used[j] {
            out[i] = Some(eigenvalues[j]);
            used[j] = true;
        }
    }
    out.into_iter()
        .map(|z| z.expect("more expected values than eigenvalues"))
        .collect()
}
