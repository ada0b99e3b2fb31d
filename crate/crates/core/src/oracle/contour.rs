//! Marching-squares tracing of `|lambda(rho)| = n` from oracle spectra.

use std::collections::HashMap;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{KmsError, Result};
use crate::geometry::{CurveSample, CurveSamples};
use crate::kms::EigType;

use super::{classify_vector, kms_spectrum};

/// Rectangle in the complex `rho` plane sampled on `resolution x resolution` nodes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
    pub resolution: usize,
}

impl Grid {
    pub fn new(re: (f64, f64), im: (f64, f64), resolution: usize) -> Self {
        Self {
            re_min: re.0,
            re_max: re.1,
            im_min: im.0,
            im_max: im.1,
            resolution,
        }
    }

    pub fn node(&self, ix: usize, iy: usize) -> Complex64 {
        Complex64::new(
            self.re_min + ix as f64 * self.dx(),
            self.im_min + iy as f64 * self.dy(),
        )
    }

    pub fn dx(&self) -> f64 {
        (self.re_max - self.re_min) / (self.resolution - 1) as f64
    }

    pub fn dy(&self) -> f64 {
        (self.im_max - self.im_min) / (self.resolution - 1) as f64
    }

    /// Diagonal of one grid cell.
    pub fn cell_size(&self) -> f64 {
        self.dx().hypot(self.dy())
    }

    pub fn center(&self) -> Complex64 {
        Complex64::new(
            0.5 * (self.re_min + self.re_max),
            0.5 * (self.im_min + self.im_max),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BorderlineCurve {
    pub eig_type: EigType,
    pub samples: CurveSamples,
    /// Set when some grid node had an eigenvalue that could not be classified
    /// and was counted towards both types.
    pub union_fallback: bool,
}

#[derive(Clone, Copy, Hash, PartialEq, Eq, Debug)]
enum EdgeKey {
    // between (ix, iy) and (ix + 1, iy)
    H(usize, usize),
    // between (ix, iy) and (ix, iy + 1)
    V(usize, usize),
}

/// Zero-level polylines of a scalar field sampled on `grid` (row-major in `iy`).
pub fn marching_squares(values: &[f64], grid: &Grid) -> Vec<Vec<Complex64>> {
    let res = grid.resolution;
    assert_eq!(values.len(), res * res);
    let at = |ix: usize, iy: usize| values[iy * res + ix];
    let point = |e: EdgeKey| -> Complex64 {
        let (a, b, pa, pb) = match e {
            EdgeKey::H(ix, iy) => (
                at(ix, iy),
                at(ix + 1, iy),
                grid.node(ix, iy),
                grid.node(ix + 1, iy),
            ),
            EdgeKey::V(ix, iy) => (
                at(ix, iy),
                at(ix, iy + 1),
                grid.node(ix, iy),
                grid.node(ix, iy + 1),
            ),
        };
        let t = if a == b { 0.5 } else { a / (a - b) };
        pa + (pb - pa) * t.clamp(0.0, 1.0)
    };

    let mut segments: Vec<(EdgeKey, EdgeKey)> = Vec::new();
    for iy in 0..res - 1 {
        for ix in 0..res - 1 {
            let v = [
                at(ix, iy),
                at(ix + 1, iy),
                at(ix + 1, iy + 1),
                at(ix, iy + 1),
            ];
            let inside: Vec<bool> = v.iter().map(|&x| x > 0.0).collect();
            let case = inside
                .iter()
                .enumerate()
                .fold(0u8, |acc, (k, &b)| acc | ((b as u8) << k));
            let bottom = EdgeKey::H(ix, iy);
            let right = EdgeKey::V(ix + 1, iy);
            let top = EdgeKey::H(ix, iy + 1);
            let left = EdgeKey::V(ix, iy);
            let center = v.iter().sum::<f64>() / 4.0;
            match case {
                0 | 15 => {}
                1 | 14 => segments.push((left, bottom)),
                2 | 13 => segments.push((bottom, right)),
                3 | 12 => segments.push((left, right)),
                4 | 11 => segments.push((right, top)),
                6 | 9 => segments.push((bottom, top)),
                7 | 8 => segments.push((left, top)),
                5 => {
                    if center > 0.0 {
                        segments.push((left, top));
                        segments.push((bottom, right));
                    } else {
                        segments.push((left, bottom));
                        segments.push((right, top));
                    }
                }
                10 => {
                    if center > 0.0 {
                        segments.push((left, bottom));
                        segments.push((right, top));
                    } else {
                        segments.push((left, top));
                        segments.push((bottom, right));
                    }
                }
                _ => unreachable!(),
            }
        }
    }
    stitch(&segments)
        .into_iter()
        .map(|keys| keys.into_iter().map(point).collect())
        .collect()
}

fn stitch(segments: &[(EdgeKey, EdgeKey)]) -> Vec<Vec<EdgeKey>> {
    let mut adjacency: HashMap<EdgeKey, Vec<usize>> = HashMap::new();
    for (i, (a, b)) in segments.iter().enumerate() {
        adjacency.entry(*a).or_default().push(i);
        adjacency.entry(*b).or_default().push(i);
    }
    let mut used = vec![false; segments.len()];
    let mut lines = Vec::new();
    let other = |seg: usize, key: EdgeKey| {
        let (a, b) = segments[seg];
        if a == key {
            b
        } else {
            a
        }
    };
    // open chains first (start at a key with a single segment), then loops
    let mut starts: Vec<usize> = Vec::new();
    for (i, (a, b)) in segments.iter().enumerate() {
        if adjacency[a].len() == 1 || adjacency[b].len() == 1 {
            starts.push(i);
        }
    }
    starts.extend(0..segments.len());
    for start in starts {
        if used[start] {
            continue;
        }
        used[start] = true;
        let (a, b) = segments[start];
        let (first, mut tail) = if adjacency[&b].len() == 1 {
            (b, a)
        } else {
            (a, b)
        };
        let mut line = vec![first, tail];
        while let Some(&next) = adjacency[&tail].iter().find(|&&s| !used[s]) {
            used[next] = true;
            tail = other(next, tail);
            line.push(tail);
        }
        lines.push(line);
    }
    lines
}

/// Oracle approximation of the type-1 and type-2 curves `|lambda| = n`.
///
/// At each grid node the field for type `k` is the largest `|lambda| - n`
/// over eigenvalues whose eigenvector classifies as type `k`; eigenvalues that
/// cannot be classified count for both types and set `union_fallback`.
pub fn numeric_borderline(n: usize, grid: &Grid) -> Result<Vec<BorderlineCurve>> {
    if grid.resolution < 64 {
        return Err(KmsError::UnsupportedCase(format!(
            "grid resolution {} below 64",
            grid.resolution
        )));
    }
    let res = grid.resolution;
    let nf = n as f64;
    let fields: Vec<Result<([f64; 2], bool)>> = (0..res * res)
        .into_par_iter()
        .map(|k| {
            let rho = grid.node(k % res, k / res);
            let s = kms_spectrum(n, rho, true)?;
            let vectors = s.eigenvectors.as_ref().expect("requested eigenvectors");
            let mut best = [-nf, -nf];
            let mut fallback = false;
            for (i, (lambda, v)) in s.eigenvalues.iter().zip(vectors).enumerate() {
                let gap = s
                    .eigenvalues
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .map(|(_, z)| (z - lambda).norm())
                    .fold(f64::INFINITY, f64::min);
                let ty = if gap > 1e-6 * (1.0 + lambda.norm()) {
                    classify_vector(v)
                } else {
                    None
                };
                let value = lambda.norm() - nf;
                match ty {
                    Some(EigType::Type1) => best[0] = best[0].max(value),
                    Some(EigType::Type2) => best[1] = best[1].max(value),
                    None => {
                        fallback = true;
                        best[0] = best[0].max(value);
                        best[1] = best[1].max(value);
                    }
                }
            }
            Ok((best, fallback))
        })
        .collect();
    let mut per_type = [Vec::with_capacity(res * res), Vec::with_capacity(res * res)];
    let mut fallback = false;
    for f in fields {
        let (best, fb) = f?;
        per_type[0].push(best[0]);
        per_type[1].push(best[1]);
        fallback |= fb;
    }
    let center = grid.center();
    let mut out = Vec::new();
    for (ty, values) in EigType::BOTH.into_iter().zip(per_type) {
        for line in marching_squares(&values, grid) {
            let samples = line
                .into_iter()
                .map(|rho| {
                    let eps = rho - center;
                    CurveSample {
                        theta: eps.arg(),
                        eps_mag: eps.norm(),
                        rho,
                    }
                })
                .collect();
            out.push(BorderlineCurve {
                eig_type: ty,
                samples: CurveSamples { center, samples },
                union_fallback: fallback,
            });
        }
    }
    Ok(out)
}
