//! Dense complex eigensolver: balancing, Householder reduction to upper
//! Hessenberg form, single-shift complex QR with Wilkinson shifts, and
//! eigenvectors from the triangular Schur factor.
//!
//! Works on a general complex matrix; no structure is assumed.

use num_complex::Complex64;

use crate::error::{KmsError, Result};
use crate::linalg::CMatrix;

const RADIX: f64 = 2.0;

fn abs1(z: Complex64) -> f64 {
    z.re.abs() + z.im.abs()
}

/// Parlett–Reinsch balancing. Returns `D` with `A <- D^{-1} A D`.
fn balance(a: &mut CMatrix) -> Vec<f64> {
    let n = a.dim();
    let mut d = vec![1.0; n];
    let sq = RADIX * RADIX;
    loop {
        let mut done = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += abs1(a[(j, i)]);
                    r += abs1(a[(i, j)]);
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / RADIX;
            while c < g {
                f *= RADIX;
                c *= sq;
            }
            g = r * RADIX;
            while c >= g {
                f /= RADIX;
                c /= sq;
            }
            if (c + r) / f < 0.95 * s {
                done = false;
                d[i] *= f;
                for j in 0..n {
                    a[(i, j)] /= f;
                    a[(j, i)] *= f;
                }
            }
        }
        if done {
            return d;
        }
    }
}

/// Reduce to upper Hessenberg form in place, accumulating the unitary factor.
fn hessenberg(a: &mut CMatrix, q: &mut CMatrix) {
    let n = a.dim();
    if n < 3 {
        return;
    }
    for k in 0..n - 2 {
        let mut v: Vec<Complex64> = (k + 1..n).map(|i| a[(i, k)]).collect();
        let xnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if xnorm == 0.0 {
            continue;
        }
        let phase = if v[0].norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            v[0] / v[0].norm()
        };
        let alpha = -phase * xnorm;
        v[0] -= alpha;
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            continue;
        }
        for z in v.iter_mut() {
            *z /= vnorm;
        }
        // A <- H A, H = I - 2 v v^*
        for j in k..n {
            let s: Complex64 = v
                .iter()
                .enumerate()
                .map(|(t, vi)| vi.conj() * a[(k + 1 + t, j)])
                .sum();
            for (t, vi) in v.iter().enumerate() {
                a[(k + 1 + t, j)] -= 2.0 * vi * s;
            }
        }
        // A <- A H, Q <- Q H
        for m in [&mut *a, &mut *q] {
            for i in 0..n {
                let s: Complex64 = v
                    .iter()
                    .enumerate()
                    .map(|(t, vi)| m[(i, k + 1 + t)] * vi)
                    .sum();
                for (t, vi) in v.iter().enumerate() {
                    m[(i, k + 1 + t)] -= 2.0 * s * vi.conj();
                }
            }
        }
        for i in k + 2..n {
            a[(i, k)] = Complex64::new(0.0, 0.0);
        }
    }
}

struct Givens {
    c: f64,
    s: Complex64,
}

impl Givens {
    /// Rotation `G` with `G [x; y] = [r; 0]`.
    fn new(x: Complex64, y: Complex64) -> Self {
        let nrm = x.norm().hypot(y.norm());
        if nrm == 0.0 {
            return Self {
                c: 1.0,
                s: Complex64::new(0.0, 0.0),
            };
        }
        if x.norm() == 0.0 {
            return Self {
                c: 0.0,
                s: Complex64::new(1.0, 0.0),
            };
        }
        let ax = x.norm();
        Self {
            c: ax / nrm,
            s: (x / ax) * y.conj() / nrm,
        }
    }

    fn apply_left(&self, m: &mut CMatrix, k: usize, cols: std::ops::Range<usize>) {
        for j in cols {
            let (p, q) = (m[(k, j)], m[(k + 1, j)]);
            m[(k, j)] = self.c * p + self.s * q;
            m[(k + 1, j)] = -self.s.conj() * p + self.c * q;
        }
    }

    fn apply_right_adjoint(&self, m: &mut CMatrix, k: usize, rows: std::ops::Range<usize>) {
        for i in rows {
            let (p, q) = (m[(i, k)], m[(i, k + 1)]);
            m[(i, k)] = p * self.c + q * self.s.conj();
            m[(i, k + 1)] = -p * self.s + q * self.c;
        }
    }
}

fn wilkinson_shift(h: &CMatrix, hi: usize) -> Complex64 {
    let a = h[(hi - 1, hi - 1)];
    let b = h[(hi - 1, hi)];
    let c = h[(hi, hi - 1)];
    let d = h[(hi, hi)];
    let half = (a - d) / 2.0;
    let disc = (half * half + b * c).sqrt();
    let m = (a + d) / 2.0;
    let (s1, s2) = (m + disc, m - disc);
    if (s1 - d).norm() <= (s2 - d).norm() {
        s1
    } else {
        s2
    }
}

/// Complex Schur form `H = Z T Z^*` in place; `z` accumulates.
fn schur(h: &mut CMatrix, z: &mut CMatrix) -> Result<()> {
    let n = h.dim();
    if n < 2 {
        return Ok(());
    }
    let max_total = 30 * n.max(10);
    let mut total = 0usize;
    let mut iter = 0usize;
    let mut hi = n - 1;
    let zero = Complex64::new(0.0, 0.0);
    while hi > 0 {
        let mut l = hi;
        while l > 0 {
            let mut s = abs1(h[(l - 1, l - 1)]) + abs1(h[(l, l)]);
            if s == 0.0 {
                s = h.norm_fro();
            }
            if abs1(h[(l, l - 1)]) <= f64::EPSILON * s {
                h[(l, l - 1)] = zero;
                break;
            }
            l -= 1;
        }
        if l == hi {
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        total += 1;
        if total > max_total {
            return Err(KmsError::NoConvergence(total));
        }
        let shift = if iter % 11 == 10 {
            // exceptional shift to break cycles
            h[(hi, hi)] + 0.75 * abs1(h[(hi, hi - 1)]) * Complex64::new(1.0, 0.5)
        } else {
            wilkinson_shift(h, hi)
        };
        for k in l..hi {
            let (x, y) = if k == l {
                (h[(l, l)] - shift, h[(l + 1, l)])
            } else {
                (h[(k, k - 1)], h[(k + 1, k - 1)])
            };
            let g = Givens::new(x, y);
            let first_col = if k == l { l } else { k - 1 };
            g.apply_left(h, k, first_col..n);
            if k > l {
                h[(k + 1, k - 1)] = zero;
            }
            g.apply_right_adjoint(h, k, 0..(k + 3).min(hi + 1));
            g.apply_right_adjoint(z, k, 0..n);
        }
    }
    Ok(())
}

/// Right eigenvectors of an upper-triangular matrix (columns of the result).
fn triangular_eigenvectors(t: &CMatrix) -> Vec<Vec<Complex64>> {
    let n = t.dim();
    let small = f64::EPSILON * t.norm_fro().max(f64::MIN_POSITIVE);
    (0..n)
        .map(|k| {
            let lambda = t[(k, k)];
            let mut x = vec![Complex64::new(0.0, 0.0); n];
            x[k] = Complex64::new(1.0, 0.0);
            for i in (0..k).rev() {
                let s: Complex64 = (i + 1..=k).map(|j| t[(i, j)] * x[j]).sum();
                let mut den = t[(i, i)] - lambda;
                if den.norm() < small {
                    den = Complex64::new(small, 0.0);
                }
                x[i] = -s / den;
            }
            x
        })
        .collect()
}

pub(crate) struct Decomposition {
    pub values: Vec<Complex64>,
    pub vectors: Option<Vec<Vec<Complex64>>>,
}

pub(crate) fn decompose(m: &CMatrix, want_vectors: bool) -> Result<Decomposition> {
    let n = m.dim();
    let mut a = m.clone();
    let d = balance(&mut a);
    let mut q = CMatrix::identity(n);
    hessenberg(&mut a, &mut q);
    schur(&mut a, &mut q)?;
    let values: Vec<Complex64> = (0..n).map(|i| a[(i, i)]).collect();
    let vectors = want_vectors.then(|| {
        triangular_eigenvectors(&a)
            .into_iter()
            .map(|x| {
                let mut v = q.mul_vec(&x);
                for (vi, di) in v.iter_mut().zip(&d) {
                    *vi *= di;
                }
                let nrm = crate::linalg::vec_norm(&v);
                if nrm > 0.0 {
                    for vi in v.iter_mut() {
                        *vi /= nrm;
                    }
                }
                v
            })
            .collect()
    });
    Ok(Decomposition { values, vectors })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn hessenberg_preserves_similarity() {
        let m = CMatrix::from_fn(6, |i, j| {
            c((i * 7 + j * 3) as f64 % 5.0, (i as f64 - j as f64) * 0.3)
        });
        let mut h = m.clone();
        let mut q = CMatrix::identity(6);
        hessenberg(&mut h, &mut q);
        for i in 2..6 {
            for j in 0..i - 1 {
                assert_eq!(h[(i, j)], c(0.0, 0.0));
            }
        }
        // Q H Q^* == M
        for i in 0..6 {
            for j in 0..6 {
                let mut s = c(0.0, 0.0);
                for k in 0..6 {
                    for l in 0..6 {
                        s += q[(i, k)] * h[(k, l)] * q[(j, l)].conj();
                    }
                }
                assert!((s - m[(i, j)]).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn triangular_values() {
        let m = CMatrix::from_fn(4, |i, j| {
            if j >= i {
                c((i + j + 1) as f64, 0.5)
            } else {
                c(0.0, 0.0)
            }
        });
        let dec = decompose(&m, true).unwrap();
        let mut vals: Vec<f64> = dec.values.iter().map(|z| z.re).collect();
        vals.sort_by(f64::total_cmp);
        assert!((vals[0] - 1.0).abs() < 1e-12 && (vals[3] - 7.0).abs() < 1e-12);
    }

    #[test]
    fn companion_of_cubic() {
        // x^3 - 6x^2 + 11x - 6 = (x-1)(x-2)(x-3)
        let mut m = CMatrix::zeros(3);
        m[(0, 0)] = c(6.0, 0.0);
        m[(0, 1)] = c(-11.0, 0.0);
        m[(0, 2)] = c(6.0, 0.0);
        m[(1, 0)] = c(1.0, 0.0);
        m[(2, 1)] = c(1.0, 0.0);
        let dec = decompose(&m, true).unwrap();
        let mut vals: Vec<f64> = dec.values.iter().map(|z| z.re).collect();
        vals.sort_by(f64::total_cmp);
        for (v, e) in vals.iter().zip([1.0, 2.0, 3.0]) {
            assert!((v - e).abs() < 1e-12);
        }
        for (lambda, v) in dec.values.iter().zip(dec.vectors.unwrap()) {
            let mv = m.mul_vec(&v);
            let r: f64 = mv
                .iter()
                .zip(&v)
                .map(|(a, b)| (a - lambda * b).norm_sqr())
                .sum::<f64>()
                .sqrt();
            assert!(r < 1e-12);
        }
    }
}
