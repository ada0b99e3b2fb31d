mod common;

use kmsbif::critical::critical_points;
use kmsbif::geometry::level_curve_radius;
use kmsbif::kms::{lambda_of_mu, rho_of_mu};
use kmsbif::linalg::CMatrix;
use kmsbif::oracle::{
    classify_eigenvalue, count_extraordinary, eigenvalues, k3_closed_form, kms_spectrum,
    match_nearest, numeric_borderline, Grid,
};
use kmsbif::puiseux::puiseux_ab_from_t;
use kmsbif::{Complex64, EigType, MuPoint};
use rand::Rng;

use common::{in_disc, rng};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn general_matrices_backward_error_trace_det() {
    let mut r = rng(7);
    for n in [2usize, 3, 5, 8, 13, 21, 40] {
        for _ in 0..5 {
            let m = CMatrix::from_fn(n, |_, _| c(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)));
            let s = eigenvalues(&m, true).unwrap();
            assert!(s.backward_error(&m).unwrap() <= 1e-9);
            assert!((s.sum() - m.trace()).norm() <= 1e-8 * n as f64 * m.norm_fro());
            let det = m.determinant();
            assert!((s.product() - det).norm() <= 1e-6 * det.norm().max(1e-300));
        }
    }
}

#[test]
fn k3_at_critical_and_identity() {
    let s = kms_spectrum(3, c(0.0, 8f64.sqrt()), false).unwrap();
    let got = match_nearest(&[c(9.0, 0.0), c(-3.0, 0.0), c(-3.0, 0.0)], &s.eigenvalues);
    assert!((got[0] - 9.0).norm() < 1e-10);
    assert!((got[1] + 3.0).norm() < 1e-6 && (got[2] + 3.0).norm() < 1e-6);
    let s = kms_spectrum(9, c(0.0, 0.0), false).unwrap();
    assert!(s.eigenvalues.iter().all(|z| (z - 1.0).norm() < 1e-14));
}

#[test]
fn k3_random_closed_form() {
    let mut r = rng(3);
    for _ in 0..50 {
        let rho = in_disc(&mut r, 4.0);
        let s = kms_spectrum(3, rho, false).unwrap();
        let expected = k3_closed_form(rho);
        for (e, g) in expected
            .iter()
            .zip(match_nearest(&expected, &s.eigenvalues))
        {
            assert!((e - g).norm() <= 1e-10, "rho={rho}: {e} vs {g}");
        }
    }
}

#[test]
fn classification_follows_mu_type() {
    // K_5(0.3): find type-2 mu roots of rho(mu) = 0.3 by scanning the real axis
    let target = 0.3;
    let mut found = 0;
    let s = kms_spectrum(5, c(target, 0.0), true).unwrap();
    for k in 1..3000 {
        let (a, b) = (k as f64 * 1e-3, (k + 1) as f64 * 1e-3);
        let f =
            |m: f64| rho_of_mu(MuPoint::new(5, c(m, 0.0), EigType::Type2)).map(|z| z.re - target);
        let (Ok(fa), Ok(fb)) = (f(a), f(b)) else {
            continue;
        };
        if fa * fb >= 0.0 || (fa - fb).abs() > 1.0 {
            continue;
        }
        let (mut lo, mut hi) = (a, b);
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if f(mid).unwrap() * fa > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let lambda = lambda_of_mu(MuPoint::new(5, c(lo, 0.0), EigType::Type2)).unwrap();
        let idx = s.nearest(lambda, 1)[0];
        assert!((s.eigenvalues[idx] - lambda).norm() < 1e-9);
        assert_eq!(classify_eigenvalue(&s, idx).unwrap(), EigType::Type2);
        found += 1;
    }
    assert!(found >= 2, "found {found} type-2 roots");
}

#[test]
fn extraordinary_count_across_n3_point() {
    let y = 8f64.sqrt();
    let before = count_extraordinary(&kms_spectrum(3, c(0.0, y - 0.01), false).unwrap());
    let after = count_extraordinary(&kms_spectrum(3, c(0.0, y + 0.01), false).unwrap());
    assert_eq!(after, before + 1);
    assert_eq!(
        count_extraordinary(&kms_spectrum(6, c(0.0, 0.0), false).unwrap()),
        0
    );
}

#[test]
fn n3_borderlines() {
    let grid = Grid::new((-3.5, 3.5), (-3.5, 3.5), 141);
    let curves = numeric_borderline(3, &grid).unwrap();
    let type2: Vec<Complex64> = curves
        .iter()
        .filter(|c| c.eig_type == EigType::Type2)
        .flat_map(|c| c.samples.samples.iter().map(|s| s.rho))
        .collect();
    for target in [c(0.0, 8f64.sqrt()), c(0.0, -8f64.sqrt())] {
        let d = type2
            .iter()
            .map(|z| (z - target).norm())
            .fold(f64::INFINITY, f64::min);
        assert!(d <= grid.cell_size(), "type-2 curve misses {target} by {d}");
    }
    let type1: Vec<Complex64> = curves
        .iter()
        .filter(|c| c.eig_type == EigType::Type1)
        .flat_map(|c| c.samples.samples.iter().map(|s| s.rho))
        .collect();
    assert!(type1.len() > 50);
    for z in type1 {
        // Cassini oval |1 - rho^2| = 3
        assert!(((1.0 - z * z).norm() - 3.0).abs() < 2e-2, "{z}");
    }
}

#[test]
fn n4_borderline_tracks_local_level_curve() {
    let cp = critical_points(4, EigType::Type2)
        .unwrap()
        .into_iter()
        .find(|p| (p.rho_c - c(1.0, 2.0)).norm() < 1e-9)
        .unwrap();
    let p = puiseux_ab_from_t(&cp).unwrap();
    let h = 0.04;
    let grid = Grid::new((1.0 - h, 1.0 + h), (2.0 - h, 2.0 + h), 161);
    let curves = numeric_borderline(4, &grid).unwrap();
    let mut compared = 0;
    for s in curves
        .iter()
        .filter(|c| c.eig_type == EigType::Type2)
        .flat_map(|c| &c.samples.samples)
    {
        let eps = s.rho - cp.rho_c;
        if eps.norm() > 0.03 || eps.norm() < 2.0 * grid.cell_size() {
            continue;
        }
        let Some(r) = level_curve_radius(&p, eps.arg()).unwrap() else {
            continue;
        };
        assert!((r - eps.norm()).abs() <= 5e-3, "eps={eps}: local {r}");
        compared += 1;
    }
    assert!(compared > 10, "only {compared} contour points compared");
}
