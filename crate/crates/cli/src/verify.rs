//! Invariant suite over a range of n with measured residuals.

use kmsbif::critical::{all_critical_points, ORACLE_TOL};
use kmsbif::imaginary::imag_axis_params;
use kmsbif::kms::{eigenvector_of_mu, isotropy_defect, lambda_of_mu, rho_prime_of_mu};
use kmsbif::oracle::kms_spectrum;
use kmsbif::puiseux::{derivatives_at_critical, puiseux_ab_from_t, puiseux_from_derivatives};
use kmsbif::{Complex64, EigType, MuPoint};

use crate::args::{OutputArgs, VerifyArgs};
use crate::output::CliError;
use crate::table::Table;

struct Report {
    table: Table,
    failures: usize,
}

impl Report {
    fn record(&mut self, check: &str, n: usize, measured: f64, criterion: &str, pass: bool) {
        if !pass {
            self.failures += 1;
        }
        self.table.push(vec![
            check.into(),
            n.into(),
            measured.into(),
            criterion.into(),
            pass.into(),
        ]);
    }
}

fn relative_gap(x: Complex64, spectrum: &[Complex64]) -> f64 {
    spectrum
        .iter()
        .map(|z| (z - x).norm())
        .fold(f64::INFINITY, f64::min)
        / x.norm().max(1.0)
}

fn check_n(r: &mut Report, n: usize, tol: f64) -> Result<(), CliError> {
    let nf = n as f64;
    let points = all_critical_points(n)?;
    let expected = if n == 3 { 2 } else { 2 * n - 4 };
    r.record(
        "critical_point_count",
        n,
        points.len() as f64,
        &format!("== {expected}"),
        points.len() == expected,
    );

    let (mut residual, mut slope, mut route, mut iso, mut min_c, mut min_rho) =
        (0.0f64, 0.0f64, 0.0f64, 0.0f64, f64::INFINITY, f64::INFINITY);
    for cp in &points {
        let mp = MuPoint::new(n, cp.mu_c, cp.eig_type);
        residual = residual.max(cp.oracle_residual);
        slope = slope.max(rho_prime_of_mu(mp)?.norm() / (1.0 + cp.rho_c.norm()));
        let closed = puiseux_ab_from_t(cp)?;
        let chain = puiseux_from_derivatives(cp.lambda_c, &derivatives_at_critical(cp)?)?;
        let da = (closed.a - chain.a).norm().min((closed.a + chain.a).norm()) / closed.a.norm();
        route = route
            .max(da)
            .max((closed.b - chain.b).norm() / closed.b.norm());
        let v = eigenvector_of_mu(mp)?;
        let norm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        iso = iso.max(isotropy_defect(&v).norm() / norm2);
        min_c = min_c.min(closed.c.abs());
        min_rho = min_rho.min(cp.rho_c.norm());
    }
    r.record(
        "oracle_double_eigenvalue",
        n,
        residual,
        &format!("<= {tol:e}"),
        residual <= tol,
    );
    r.record("critical_derivative", n, slope, "<= 1e-8", slope <= 1e-8);
    r.record(
        "puiseux_route_agreement",
        n,
        route,
        "<= 1e-8",
        route <= 1e-8,
    );
    r.record("eigenvector_isotropy", n, iso, "<= 1e-10", iso <= 1e-10);
    r.record(
        "level_condition_min_abs_c",
        n,
        min_c,
        "> 1e-8",
        min_c > 1e-8,
    );
    if min_rho <= 1.0 {
        r.table.push_comment(format!(
            "warning: n = {n} has a critical point with |rho_c| = {min_rho} inside the unit circle"
        ));
    }

    let mut param = 0.0f64;
    for (k, ty) in [
        (0.37, EigType::Type1),
        (1.13, EigType::Type2),
        (2.41, EigType::Type1),
    ] {
        let mu = Complex64::new(k, 0.1 * k);
        let mp = MuPoint::new(n, mu, ty);
        let s = kms_spectrum(n, kmsbif::kms::rho_of_mu(mp)?, false)?;
        param = param.max(relative_gap(lambda_of_mu(mp)?, &s.eigenvalues));
    }
    r.record(
        "parameterisation_vs_oracle",
        n,
        param,
        "<= 1e-8",
        param <= 1e-8,
    );

    let s = kms_spectrum(n, Complex64::new(0.3, 0.4), false)?;
    let trace = (s.sum() - nf).norm() / nf;
    r.record("trace_identity", n, trace, "<= 1e-10", trace <= 1e-10);

    if n % 2 == 1 {
        let p = imag_axis_params(n)?;
        let s = kms_spectrum(n, p.rho_c(), false)?;
        let count = s.count_within(Complex64::new(-nf, 0.0), 1e-4 * nf);
        r.record(
            "imaginary_double_eigenvalue",
            n,
            count as f64,
            "== 2",
            count == 2,
        );

        let general = points
            .iter()
            .find(|cp| (cp.rho_c - p.rho_c()).norm() < 1e-9 * p.y_n)
            .map(puiseux_ab_from_t)
            .transpose()?;
        let agree = general.map_or(f64::INFINITY, |g| {
            ((g.a.norm() - p.a_n).abs() / p.a_n).max((g.b.norm() - p.b_n).abs() / p.b_n)
        });
        r.record("imaginary_vs_general", n, agree, "<= 1e-9", agree <= 1e-9);

        let s = kms_spectrum(n, Complex64::new(0.0, 0.7), false)?;
        let closure = s
            .eigenvalues
            .iter()
            .map(|z| relative_gap(z.conj(), &s.eigenvalues))
            .fold(0.0, f64::max);
        r.record(
            "conjugation_closure",
            n,
            closure,
            "<= 1e-10",
            closure <= 1e-10,
        );
    }
    Ok(())
}

pub fn verify(a: &VerifyArgs, out: &OutputArgs) -> Result<(Vec<Table>, usize), CliError> {
    let tol = out.tol.unwrap_or(ORACLE_TOL);
    let mut r = Report {
        table: Table::new("verify", &["check", "n", "measured", "criterion", "pass"])
            .comment(format!("invariant suite for 3 <= n <= {}", a.n_max))
            .comment("pass = 1 when the measured value meets the criterion"),
        failures: 0,
    };
    for n in 3..=a.n_max {
        check_n(&mut r, n, tol)?;
    }
    let failures = r.failures;
    r.table.push_comment(format!("{failures} failure(s)"));
    Ok((vec![r.table], failures))
}
