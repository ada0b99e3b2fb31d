use kmsbif::critical::{all_critical_points, critical_points as points_of_type, ORACLE_TOL};
use kmsbif::geometry::{
    bisector_point, cardioid_approx, cusp_bisector_angle, local_level_curve,
    trajectory_along_bisector, DEFAULT_THETA_WINDOW,
};
use kmsbif::imaginary::{imag_axis_params, large_n_params};
use kmsbif::oracle::{kms_spectrum, match_nearest};
use kmsbif::puiseux::puiseux_ab_from_t;
use kmsbif::{Complex64, CriticalPoint, PuiseuxParams, TrajectoryPoint};

use crate::args::{CriticalArgs, ImagArgs, LevelArgs, OutputArgs, PointArgs};
use crate::output::CliError;
use crate::table::{Style, Table};

pub const DEFAULT_SAMPLES: usize = 401;
pub const DEFAULT_D_RANGE: f64 = 0.02;

pub fn samples(out: &OutputArgs, default: usize) -> usize {
    out.grid.map_or(default, |g| g as usize)
}

fn listing(n: usize, ty: Option<kmsbif::EigType>) -> Result<Vec<CriticalPoint>, CliError> {
    Ok(match ty {
        Some(t) => points_of_type(n, t)?,
        None => all_critical_points(n)?,
    })
}

/// The critical point chosen by `--index` or `--rho`.
pub fn pick_point(a: &PointArgs) -> Result<CriticalPoint, CliError> {
    let list = listing(a.n, a.eig_type)?;
    if let Some(rho) = &a.rho {
        let target = Complex64::new(rho[0], rho[1]);
        return list
            .into_iter()
            .min_by(|p, q| {
                (p.rho_c - target)
                    .norm()
                    .total_cmp(&(q.rho_c - target).norm())
            })
            .ok_or_else(|| CliError::Usage(format!("no critical points for n = {}", a.n)));
    }
    let k = a
        .index
        .ok_or_else(|| CliError::Usage("select a critical point with --index or --rho".into()))?;
    let len = list.len();
    list.into_iter().nth(k).ok_or_else(|| {
        CliError::Usage(format!(
            "--index {k} out of range (n = {} has {len} points)",
            a.n
        ))
    })
}

fn point_comments(t: Table, cp: &CriticalPoint, p: &PuiseuxParams) -> Table {
    t.comment(format!("n = {}, type {}", cp.n, cp.eig_type))
        .comment(format!(
            "rho_c = {:.16e} {:+.16e}i",
            cp.rho_c.re, cp.rho_c.im
        ))
        .comment(format!(
            "a = {:.16e} {:+.16e}i (sign is conventional)",
            p.a.re, p.a.im
        ))
        .comment(format!("b = {:.16e} {:+.16e}i", p.b.re, p.b.im))
        .comment(format!("c = {:.16e}", p.c))
        .comment(format!(
            "cusp bisector angle = {:.16e} rad",
            cusp_bisector_angle(p)
        ))
}

pub fn critical_points(a: &CriticalArgs, out: &OutputArgs) -> Result<Vec<Table>, CliError> {
    let tol = out.tol.unwrap_or(ORACLE_TOL);
    let list = listing(a.n, a.eig_type)?;
    let mut t = Table::new(
        format!("critical_points_n{}", a.n),
        &[
            "n",
            "type",
            "t_re",
            "t_im",
            "mu_re",
            "mu_im",
            "rho_re",
            "rho_im",
            "oracle_residual",
        ],
    )
    .comment("critical points rho_c where -n is a double eigenvalue of K_n(rho_c)")
    .comment("oracle_residual: max |lambda + n| / n over the two oracle eigenvalues nearest -n")
    .comment("rows ordered by type, then arg(rho_c)")
    .with_plot("rho_re", &["rho_im"], None, Style::Points);
    for cp in &list {
        t.push(vec![
            cp.n.into(),
            cp.eig_type.index().into(),
            cp.t_c.re.into(),
            cp.t_c.im.into(),
            cp.mu_c.re.into(),
            cp.mu_c.im.into(),
            cp.rho_c.re.into(),
            cp.rho_c.im.into(),
            cp.oracle_residual.into(),
        ]);
    }
    if let Some(bad) = list.iter().find(|cp| cp.oracle_residual > tol) {
        return Err(CliError::Failed(format!(
            "oracle residual {:e} at rho_c = {} exceeds --tol {tol:e}",
            bad.oracle_residual, bad.rho_c
        )));
    }
    Ok(vec![t])
}

pub fn puiseux(a: &PointArgs) -> Result<Vec<Table>, CliError> {
    let list = if a.index.is_some() || a.rho.is_some() {
        vec![pick_point(a)?]
    } else {
        listing(a.n, a.eig_type)?
    };
    let mut t = Table::new(
        format!("puiseux_n{}", a.n),
        &[
            "n",
            "type",
            "rho_re",
            "rho_im",
            "t_re",
            "t_im",
            "a_re",
            "a_im",
            "b_re",
            "b_im",
            "theta_a",
            "theta_b",
            "big_theta",
            "c",
            "bisector_angle",
        ],
    )
    .comment("lambda/lambda_c = 1 + a eps^(1/2) + b eps + O(eps^(3/2)), eps = rho - rho_c")
    .comment(
        "a is defined up to sign; angles in radians, big_theta = theta_b - 2 theta_a in (-pi, pi]",
    )
    .comment("c = (|a|^2 - 2|b| cos(big_theta)) / 2");
    for cp in &list {
        let p = puiseux_ab_from_t(cp)?;
        t.push(vec![
            cp.n.into(),
            cp.eig_type.index().into(),
            cp.rho_c.re.into(),
            cp.rho_c.im.into(),
            cp.t_c.re.into(),
            cp.t_c.im.into(),
            p.a.re.into(),
            p.a.im.into(),
            p.b.re.into(),
            p.b.im.into(),
            p.theta_a.into(),
            p.theta_b.into(),
            p.big_theta.into(),
            p.c.into(),
            cusp_bisector_angle(&p).into(),
        ]);
    }
    Ok(vec![t])
}

/// Local level curve, cardioid and bisector tables for one point.
pub fn level_tables(
    prefix: &str,
    cp: &CriticalPoint,
    window: f64,
    count: usize,
    eps_cap: f64,
) -> Result<Vec<Table>, CliError> {
    let p = puiseux_ab_from_t(cp)?;
    let lc = local_level_curve(&p, cp.rho_c, window, count, eps_cap)?;
    let mut level = point_comments(
        Table::new(
            format!("{prefix}local_level_curve"),
            &["theta", "eps_mag", "rho_re", "rho_im"],
        ),
        cp,
        &p,
    )
    .comment("rho = rho_c + eps_mag exp(i theta) on |lambda(rho)| = n to O(|eps|^(3/2))")
    .comment(format!(
        "{} angles dropped (invalid denominator or |eps| > {eps_cap})",
        lc.dropped.len()
    ))
    .with_plot("rho_re", &["rho_im"], None, Style::Dashed);
    for s in &lc.curve.samples {
        level.push(vec![
            s.theta.into(),
            s.eps_mag.into(),
            s.rho.re.into(),
            s.rho.im.into(),
        ]);
    }

    let phi = cusp_bisector_angle(&p);
    let mut cardioid = Table::new(
        format!("{prefix}cardioid"),
        &["theta", "eps_mag", "rho_re", "rho_im"],
    )
    .comment("cardioid approximation of the local level curve near its cusp")
    .with_plot("rho_re", &["rho_im"], None, Style::Solid);
    let half = count.max(3) / 2;
    for k in 0..=2 * half {
        let theta = phi + (k as f64 - half as f64) * window / half as f64;
        let r = cardioid_approx(&p, theta)?;
        if r <= eps_cap {
            let rho = cp.rho_c + Complex64::from_polar(r, theta);
            cardioid.push(vec![theta.into(), r.into(), rho.re.into(), rho.im.into()]);
        }
    }

    let mut bisector = Table::new(format!("{prefix}cusp_bisector"), &["d", "rho_re", "rho_im"])
        .comment("rho = rho_c + d exp(-2 i theta_a); d > 0 runs into the cusp interior")
        .with_plot("rho_re", &["rho_im"], None, Style::Dotted);
    for k in 0..=20 {
        let d = eps_cap * (k as f64 / 10.0 - 1.0);
        let rho = bisector_point(&p, cp.rho_c, d);
        bisector.push(vec![d.into(), rho.re.into(), rho.im.into()]);
    }
    Ok(vec![level, cardioid, bisector])
}

pub fn level_curve(a: &LevelArgs, out: &OutputArgs) -> Result<Vec<Table>, CliError> {
    let cp = pick_point(&a.point)?;
    level_tables(
        "",
        &cp,
        out.window.unwrap_or(DEFAULT_THETA_WINDOW),
        samples(out, DEFAULT_SAMPLES),
        a.eps_cap,
    )
}

pub fn d_grid(half_range: f64, count: usize) -> Vec<f64> {
    let half = count.max(3) / 2;
    (0..=2 * half)
        .map(|k| half_range * (k as f64 - half as f64) / half as f64)
        .collect()
}

/// Formula pair against the oracle pair at each `d`.
///
/// `rho_at` maps `d` to the matrix parameter. All eigenvalues are
/// normalised by `lambda_c`.
pub fn trajectory_table(
    name: String,
    n: usize,
    lambda_c: Complex64,
    points: &[TrajectoryPoint],
    rho_at: impl Fn(f64) -> Complex64,
) -> Result<Table, CliError> {
    let mut t = Table::new(
        name,
        &[
            "d", "formula_re_1", "formula_re_2", "formula_im_1", "formula_im_2", "formula_mag_1", "formula_mag_2",
            "oracle_re_1", "oracle_re_2", "oracle_im_1", "oracle_im_2", "oracle_mag_1", "oracle_mag_2",
            "pair_residual", "mag_residual",
        ],
    )
    .comment("eigenvalues normalised by lambda_c; formula = leading-order Puiseux prediction, oracle = dense eigensolver")
    .comment("pair_residual: max distance between matched normalised eigenvalues")
    .comment("mag_residual: max difference of the sorted normalised magnitudes")
    .with_plot("d", &["formula_mag_1", "formula_mag_2", "oracle_mag_1", "oracle_mag_2"], None, Style::Solid);
    for tp in points {
        let w = [
            Complex64::new(tp.re_pair.0, tp.im_pair.0),
            Complex64::new(tp.re_pair.1, tp.im_pair.1),
        ];
        let s = kms_spectrum(n, rho_at(tp.d), false)?;
        let matched = match_nearest(&[w[0] * lambda_c, w[1] * lambda_c], &s.eigenvalues);
        let o = [matched[0] / lambda_c, matched[1] / lambda_c];
        let pair_residual = (o[0] - w[0]).norm().max((o[1] - w[1]).norm());
        let mut fm = [tp.mag_pair.0, tp.mag_pair.1];
        let mut om = [o[0].norm(), o[1].norm()];
        fm.sort_by(f64::total_cmp);
        om.sort_by(f64::total_cmp);
        let mag_residual = (fm[0] - om[0]).abs().max((fm[1] - om[1]).abs());
        t.push(vec![
            tp.d.into(),
            tp.re_pair.0.into(),
            tp.re_pair.1.into(),
            tp.im_pair.0.into(),
            tp.im_pair.1.into(),
            tp.mag_pair.0.into(),
            tp.mag_pair.1.into(),
            o[0].re.into(),
            o[1].re.into(),
            o[0].im.into(),
            o[1].im.into(),
            o[0].norm().into(),
            o[1].norm().into(),
            pair_residual.into(),
            mag_residual.into(),
        ]);
    }
    Ok(t)
}

pub fn bisector_trajectory(
    prefix: &str,
    cp: &CriticalPoint,
    half_range: f64,
    count: usize,
) -> Result<Table, CliError> {
    let p = puiseux_ab_from_t(cp)?;
    let pts = trajectory_along_bisector(&p, &d_grid(half_range, count));
    let t = trajectory_table(
        format!("{prefix}trajectory"),
        cp.n,
        cp.lambda_c,
        &pts,
        |d| bisector_point(&p, cp.rho_c, d),
    )?;
    Ok(point_comments(t, cp, &p).comment("rho = rho_c + d exp(-2 i theta_a)"))
}

pub fn trajectory(a: &PointArgs, out: &OutputArgs) -> Result<Vec<Table>, CliError> {
    let cp = pick_point(a)?;
    Ok(vec![bisector_trajectory(
        "",
        &cp,
        out.window.unwrap_or(DEFAULT_D_RANGE),
        samples(out, 201),
    )?])
}

pub fn imaginary_table(dims: &[usize]) -> Result<Table, CliError> {
    let mut t = Table::new(
        "imaginary_family",
        &["n", "type", "v", "x", "y", "a", "b", "c"],
    )
    .comment("critical point rho_c = i y on the positive imaginary axis, odd n")
    .comment("cosh(n v) = n cosh(v), x = cosh(v), lambda_c = -n")
    .comment("a, b: moduli of the Puiseux coefficients; c = (a^2 - 2 b) / 2")
    .with_plot("n", &["a", "b", "c"], None, Style::Solid);
    for &n in dims {
        let p = imag_axis_params(n)?;
        t.push(vec![
            n.into(),
            p.eig_type.index().into(),
            p.v_n.into(),
            p.x_n.into(),
            p.y_n.into(),
            p.a_n.into(),
            p.b_n.into(),
            p.c_n.into(),
        ]);
    }
    Ok(t)
}

pub fn imaginary(a: &ImagArgs) -> Result<Vec<Table>, CliError> {
    Ok(vec![imaginary_table(&a.dims())?])
}

pub fn large_n(a: &ImagArgs) -> Result<Vec<Table>, CliError> {
    let mut t = Table::new(
        "large_n",
        &[
            "n",
            "v",
            "v_approx",
            "v_err_pct",
            "y",
            "y_approx",
            "y_err_pct",
            "a",
            "a_approx",
            "a_err_pct",
            "b",
            "b_approx",
            "b_err_pct",
        ],
    )
    .comment("large-n approximations against the exact imaginary-family parameters")
    .comment("err_pct = 100 |approx - exact| / exact")
    .with_plot(
        "n",
        &["y_err_pct", "a_err_pct", "b_err_pct"],
        None,
        Style::Solid,
    );
    let pct = |approx: f64, exact: f64| 100.0 * (approx - exact).abs() / exact;
    for n in a.dims() {
        let p = imag_axis_params(n)?;
        let (v, y, aa, b) = large_n_params(n)?;
        t.push(vec![
            n.into(),
            p.v_n.into(),
            v.into(),
            pct(v, p.v_n).into(),
            p.y_n.into(),
            y.into(),
            pct(y, p.y_n).into(),
            p.a_n.into(),
            aa.into(),
            pct(aa, p.a_n).into(),
            p.b_n.into(),
            b.into(),
            pct(b, p.b_n).into(),
        ]);
    }
    Ok(vec![t])
}
