//! Data series behind the nine figures; oracle curves are solid, formula curves dashed.

use std::f64::consts::FRAC_PI_2;

use kmsbif::critical::{critical_points, CriticalPoint};
use kmsbif::geometry::DEFAULT_THETA_WINDOW;
use kmsbif::imaginary::{imag_axis_params, imag_level_curve, imag_trajectory, parabola_trajectory};
use kmsbif::oracle::kms_spectrum;
use kmsbif::oracle::{numeric_borderline, Grid};
use kmsbif::{Complex64, EigType};

use crate::args::{FigureArgs, OutputArgs};
use crate::commands::{
    bisector_trajectory, d_grid, imaginary_table, level_tables, samples, trajectory_table,
};
use crate::output::CliError;
use crate::table::{Style, Table};

const DEFAULT_GRID: usize = 161;

fn point_near(n: usize, ty: EigType, near: Complex64) -> Result<CriticalPoint, CliError> {
    critical_points(n, ty)?
        .into_iter()
        .min_by(|p, q| (p.rho_c - near).norm().total_cmp(&(q.rho_c - near).norm()))
        .ok_or_else(|| CliError::Failed(format!("no type-{ty} critical points for n = {n}")))
}

fn borderline(name: String, n: usize, ty: EigType, grid: &Grid) -> Result<Table, CliError> {
    if grid.resolution < 64 {
        return Err(CliError::Usage(format!(
            "--grid {} too coarse for oracle contours (need >= 64)",
            grid.resolution
        )));
    }
    let mut t = Table::new(name, &["segment", "rho_re", "rho_im"])
        .comment(format!(
            "oracle contour |lambda| = {n} for type-{ty} eigenvalues"
        ))
        .comment(format!(
            "grid re [{}, {}] im [{}, {}] at {}x{} nodes",
            grid.re_min, grid.re_max, grid.im_min, grid.im_max, grid.resolution, grid.resolution
        ))
        .with_plot("rho_re", &["rho_im"], Some("segment"), Style::Solid);
    let mut fallback = false;
    let curves = numeric_borderline(n, grid)?;
    for (k, c) in curves.iter().filter(|c| c.eig_type == ty).enumerate() {
        fallback |= c.union_fallback;
        for s in &c.samples.samples {
            t.push(vec![k.into(), s.rho.re.into(), s.rho.im.into()]);
        }
    }
    if fallback {
        t.push_comment(
            "warning: some eigenvalues could not be classified and were counted for both types",
        );
    }
    Ok(t)
}

fn box_around(center: Complex64, half: f64, res: usize) -> Grid {
    Grid::new(
        (center.re - half, center.re + half),
        (center.im - half, center.im + half),
        res,
    )
}

pub fn figure(a: &FigureArgs, out: &OutputArgs) -> Result<Vec<Table>, CliError> {
    let res = samples(out, DEFAULT_GRID);
    let prefix = format!("fig{}_", a.id);
    let window = out.window;
    match a.id {
        1 => {
            let mut tables = vec![borderline(
                format!("{prefix}borderline"),
                3,
                EigType::Type2,
                &Grid::new((-4.0, 4.0), (-4.0, 4.0), res),
            )?];
            for (k, cp) in critical_points(3, EigType::Type2)?.iter().enumerate() {
                let mut lc = level_tables(
                    &format!("{prefix}point{k}_"),
                    cp,
                    window.unwrap_or(1.2),
                    401,
                    1.5,
                )?;
                tables.push(lc.remove(0));
            }
            Ok(tables)
        }
        2 | 3 => {
            let (n, ty, near) = if a.id == 2 {
                (4, EigType::Type2, Complex64::new(1.0, 2.0))
            } else {
                (8, EigType::Type1, Complex64::new(0.922, -1.29))
            };
            let cp = point_near(n, ty, near)?;
            let mut tables = vec![borderline(
                format!("{prefix}borderline"),
                n,
                ty,
                &box_around(cp.rho_c, 1.0, res),
            )?];
            let mut lc = level_tables(
                &prefix,
                &cp,
                window.unwrap_or(DEFAULT_THETA_WINDOW),
                401,
                0.5,
            )?;
            tables.push(lc.remove(0));
            tables.push(lc.remove(1));
            Ok(tables)
        }
        4 | 5 => {
            let (n, ty, near) = if a.id == 4 {
                (4, EigType::Type2, Complex64::new(1.0, 2.0))
            } else {
                (8, EigType::Type1, Complex64::new(0.922, -1.29))
            };
            let cp = point_near(n, ty, near)?;
            Ok(vec![bisector_trajectory(
                &prefix,
                &cp,
                window.unwrap_or(0.02),
                201,
            )?])
        }
        6 => {
            let dims: Vec<usize> = (3..=a.n_max).step_by(2).collect();
            let mut t = imaginary_table(&dims)?;
            t.name = format!("{prefix}parameters");
            Ok(vec![t])
        }
        7 => {
            let p = imag_axis_params(19)?;
            let pts = imag_trajectory(&p, &d_grid(window.unwrap_or(0.005), 201));
            let t = trajectory_table(
                format!("{prefix}trajectory"),
                19,
                Complex64::new(-19.0, 0.0),
                &pts,
                |d| Complex64::new(0.0, p.y_n + d),
            )?;
            Ok(vec![
                t.comment(format!("rho = i (y + d), y = {:.16e}", p.y_n))
            ])
        }
        8 => {
            let p = imag_axis_params(19)?;
            let border = borderline(
                format!("{prefix}borderline"),
                19,
                p.eig_type,
                &Grid::new((-1.6, 1.6), (-1.6, 1.6), res),
            )?;
            let w = window.unwrap_or(DEFAULT_THETA_WINDOW);
            let curve = imag_level_curve(&p, (-FRAC_PI_2 - w, -FRAC_PI_2 + w), 401)?;
            let mut lc = Table::new(
                format!("{prefix}local_level_curve"),
                &["theta", "eps_mag", "rho_re", "rho_im"],
            )
            .comment(format!("local level curve at rho_c = i {:.16e}", p.y_n))
            .with_plot("rho_re", &["rho_im"], None, Style::Dashed);
            for s in curve.samples.iter().filter(|s| s.eps_mag <= 0.5) {
                lc.push(vec![
                    s.theta.into(),
                    s.eps_mag.into(),
                    s.rho.re.into(),
                    s.rho.im.into(),
                ]);
            }
            Ok(vec![border, lc])
        }
        9 => {
            let p = imag_axis_params(19)?;
            let w = window.unwrap_or(0.005);
            let chis: Vec<f64> = (0..=100)
                .map(|k| 1.0 - p.b_n * w * k as f64 / 100.0)
                .collect();
            let mut parabola = Table::new(
                format!("{prefix}parabola"),
                &["chi", "psi_plus", "psi_minus"],
            )
            .comment("psi^2 = (a^2 / b)(1 - chi), vertex at (1, 0)")
            .with_plot("chi", &["psi_plus", "psi_minus"], None, Style::Dashed);
            for (chi, (pp, pm)) in parabola_trajectory(&p, &chis)? {
                parabola.push(vec![chi.into(), pp.into(), pm.into()]);
            }
            let mut oracle = Table::new(
                format!("{prefix}oracle_trajectory"),
                &["branch", "d", "re", "im"],
            )
            .comment("oracle eigenvalue pair lambda / lambda_c at rho = i (y + d), d <= 0")
            .with_plot("re", &["im"], Some("branch"), Style::Solid);
            let ds: Vec<f64> = (0..=100).map(|k| -w * (100 - k) as f64 / 100.0).collect();
            let mut branches = [Vec::new(), Vec::new()];
            for &d in &ds {
                let s = kms_spectrum(19, Complex64::new(0.0, p.y_n + d), false)?;
                let mut pair: Vec<Complex64> = s
                    .nearest(Complex64::new(-19.0, 0.0), 2)
                    .iter()
                    .map(|&i| s.eigenvalues[i] / -19.0)
                    .collect();
                pair.sort_by(|x, y| y.im.total_cmp(&x.im));
                branches[0].push((d, pair[0]));
                branches[1].push((d, pair[1]));
            }
            for (k, branch) in branches.iter().enumerate() {
                for &(d, z) in branch {
                    oracle.push(vec![k.into(), d.into(), z.re.into(), z.im.into()]);
                }
            }
            Ok(vec![parabola, oracle])
        }
        _ => Err(CliError::Usage(format!("unknown figure {}", a.id))),
    }
}
