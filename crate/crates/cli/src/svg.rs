//! Minimal static SVG of the plot columns of a set of tables.

use std::fmt::Write as _;

use crate::table::{Style, Table};

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 540.0;
const MARGIN: f64 = 48.0;
const COLORS: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
];

struct Series<'a> {
    name: &'a str,
    style: Style,
    lines: Vec<Vec<(f64, f64)>>,
}

fn collect(t: &Table) -> Vec<Series<'_>> {
    let Some(plot) = &t.plot else {
        return Vec::new();
    };
    plot.y
        .iter()
        .map(|&yc| {
            let mut lines: Vec<Vec<(f64, f64)>> = vec![Vec::new()];
            let mut last_seg = None;
            for row in &t.rows {
                let seg = plot.segment.map(|s| row[s].clone());
                if last_seg.is_some() && seg != last_seg {
                    lines.push(Vec::new());
                }
                last_seg = seg;
                match (row[plot.x].as_f64(), row[yc].as_f64()) {
                    (Some(x), Some(y)) if x.is_finite() && y.is_finite() => {
                        lines.last_mut().unwrap().push((x, y))
                    }
                    _ => lines.push(Vec::new()),
                }
            }
            lines.retain(|l| !l.is_empty());
            Series {
                name: &t.columns[yc],
                style: plot.style,
                lines,
            }
        })
        .collect()
}

pub fn render(tables: &[Table]) -> String {
    let series: Vec<(usize, Series)> = tables
        .iter()
        .enumerate()
        .flat_map(|(k, t)| collect(t).into_iter().map(move |s| (k, s)))
        .collect();
    let pts = series.iter().flat_map(|(_, s)| s.lines.iter().flatten());
    let (mut x0, mut x1, mut y0, mut y1) = (
        f64::INFINITY,
        f64::NEG_INFINITY,
        f64::INFINITY,
        f64::NEG_INFINITY,
    );
    for &(x, y) in pts {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if !(x0 < x1) {
        (x0, x1) = (x0 - 1.0, x0 + 1.0);
    }
    if !(y0 < y1) {
        (y0, y1) = (y0 - 1.0, y0 + 1.0);
    }
    if !x0.is_finite() {
        (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
    }
    let sx = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
    let sy = |y: f64| HEIGHT - MARGIN - (y - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        out,
        r##"<rect x="{MARGIN}" y="{MARGIN}" width="{}" height="{}" fill="none" stroke="#444"/>"##,
        WIDTH - 2.0 * MARGIN,
        HEIGHT - 2.0 * MARGIN
    );
    let _ = writeln!(
        out,
        r#"<text x="{MARGIN}" y="{}" font-size="11">x: [{x0:.4}, {x1:.4}]  y: [{y0:.4}, {y1:.4}]</text>"#,
        HEIGHT - 16.0
    );
    for (i, (k, s)) in series.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" font-size="11" fill="{color}">{}: {}</text>"#,
            MARGIN + 4.0,
            MARGIN + 14.0 * (i + 1) as f64,
            tables[*k].name,
            s.name
        );
        for line in &s.lines {
            if s.style == Style::Points {
                for &(x, y) in line {
                    let _ = writeln!(
                        out,
                        r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="{color}"/>"#,
                        sx(x),
                        sy(y)
                    );
                }
                continue;
            }
            let dash = match s.style {
                Style::Dashed => r#" stroke-dasharray="6 4""#,
                Style::Dotted => r#" stroke-dasharray="1 3""#,
                _ => "",
            };
            let coords: Vec<String> = line
                .iter()
                .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
                .collect();
            let _ = writeln!(
                out,
                r#"<polyline fill="none" stroke="{color}" stroke-width="1.5"{dash} points="{}"/>"#,
                coords.join(" ")
            );
        }
    }
    out.push_str("</svg>\n");
    out
}
