//! Bare-bones SVG line charts for `--plot`.

use std::fmt::Write;

const W: f64 = 480.0;
const H: f64 = 320.0;
const PAD: f64 = 48.0;
const COLORS: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
    /// Draw markers instead of a polyline.
    pub markers: bool,
}

pub struct Chart {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub series: Vec<Series>,
}

fn bounds(chart: &Chart) -> (f64, f64, f64, f64) {
    let pts = chart.series.iter().flat_map(|s| &s.points).filter(|p| p.0.is_finite() && p.1.is_finite());
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in pts {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if !x0.is_finite() {
        return (0.0, 1.0, 0.0, 1.0);
    }
    let widen = |lo: f64, hi: f64| {
        if hi - lo > 0.0 {
            (lo, hi)
        } else {
            (lo - 0.5, hi + 0.5)
        }
    };
    let (x0, x1) = widen(x0, x1);
    let (y0, y1) = widen(y0, y1);
    let pad = 0.05 * (y1 - y0);
    (x0, x1, y0 - pad, y1 + pad)
}

fn panel(out: &mut String, chart: &Chart, dx: f64) {
    let (x0, x1, y0, y1) = bounds(chart);
    let sx = |x: f64| dx + PAD + (x - x0) / (x1 - x0) * (W - 1.5 * PAD);
    let sy = |y: f64| H - PAD - (y - y0) / (y1 - y0) * (H - 1.5 * PAD);
    let _ = writeln!(
        out,
        r#"<rect x="{:.1}" y="{:.1}" width="{:.1}" height="{:.1}" fill="none" stroke="black"/>"#,
        dx + PAD,
        0.5 * PAD,
        W - 1.5 * PAD,
        H - 1.5 * PAD
    );
    let _ = writeln!(out, r#"<text x="{:.1}" y="20" text-anchor="middle">{}</text>"#, dx + W / 2.0, chart.title);
    let _ = writeln!(out, r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text>"#, dx + W / 2.0, H - 8.0, chart.x_label);
    let _ = writeln!(
        out,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle" transform="rotate(-90 {:.1} {:.1})">{}</text>"#,
        dx + 14.0,
        H / 2.0,
        dx + 14.0,
        H / 2.0,
        chart.y_label
    );
    for (v, anchor, x, y) in [
        (x0, "start", sx(x0), H - PAD + 14.0),
        (x1, "end", sx(x1), H - PAD + 14.0),
    ] {
        let _ = writeln!(out, r#"<text x="{x:.1}" y="{y:.1}" font-size="10" text-anchor="{anchor}">{v:.3}</text>"#);
    }
    for v in [y0, y1] {
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" font-size="10" text-anchor="end">{v:.3}</text>"#,
            dx + PAD - 4.0,
            sy(v) + 4.0
        );
    }
    for (k, s) in chart.series.iter().enumerate() {
        let color = COLORS[k % COLORS.len()];
        let pts = s.points.iter().filter(|p| p.0.is_finite() && p.1.is_finite());
        if s.markers {
            for &(x, y) in pts {
                let _ = writeln!(out, r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="{color}"/>"#, sx(x), sy(y));
            }
        } else {
            let path: Vec<String> = pts.map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y))).collect();
            let _ = writeln!(
                out,
                r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
                path.join(" ")
            );
        }
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" font-size="11" fill="{color}">{}</text>"#,
            dx + PAD + 6.0,
            0.5 * PAD + 14.0 * (k as f64 + 1.0),
            s.label
        );
    }
}

/// Lays the charts out side by side.
pub fn render(charts: &[Chart]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{:.0}" height="{H:.0}" font-family="sans-serif" font-size="12">"#,
        W * charts.len().max(1) as f64
    );
    for (i, chart) in charts.iter().enumerate() {
        panel(&mut out, chart, i as f64 * W);
    }
    out.push_str("</svg>\n");
    out
}
