//! Bare-bones SVG charts for experiment reports.

use std::fmt::Write;

const W: f64 = 640.0;
const H: f64 = 400.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

struct Axes {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Axes {
    fn new(xs: impl Iterator<Item = f64> + Clone, ys: impl Iterator<Item = f64> + Clone) -> Axes {
        let span = |it: &mut dyn Iterator<Item = f64>| {
            let (lo, hi) = it.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
            if !lo.is_finite() {
                (0.0, 1.0)
            } else if lo == hi {
                (lo - 0.5, hi + 0.5)
            } else {
                (lo, hi)
            }
        };
        let (x0, x1) = span(&mut xs.clone());
        let (y0, y1) = span(&mut ys.clone());
        Axes { x0, x1, y0, y1 }
    }

    fn px(&self, x: f64) -> f64 {
        LEFT + (x - self.x0) / (self.x1 - self.x0) * (W - LEFT - RIGHT)
    }

    fn py(&self, y: f64) -> f64 {
        H - BOTTOM - (y - self.y0) / (self.y1 - self.y0) * (H - TOP - BOTTOM)
    }
}

fn open(title: &str, x_label: &str, y_label: &str) -> String {
    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">"#
    )
    .unwrap();
    writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#).unwrap();
    writeln!(s, r#"<text x="{}" y="22" text-anchor="middle" font-size="15">{}</text>"#, W / 2.0, escape(title)).unwrap();
    writeln!(s, r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#, W / 2.0, H - 15.0, escape(x_label)).unwrap();
    writeln!(
        s,
        r#"<text x="18" y="{}" text-anchor="middle" transform="rotate(-90 18 {})">{}</text>"#,
        H / 2.0,
        H / 2.0,
        escape(y_label)
    )
    .unwrap();
    s
}

fn frame(s: &mut String, axes: &Axes) {
    let (bx, by) = (LEFT, H - BOTTOM);
    writeln!(s, r#"<line x1="{bx}" y1="{by}" x2="{}" y2="{by}" stroke="black"/>"#, W - RIGHT).unwrap();
    writeln!(s, r#"<line x1="{bx}" y1="{TOP}" x2="{bx}" y2="{by}" stroke="black"/>"#).unwrap();
    for k in 0..=4 {
        let v = axes.y0 + (axes.y1 - axes.y0) * k as f64 / 4.0;
        let y = axes.py(v);
        writeln!(s, r#"<text x="{}" y="{:.1}" text-anchor="end">{}</text>"#, LEFT - 6.0, y + 4.0, tick(v)).unwrap();
        writeln!(s, r##"<line x1="{LEFT}" y1="{y:.1}" x2="{}" y2="{y:.1}" stroke="#ddd"/>"##, W - RIGHT).unwrap();
    }
}

fn tick(v: f64) -> String {
    if v != 0.0 && (v.abs() < 1e-2 || v.abs() >= 1e4) {
        format!("{v:.1e}")
    } else {
        format!("{v:.3}")
    }
}

/// One bar per label; missing values leave a gap.
pub fn bar_chart(title: &str, labels: &[String], values: &[Option<f64>], y_label: &str) -> String {
    let ys = values.iter().flatten().copied().chain([0.0]);
    let axes = Axes::new([0.0, labels.len() as f64].into_iter(), ys);
    let mut s = open(title, "graphlet type", y_label);
    frame(&mut s, &axes);
    let slot = (W - LEFT - RIGHT) / labels.len().max(1) as f64;
    for (i, (label, v)) in labels.iter().zip(values).enumerate() {
        let x = LEFT + slot * i as f64;
        if let Some(v) = v {
            let top = axes.py(*v);
            writeln!(
                s,
                r#"<rect x="{:.1}" y="{top:.1}" width="{:.1}" height="{:.1}" fill="{}"/>"#,
                x + slot * 0.15,
                slot * 0.7,
                (axes.py(axes.y0.max(0.0)) - top).max(0.0),
                PALETTE[0]
            )
            .unwrap();
        }
        writeln!(s, r#"<text x="{:.1}" y="{}" text-anchor="middle">{}</text>"#, x + slot / 2.0, H - BOTTOM + 16.0, escape(label)).unwrap();
    }
    s.push_str("</svg>\n");
    s
}

/// Polylines sharing an x grid; `None` points break the line.
pub fn line_chart(title: &str, xs: &[f64], series: &[(String, Vec<Option<f64>>)], x_label: &str, y_label: &str) -> String {
    let ys = series.iter().flat_map(|(_, v)| v.iter().flatten().copied());
    let axes = Axes::new(xs.iter().copied(), ys.chain([0.0]));
    let mut s = open(title, x_label, y_label);
    frame(&mut s, &axes);
    for k in 0..=4 {
        let v = axes.x0 + (axes.x1 - axes.x0) * k as f64 / 4.0;
        writeln!(s, r#"<text x="{:.1}" y="{}" text-anchor="middle">{}</text>"#, axes.px(v), H - BOTTOM + 16.0, tick(v)).unwrap();
    }
    for (i, (name, ys)) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let points: Vec<String> = xs
            .iter()
            .zip(ys)
            .filter_map(|(x, y)| y.map(|y| format!("{:.1},{:.1}", axes.px(*x), axes.py(y))))
            .collect();
        if points.is_empty() {
            continue;
        }
        writeln!(s, r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#, points.join(" ")).unwrap();
        writeln!(
            s,
            r#"<text x="{}" y="{}" fill="{color}">{}</text>"#,
            W - RIGHT - 60.0,
            TOP + 12.0 * (i as f64 + 1.0),
            escape(name)
        )
        .unwrap();
    }
    s.push_str("</svg>\n");
    s
}

/// Labelled points.
pub fn scatter(title: &str, points: &[(f64, f64, String)], x_label: &str, y_label: &str) -> String {
    let axes = Axes::new(points.iter().map(|p| p.0), points.iter().map(|p| p.1));
    let mut s = open(title, x_label, y_label);
    frame(&mut s, &axes);
    for k in 0..=4 {
        let v = axes.x0 + (axes.x1 - axes.x0) * k as f64 / 4.0;
        writeln!(s, r#"<text x="{:.1}" y="{}" text-anchor="middle">{}</text>"#, axes.px(v), H - BOTTOM + 16.0, tick(v)).unwrap();
    }
    for (x, y, label) in points {
        let (px, py) = (axes.px(*x), axes.py(*y));
        writeln!(s, r#"<circle cx="{px:.1}" cy="{py:.1}" r="4" fill="{}"/>"#, PALETTE[1]).unwrap();
        writeln!(s, r#"<text x="{:.1}" y="{:.1}">{}</text>"#, px + 6.0, py - 4.0, escape(label)).unwrap();
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charts_are_closed_documents() {
        let bars = bar_chart("t", &["1".into(), "2".into()], &[Some(0.1), None], "MRE");
        assert!(bars.starts_with("<svg") && bars.trim_end().ends_with("</svg>"));
        assert_eq!(bars.matches("<rect").count(), 2);
        let lines = line_chart("t", &[1.0, 2.0], &[("a".into(), vec![Some(1.0), Some(0.5)])], "n", "y");
        assert!(lines.contains("<polyline"));
        let pts = scatter("t & u", &[(-2.0, -1.0, "6".into())], "x", "y");
        assert!(pts.contains("t &amp; u"));
    }
}
