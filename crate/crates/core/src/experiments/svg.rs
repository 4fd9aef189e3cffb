//! Minimal line plots of sweep results.

use std::fmt::Write;

use crate::format::fmt_sig;
use crate::gaussian::Conference;
use crate::scalar::Real;

use super::sweep::SweepRow;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const MARGIN: f64 = 56.0;
const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf",
];

struct Series {
    label: String,
    color: &'static str,
    dashed: bool,
    points: Vec<(f64, f64)>,
}

fn c12_label<T: Real>(c: Conference<T>) -> String {
    match c {
        Conference::Finite(v) => format!("C12={}", fmt_sig(v)),
        Conference::Infinite => "C12=inf".into(),
    }
}

/// Distinct conference values in row order, which is already sorted.
fn conferences<T: Real>(rows: &[SweepRow<T>]) -> Vec<Conference<T>> {
    let mut out: Vec<Conference<T>> = Vec::new();
    for r in rows {
        if !out.contains(&r.c12) {
            out.push(r.c12);
        }
    }
    out.sort_by(|a, b| a.sort_key().partial_cmp(&b.sort_key()).unwrap());
    out
}

fn per_conference<T: Real>(rows: &[SweepRow<T>], pick: impl Fn(&SweepRow<T>) -> T, suffix: &str) -> Vec<Series> {
    conferences(rows)
        .into_iter()
        .enumerate()
        .map(|(i, c)| Series {
            label: format!("{}{suffix}", c12_label(c)),
            color: PALETTE[i % PALETTE.len()],
            dashed: false,
            points: rows
                .iter()
                .filter(|r| r.c12 == c)
                .map(|r| (r.d.to_f64_lossy(), pick(r).to_f64_lossy()))
                .collect(),
        })
        .collect()
}

fn first_per_d<T: Real>(rows: &[SweepRow<T>], pick: impl Fn(&SweepRow<T>) -> T) -> Vec<(f64, f64)> {
    let mut pts: Vec<(f64, f64)> = Vec::new();
    for r in rows {
        let d = r.d.to_f64_lossy();
        if pts.last().is_none_or(|&(x, _)| x != d) {
            pts.push((d, pick(r).to_f64_lossy()));
        }
    }
    pts
}

fn render(title: &str, y_label: &str, series: &[Series]) -> String {
    let all = series.iter().flat_map(|s| s.points.iter());
    let (mut x0, mut x1, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, 0.0f64);
    for &(x, y) in all {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y1 = y1.max(y);
    }
    if !x0.is_finite() {
        (x0, x1) = (0.0, 1.0);
    }
    if x1 <= x0 {
        x1 = x0 + 1.0;
    }
    if y1 <= 0.0 {
        y1 = 1.0;
    }
    let y0 = 0.0;
    let sx = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
    let sy = |y: f64| HEIGHT - MARGIN - (y.max(y0) - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="24" text-anchor="middle" font-size="14">{title}</text>"#,
        WIDTH / 2.0
    );
    let (left, right, top, bottom) = (MARGIN, WIDTH - MARGIN, MARGIN, HEIGHT - MARGIN);
    let _ = writeln!(
        s,
        r#"<path d="M{left:.2} {top:.2} L{left:.2} {bottom:.2} L{right:.2} {bottom:.2}" stroke="black" fill="none"/>"#
    );
    for i in 0..=4 {
        let fx = x0 + (x1 - x0) * i as f64 / 4.0;
        let fy = y0 + (y1 - y0) * i as f64 / 4.0;
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            sx(fx),
            bottom + 16.0,
            fmt_sig((fx * 1e6).round() / 1e6)
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            left - 6.0,
            sy(fy) + 4.0,
            fmt_sig((fy * 1e4).round() / 1e4)
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">d</text>"#,
        WIDTH / 2.0,
        HEIGHT - 12.0
    );
    let _ = writeln!(
        s,
        r#"<text x="14" y="{:.2}" text-anchor="middle" transform="rotate(-90 14 {:.2})">{y_label}</text>"#,
        HEIGHT / 2.0,
        HEIGHT / 2.0
    );
    for (i, ser) in series.iter().enumerate() {
        let pts: Vec<String> = ser
            .points
            .iter()
            .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
            .collect();
        let dash = if ser.dashed { r#" stroke-dasharray="6 4""# } else { "" };
        let _ = writeln!(
            s,
            r#"<polyline points="{}" stroke="{}" fill="none" stroke-width="1.5"{dash}/>"#,
            pts.join(" "),
            ser.color
        );
        let ly = top + 14.0 * i as f64;
        let _ = writeln!(
            s,
            r#"<line x1="{:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{}"{dash}/><text x="{:.2}" y="{:.2}">{}</text>"#,
            right - 130.0,
            right - 110.0,
            ser.color,
            right - 104.0,
            ly + 4.0,
            ser.label
        );
    }
    s.push_str("</svg>\n");
    s
}

/// Lower bound per C12, the upper bound and the wiretap baseline against d.
pub fn bounds_svg<T: Real>(rows: &[SweepRow<T>]) -> String {
    let mut series = per_conference(rows, |r| r.lower_value, " lower");
    series.push(Series {
        label: "upper".into(),
        color: "black",
        dashed: false,
        points: first_per_d(rows, |r| r.upper_value),
    });
    if rows.iter().all(|r| r.wiretap_baseline >= T::zero()) {
        series.push(Series {
            label: "wiretap".into(),
            color: "#7f7f7f",
            dashed: true,
            points: first_per_d(rows, |r| r.wiretap_baseline),
        });
    }
    render("Secrecy bounds", "bits per channel use", &series)
}

/// Conferenced-message power of encoder 2 per C12 against d.
pub fn power_svg<T: Real>(rows: &[SweepRow<T>]) -> String {
    let series = per_conference(rows, |r| r.conf_power, " conf");
    render("Encoder 2 conferenced power", "watt", &series)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows() -> Vec<SweepRow<f64>> {
        let mut v = Vec::new();
        for (i, d) in [0.0, 0.5, 1.0].into_iter().enumerate() {
            for c in [Conference::Finite(0.0), Conference::Infinite] {
                v.push(SweepRow {
                    d,
                    c12: c,
                    lower_value: 0.1 * i as f64,
                    upper_value: 0.5,
                    alpha_star: 0.0,
                    beta_star: 0.5,
                    noise_power: 0.5,
                    conf_power: 0.5,
                    wiretap_baseline: 0.2,
                });
            }
        }
        v
    }

    #[test]
    fn plots_are_deterministic_and_complete() {
        let a = bounds_svg(&rows());
        assert_eq!(a, bounds_svg(&rows()));
        assert_eq!(a.matches("<polyline").count(), 4);
        assert!(a.contains("C12=inf lower"));
        let p = power_svg(&rows());
        assert_eq!(p.matches("<polyline").count(), 2);
        assert!(p.ends_with("</svg>\n"));
    }

    #[test]
    fn empty_rows_render() {
        assert!(bounds_svg::<f64>(&[]).starts_with("<svg"));
    }
}
