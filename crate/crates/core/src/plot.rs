//! Standalone SVG charts for sweep CSVs.
//!
//! A CSV whose first column is numeric (e.g. `reps,train_acc,test_acc`)
//! becomes a line chart with one series per remaining column. A kernel sweep
//! (`kernel,learning_rate,...`) or any other CSV with a text first column
//! becomes a grouped bar chart. Output depends only on the input bytes.

use std::fmt::Write;

use crate::error::{Error, Result};

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 420.0;
const LEFT: f64 = 60.0;
const RIGHT: f64 = 150.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 70.0;
const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b",
];

struct Table {
    labels: Vec<String>,
    numeric_x: Option<Vec<f64>>,
    series_names: Vec<String>,
    /// `series[s][row]`
    series: Vec<Vec<f64>>,
}

fn parse(csv_text: &str) -> Result<Table> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .from_reader(csv_text.as_bytes());
    let mut records = Vec::new();
    for (i, rec) in reader.records().enumerate() {
        let rec = rec.map_err(|e| Error::Parse {
            line: i + 1,
            message: e.to_string(),
        })?;
        records.push(rec);
    }
    let Some((header, rows)) = records.split_first() else {
        return Err(Error::Parse {
            line: 1,
            message: "empty CSV".into(),
        });
    };
    if rows.is_empty() {
        return Err(Error::Parse {
            line: 2,
            message: "CSV has a header but no data rows".into(),
        });
    }
    let label_cols = if header.get(0) == Some("kernel") && header.get(1) == Some("learning_rate") {
        2
    } else {
        1
    };
    if header.len() <= label_cols {
        return Err(Error::Parse {
            line: 1,
            message: "no value columns to plot".into(),
        });
    }
    let series_names: Vec<String> = header.iter().skip(label_cols).map(str::to_string).collect();
    let mut labels = Vec::with_capacity(rows.len());
    let mut series = vec![Vec::with_capacity(rows.len()); series_names.len()];
    for (r, rec) in rows.iter().enumerate() {
        let line = r + 2;
        if rec.len() != header.len() {
            return Err(Error::Parse {
                line,
                message: format!("{} fields, expected {}", rec.len(), header.len()),
            });
        }
        labels.push(match label_cols {
            2 => format!("{} lr={}", &rec[0], &rec[1]),
            _ => rec[0].to_string(),
        });
        for (s, cell) in rec.iter().skip(label_cols).enumerate() {
            let v: f64 = cell.trim().parse().map_err(|_| Error::Parse {
                line,
                message: format!("'{cell}' in column '{}' is not a number", series_names[s]),
            })?;
            series[s].push(v);
        }
    }
    let numeric_x = if label_cols == 1 {
        labels
            .iter()
            .map(|l| l.trim().parse::<f64>().ok())
            .collect::<Option<Vec<_>>>()
    } else {
        None
    };
    Ok(Table {
        labels,
        numeric_x,
        series_names,
        series,
    })
}

fn y_range(series: &[Vec<f64>]) -> (f64, f64) {
    let (lo, hi) = series
        .iter()
        .flatten()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| {
            (a.min(v), b.max(v))
        });
    if lo >= 0.0 && hi <= 1.0 {
        (0.0, 1.0)
    } else if hi > lo {
        (lo.min(0.0), hi)
    } else {
        (lo - 1.0, hi + 1.0)
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Renders a sweep CSV as an SVG document.
pub fn render_svg(csv_text: &str, title: &str) -> Result<String> {
    let table = parse(csv_text)?;
    let (y_lo, y_hi) = y_range(&table.series);
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let y_px = |v: f64| TOP + plot_h * (1.0 - (v - y_lo) / (y_hi - y_lo));

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(
        svg,
        r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="22" text-anchor="middle" font-size="15">{}</text>"#,
        LEFT + plot_w / 2.0,
        escape(title)
    );

    // axes and horizontal grid
    for t in 0..=5 {
        let v = y_lo + (y_hi - y_lo) * f64::from(t) / 5.0;
        let y = y_px(v);
        let _ = writeln!(
            svg,
            r##"<line x1="{LEFT}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#dddddd"/>"##,
            LEFT + plot_w
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{v:.2}</text>"#,
            LEFT - 6.0,
            y + 4.0
        );
    }
    let _ = writeln!(
        svg,
        r#"<line x1="{LEFT}" y1="{TOP}" x2="{LEFT}" y2="{:.2}" stroke="black"/>"#,
        TOP + plot_h
    );
    let _ = writeln!(
        svg,
        r#"<line x1="{LEFT}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="black"/>"#,
        TOP + plot_h,
        LEFT + plot_w,
        TOP + plot_h
    );

    let n = table.labels.len();
    match &table.numeric_x {
        Some(xs) => {
            let (x_lo, x_hi) = xs
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| {
                    (a.min(v), b.max(v))
                });
            let span = if x_hi > x_lo { x_hi - x_lo } else { 1.0 };
            let x_px = |v: f64| {
                if x_hi > x_lo {
                    LEFT + plot_w * (v - x_lo) / span
                } else {
                    LEFT + plot_w / 2.0
                }
            };
            for (x, label) in xs.iter().zip(&table.labels) {
                let _ = writeln!(
                    svg,
                    r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
                    x_px(*x),
                    TOP + plot_h + 18.0,
                    escape(label)
                );
            }
            for (s, values) in table.series.iter().enumerate() {
                let color = PALETTE[s % PALETTE.len()];
                let points: Vec<String> = xs
                    .iter()
                    .zip(values)
                    .map(|(x, v)| format!("{:.2},{:.2}", x_px(*x), y_px(*v)))
                    .collect();
                let _ = writeln!(
                    svg,
                    r#"<polyline class="series s{s}" fill="none" stroke="{color}" stroke-width="2" points="{}"/>"#,
                    points.join(" ")
                );
                for (x, v) in xs.iter().zip(values) {
                    let _ = writeln!(
                        svg,
                        r#"<circle class="point s{s}" cx="{:.2}" cy="{:.2}" r="4" fill="{color}"/>"#,
                        x_px(*x),
                        y_px(*v)
                    );
                }
            }
        }
        None => {
            let group_w = plot_w / n as f64;
            let bar_w = group_w * 0.8 / table.series.len() as f64;
            let base = y_px(y_lo.max(0.0).min(y_hi));
            for (i, label) in table.labels.iter().enumerate() {
                let cx = LEFT + group_w * (i as f64 + 0.5);
                let ty = TOP + plot_h + 14.0;
                let _ = writeln!(
                    svg,
                    r#"<text x="{cx:.2}" y="{ty:.2}" text-anchor="end" transform="rotate(-35 {cx:.2} {ty:.2})">{}</text>"#,
                    escape(label)
                );
                for (s, values) in table.series.iter().enumerate() {
                    let color = PALETTE[s % PALETTE.len()];
                    let x = LEFT + group_w * i as f64 + group_w * 0.1 + bar_w * s as f64;
                    let y = y_px(values[i]);
                    let (top, h) = if y < base {
                        (y, base - y)
                    } else {
                        (base, y - base)
                    };
                    let _ = writeln!(
                        svg,
                        r#"<rect class="point s{s}" x="{x:.2}" y="{top:.2}" width="{bar_w:.2}" height="{h:.2}" fill="{color}"/>"#
                    );
                }
            }
        }
    }

    for (s, name) in table.series_names.iter().enumerate() {
        let color = PALETTE[s % PALETTE.len()];
        let y = TOP + 10.0 + 20.0 * s as f64;
        let x = WIDTH - RIGHT + 15.0;
        let _ = writeln!(
            svg,
            r#"<rect x="{x:.2}" y="{:.2}" width="12" height="12" fill="{color}"/>"#,
            y - 10.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{y:.2}">{}</text>"#,
            x + 18.0,
            escape(name)
        );
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}
