//! Minimal standalone SVG line plots of sweep rows.

use std::fmt::Write as _;
use std::path::Path;

use super::{SweepAxis, SweepRow};
use crate::error::{Error, Result};

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 460.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 200.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 60.0;
const TICKS: usize = 5;

const PALETTE: [&str; 9] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#17becf",
];

/// Row attribute that separates curves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SeriesKey {
    Channel,
    State,
    Mu,
    P,
    R,
}

impl SeriesKey {
    fn axis(self) -> Option<SweepAxis> {
        match self {
            Self::Mu => Some(SweepAxis::Mu),
            Self::P => Some(SweepAxis::P),
            Self::R => Some(SweepAxis::R),
            Self::Channel | Self::State => None,
        }
    }

    fn describe(self, row: &SweepRow) -> String {
        match self {
            Self::Channel => row.channel.label().to_string(),
            Self::State => row.state.clone(),
            Self::Mu => format!("mu={:.4}", row.mu),
            Self::P => format!("p={:.4}", row.p),
            Self::R => format!("r={:.4}", row.r),
        }
    }

    const ALL: [SeriesKey; 5] = [Self::Channel, Self::State, Self::Mu, Self::P, Self::R];
}

/// Which concurrence column to plot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PlotColumn {
    #[default]
    Oracle,
    Closed,
}

impl PlotColumn {
    fn pick(self, row: &SweepRow) -> f64 {
        match self {
            Self::Oracle => row.c_oracle,
            Self::Closed => row.c_closed,
        }
    }
}

struct Series {
    label: String,
    points: Vec<(f64, f64)>,
}

fn same_value(rows: &[SweepRow], key: SeriesKey) -> bool {
    let first = &rows[0];
    rows.iter().all(|row| match key.axis() {
        Some(axis) => row.axis_value(axis) == first.axis_value(axis),
        None => key.describe(row) == key.describe(first),
    })
}

fn group(rows: &[SweepRow], x: SweepAxis, series: &[SeriesKey], column: PlotColumn) -> Result<Vec<Series>> {
    if series.iter().any(|k| k.axis() == Some(x)) {
        return Err(Error::BadPlotRequest(format!(
            "{} is both the x axis and a series key",
            x.label()
        )));
    }
    if rows.is_empty() {
        return Ok(Vec::new());
    }
    for key in SeriesKey::ALL {
        if key.axis() != Some(x) && !series.contains(&key) && !same_value(rows, key) {
            return Err(Error::BadPlotRequest(format!(
                "{key:?} varies but is neither the x axis nor a series key"
            )));
        }
    }

    let mut out: Vec<(Vec<String>, Series)> = Vec::new();
    for row in rows {
        let id: Vec<String> = series.iter().map(|k| k.describe(row)).collect();
        let idx = match out.iter().position(|(k, _)| *k == id) {
            Some(i) => i,
            None => {
                let label = if id.is_empty() {
                    "concurrence".to_string()
                } else {
                    id.join(" ")
                };
                out.push((
                    id,
                    Series {
                        label,
                        points: Vec::new(),
                    },
                ));
                out.len() - 1
            }
        };
        let xv = row.axis_value(x);
        let s = &mut out[idx].1;
        if s.points.iter().any(|&(px, _)| px == xv) {
            return Err(Error::BadPlotRequest(format!(
                "series `{}` has two rows at {} = {xv}",
                s.label,
                x.label()
            )));
        }
        s.points.push((xv, column.pick(row)));
    }
    let mut series: Vec<Series> = out.into_iter().map(|(_, s)| s).collect();
    for s in &mut series {
        s.points.sort_by(|a, b| a.0.total_cmp(&b.0));
    }
    Ok(series)
}

/// Renders rows as one polyline per distinct `series` tuple against `x`.
/// Concurrence is drawn on a fixed `[0, 1]` y axis; NaN values are skipped.
pub fn render_svg_lineplot(
    rows: &[SweepRow],
    x: SweepAxis,
    series: &[SeriesKey],
    column: PlotColumn,
) -> Result<String> {
    let groups = group(rows, x, series, column)?;

    let (mut x0, mut x1) = x.bounds();
    if !rows.is_empty() {
        x0 = rows.iter().map(|r| r.axis_value(x)).fold(f64::INFINITY, f64::min);
        x1 = rows.iter().map(|r| r.axis_value(x)).fold(f64::NEG_INFINITY, f64::max);
        if x1 <= x0 {
            x1 = x0 + 1.0;
        }
    }
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let sx = |v: f64| LEFT + (v - x0) / (x1 - x0) * plot_w;
    let sy = |v: f64| TOP + (1.0 - v) * plot_h;

    let mut svg = String::new();
    let w = &mut svg;
    // Writing to a String cannot fail.
    let _ = writeln!(w, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        w,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(
        w,
        r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );

    // Axes and ticks.
    let (bx, by) = (LEFT, TOP + plot_h);
    let _ = writeln!(
        w,
        r#"<path d="M{bx:.2} {TOP:.2} L{bx:.2} {by:.2} L{:.2} {by:.2}" fill="none" stroke="black" stroke-width="1"/>"#,
        LEFT + plot_w
    );
    for i in 0..=TICKS {
        let t = i as f64 / TICKS as f64;
        let xv = x0 + t * (x1 - x0);
        let px = sx(xv);
        let py = sy(t);
        let _ = writeln!(
            w,
            r#"<line x1="{px:.2}" y1="{by:.2}" x2="{px:.2}" y2="{:.2}" stroke="black"/>"#,
            by + 5.0
        );
        let _ = writeln!(
            w,
            r#"<text x="{px:.2}" y="{:.2}" font-family="sans-serif" font-size="12" text-anchor="middle">{xv:.3}</text>"#,
            by + 20.0
        );
        let _ = writeln!(
            w,
            r#"<line x1="{:.2}" y1="{py:.2}" x2="{bx:.2}" y2="{py:.2}" stroke="black"/>"#,
            bx - 5.0
        );
        let _ = writeln!(
            w,
            r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="12" text-anchor="end">{t:.1}</text>"#,
            bx - 8.0,
            py + 4.0
        );
    }
    let _ = writeln!(
        w,
        r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="14" text-anchor="middle">{}</text>"#,
        LEFT + plot_w / 2.0,
        HEIGHT - 15.0,
        x.label()
    );
    let _ = writeln!(
        w,
        r#"<text x="18" y="{:.2}" font-family="sans-serif" font-size="14" text-anchor="middle" transform="rotate(-90 18 {:.2})">concurrence</text>"#,
        TOP + plot_h / 2.0,
        TOP + plot_h / 2.0
    );

    for (i, s) in groups.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let pts: Vec<String> = s
            .points
            .iter()
            .filter(|(_, y)| y.is_finite())
            .map(|&(xv, yv)| format!("{:.2},{:.2}", sx(xv), sy(yv.clamp(0.0, 1.0))))
            .collect();
        let _ = writeln!(
            w,
            r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"#,
            pts.join(" ")
        );
        let ly = TOP + 10.0 + 18.0 * i as f64;
        let lx = WIDTH - RIGHT + 15.0;
        let _ = writeln!(
            w,
            r#"<line x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{color}" stroke-width="2"/>"#,
            lx + 20.0
        );
        let _ = writeln!(
            w,
            r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="11">{}</text>"#,
            lx + 25.0,
            ly + 4.0,
            escape(&s.label)
        );
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

pub fn emit_svg_lineplot(
    rows: &[SweepRow],
    x: SweepAxis,
    series: &[SeriesKey],
    column: PlotColumn,
    path: &Path,
) -> Result<()> {
    let svg = render_svg_lineplot(rows, x, series, column)?;
    std::fs::write(path, svg).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::ChannelKind;

    fn row(mu: f64, r: f64, c: f64) -> SweepRow {
        SweepRow {
            mu,
            p: 0.3,
            r,
            channel: ChannelKind::Depolarizing,
            state: "bell".into(),
            c_closed: f64::NAN,
            c_oracle: c,
            delta: f64::NAN,
        }
    }

    fn two_series() -> Vec<SweepRow> {
        let mut rows = Vec::new();
        for r in [0.0, 0.5] {
            for i in 0..101 {
                let mu = i as f64 / 100.0;
                rows.push(row(mu, r, 0.5 + 0.4 * mu - 0.2 * r));
            }
        }
        rows
    }

    #[test]
    fn one_polyline_per_series() {
        let svg = render_svg_lineplot(&two_series(), SweepAxis::Mu, &[SeriesKey::R], PlotColumn::Oracle).unwrap();
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert!(svg.contains("r=0.5000"));
        assert!(svg.starts_with("<?xml"));
        assert!(svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn empty_input_has_axes_only() {
        let svg = render_svg_lineplot(&[], SweepAxis::P, &[SeriesKey::R], PlotColumn::Oracle).unwrap();
        assert_eq!(svg.matches("<polyline").count(), 0);
        assert!(svg.contains("<path"));
        assert!(svg.contains(">p</text>"));
    }

    #[test]
    fn mixed_scan_is_rejected() {
        let rows = two_series();
        assert!(matches!(
            render_svg_lineplot(&rows, SweepAxis::Mu, &[], PlotColumn::Oracle),
            Err(Error::BadPlotRequest(_))
        ));
        assert!(matches!(
            render_svg_lineplot(&rows, SweepAxis::Mu, &[SeriesKey::Mu], PlotColumn::Oracle),
            Err(Error::BadPlotRequest(_))
        ));
    }

    #[test]
    fn deterministic() {
        let rows = two_series();
        let a = render_svg_lineplot(&rows, SweepAxis::Mu, &[SeriesKey::R], PlotColumn::Oracle).unwrap();
        let b = render_svg_lineplot(&rows, SweepAxis::Mu, &[SeriesKey::R], PlotColumn::Oracle).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn nan_closed_column_draws_empty_lines() {
        let svg = render_svg_lineplot(&two_series(), SweepAxis::Mu, &[SeriesKey::R], PlotColumn::Closed).unwrap();
        assert_eq!(svg.matches(r#"<polyline points="""#).count(), 2);
    }
}
