//! Writes the data behind all six figures (CSV) plus SVG line plots for the
//! three line figures into a directory.
//!
//! Usage: cargo run --release --example figure_data [out_dir]

use std::path::PathBuf;

use rindler_noise::sweep::{emit_csv, emit_svg_lineplot, max_delta_by_series, PlotColumn, SeriesKey};
use rindler_noise::{figure_preset, run_sweep, FigureName, SweepAxis};

fn main() -> rindler_noise::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "figures".into()));
    std::fs::create_dir_all(&dir).map_err(|source| rindler_noise::Error::Io {
        path: dir.clone(),
        source,
    })?;

    for fig in FigureName::ALL {
        let spec = figure_preset(fig);
        let rows = run_sweep(&spec)?;
        emit_csv(&rows, &dir.join(format!("{fig}.csv")))?;
        if fig.is_line() {
            let x = if spec.mu.count > 1 { SweepAxis::Mu } else { SweepAxis::P };
            for state in ["bell", "werner", "general"] {
                let panel: Vec<_> = rows.iter().filter(|r| r.state == state).cloned().collect();
                let path = dir.join(format!("{fig}-{state}.svg"));
                emit_svg_lineplot(
                    &panel,
                    x,
                    &[SeriesKey::Channel, SeriesKey::R],
                    PlotColumn::Oracle,
                    &path,
                )?;
            }
        }
        let worst = max_delta_by_series(&rows)
            .into_iter()
            .map(|(_, _, d)| d)
            .fold(0.0, f64::max);
        println!("{fig}: {} rows, worst closed-form delta {worst:.3e}", rows.len());
    }
    println!("written to {}", dir.display());
    Ok(())
}
