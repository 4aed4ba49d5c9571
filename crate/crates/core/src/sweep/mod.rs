//! Parameter sweeps over `(mu, p, r)` for channel x state combinations.
//!
//! Each grid point is evaluated twice: through the closed-form expression
//! and through the brute-force pipeline (Unruh transform, Kraus application,
//! Wootters). Points are independent and evaluated in parallel; rows always
//! come back in grid order.

mod esd;
mod output;
mod svg;

use std::f64::consts::FRAC_PI_4;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

pub use esd::{esd_boundary, EsdOutcome, EsdQuery, ESD_THRESHOLD, PRESCAN_POINTS};
pub use output::{emit_csv, format_sig, write_csv, CSV_HEADER};
pub use svg::{emit_svg_lineplot, render_svg_lineplot, PlotColumn, SeriesKey};

use crate::channels::{apply_channel, Application, ChannelKind, ChannelSpec};
use crate::concurrence::{closed_form_concurrence, wootters_concurrence, xstate_concurrence, ConcurrenceResult};
use crate::error::{Error, Result};
use crate::qmat::DensityMatrix;
use crate::unruh::{unruh_transform, AccelerationParam};
use crate::xstate::StatePreset;

/// Default points per scanned axis of a line figure.
pub const LINE_POINTS: usize = 101;
/// Default points per axis of a surface figure.
pub const SURFACE_POINTS: usize = 61;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweepAxis {
    Mu,
    P,
    R,
}

impl SweepAxis {
    pub fn label(self) -> &'static str {
        match self {
            Self::Mu => "mu",
            Self::P => "p",
            Self::R => "r",
        }
    }

    fn bounds(self) -> (f64, f64) {
        match self {
            Self::Mu | Self::P => (0.0, 1.0),
            Self::R => (0.0, FRAC_PI_4),
        }
    }
}

impl FromStr for SweepAxis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mu" => Ok(Self::Mu),
            "p" => Ok(Self::P),
            "r" => Ok(Self::R),
            _ => Err(Error::BadSweepSpec(format!("unknown axis `{s}`"))),
        }
    }
}

/// Evenly spaced grid including both ends; `count == 1` pins `start`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Grid {
    pub fn fixed(value: f64) -> Self {
        Self {
            start: value,
            stop: value,
            count: 1,
        }
    }

    pub fn linspace(start: f64, stop: f64, count: usize) -> Self {
        Self { start, stop, count }
    }

    pub fn values(&self) -> Vec<f64> {
        match self.count {
            0 => Vec::new(),
            1 => vec![self.start],
            n => (0..n)
                .map(|i| {
                    if i == n - 1 {
                        self.stop
                    } else {
                        self.start + (self.stop - self.start) * i as f64 / (n - 1) as f64
                    }
                })
                .collect(),
        }
    }

    fn validate(&self, axis: SweepAxis) -> Result<()> {
        let (lo, hi) = axis.bounds();
        let inside = |x: f64| x.is_finite() && x >= lo && x <= hi + 1e-15;
        if self.count == 0 {
            return Err(Error::BadSweepSpec(format!("{} grid has no points", axis.label())));
        }
        if !inside(self.start) || !inside(self.stop) {
            return Err(Error::BadSweepSpec(format!(
                "{} grid [{}, {}] leaves [{lo}, {hi}]",
                axis.label(),
                self.start,
                self.stop
            )));
        }
        Ok(())
    }
}

impl FromStr for Grid {
    type Err = Error;

    /// `0.3` or `start:stop:count`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadSweepSpec(format!("cannot parse grid `{s}`"));
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            [v] => Ok(Self::fixed(parse_angle(v).ok_or_else(bad)?)),
            [a, b, n] => Ok(Self::linspace(
                parse_angle(a).ok_or_else(bad)?,
                parse_angle(b).ok_or_else(bad)?,
                n.trim().parse().map_err(|_| bad())?,
            )),
            _ => Err(bad()),
        }
    }
}

/// Accepts plain numbers plus `pi/4`, `pi/8` style fractions.
pub fn parse_angle(s: &str) -> Option<f64> {
    let s = s.trim();
    if let Some(rest) = s.strip_prefix("pi") {
        let rest = rest.trim();
        if rest.is_empty() {
            return Some(std::f64::consts::PI);
        }
        let d: f64 = rest.strip_prefix('/')?.trim().parse().ok()?;
        return Some(std::f64::consts::PI / d);
    }
    s.parse().ok()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub channels: Vec<ChannelKind>,
    pub states: Vec<StatePreset>,
    pub application: Application,
    pub mu: Grid,
    pub p: Grid,
    pub r: Grid,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.channels.is_empty() || self.states.is_empty() {
            return Err(Error::BadSweepSpec(
                "at least one channel and one state required".into(),
            ));
        }
        self.mu.validate(SweepAxis::Mu)?;
        self.p.validate(SweepAxis::P)?;
        self.r.validate(SweepAxis::R)?;
        Ok(())
    }

    pub fn point_count(&self) -> usize {
        self.channels.len() * self.states.len() * self.mu.count * self.p.count * self.r.count
    }

    pub fn grid(&self, axis: SweepAxis) -> &Grid {
        match axis {
            SweepAxis::Mu => &self.mu,
            SweepAxis::P => &self.p,
            SweepAxis::R => &self.r,
        }
    }

    /// Axes with more than one grid point.
    pub fn scanned_axes(&self) -> Vec<SweepAxis> {
        [SweepAxis::Mu, SweepAxis::P, SweepAxis::R]
            .into_iter()
            .filter(|&a| self.grid(a).count > 1)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub mu: f64,
    pub p: f64,
    pub r: f64,
    pub channel: ChannelKind,
    pub state: String,
    /// Closed-form value; NaN when the expression leaves its domain.
    pub c_closed: f64,
    pub c_oracle: f64,
    pub delta: f64,
}

impl SweepRow {
    pub fn axis_value(&self, axis: SweepAxis) -> f64 {
        match axis {
            SweepAxis::Mu => self.mu,
            SweepAxis::P => self.p,
            SweepAxis::R => self.r,
        }
    }
}

/// The brute-force state: Unruh transform followed by the channel.
pub fn noisy_state(state: &StatePreset, spec: &ChannelSpec, r: f64) -> Result<DensityMatrix> {
    let rho = unruh_transform(&state.coeffs, AccelerationParam::new(r)?)?;
    apply_channel(&rho, spec)
}

/// Concurrence of a brute-force state: Wootters on physical states, the
/// X-state formula otherwise (the `general` preset is not positive).
pub fn state_concurrence(rho: &DensityMatrix) -> Result<ConcurrenceResult> {
    if rho.is_psd() {
        wootters_concurrence(rho)
    } else {
        xstate_concurrence(rho)
    }
}

pub fn oracle_concurrence(state: &StatePreset, spec: &ChannelSpec, r: f64) -> Result<ConcurrenceResult> {
    state_concurrence(&noisy_state(state, spec, r)?)
}

pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    let (mus, ps, rs) = (spec.mu.values(), spec.p.values(), spec.r.values());
    let mut points = Vec::with_capacity(spec.point_count());
    for &channel in &spec.channels {
        for state in &spec.states {
            for &mu in &mus {
                for &p in &ps {
                    for &r in &rs {
                        points.push((channel, state, mu, p, r));
                    }
                }
            }
        }
    }
    points
        .into_par_iter()
        .map(|(channel, state, mu, p, r)| {
            let channel_spec = ChannelSpec::new(channel, p, mu, spec.application)?;
            let c_oracle = oracle_concurrence(state, &channel_spec, r)?.value;
            let c_closed = closed_form_concurrence(channel, &state.coeffs, r, p, mu, state.magnitudes_mode)
                .map_or(f64::NAN, |c| c.value);
            Ok(SweepRow {
                mu,
                p,
                r,
                channel,
                state: state.label(),
                c_closed,
                c_oracle,
                delta: (c_closed - c_oracle).abs(),
            })
        })
        .collect()
}

/// Largest `delta` per (channel, state), in first-seen order. NaN deltas
/// (closed form out of domain) count as infinite.
pub fn max_delta_by_series(rows: &[SweepRow]) -> Vec<(ChannelKind, String, f64)> {
    let mut out: Vec<(ChannelKind, String, f64)> = Vec::new();
    for row in rows {
        let d = if row.delta.is_nan() { f64::INFINITY } else { row.delta };
        match out.iter_mut().find(|(c, s, _)| *c == row.channel && *s == row.state) {
            Some(entry) => entry.2 = entry.2.max(d),
            None => out.push((row.channel, row.state.clone(), d)),
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FigureName {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
}

impl FigureName {
    pub const ALL: [FigureName; 6] = [Self::Fig1, Self::Fig2, Self::Fig3, Self::Fig4, Self::Fig5, Self::Fig6];

    pub fn label(self) -> &'static str {
        match self {
            Self::Fig1 => "fig1",
            Self::Fig2 => "fig2",
            Self::Fig3 => "fig3",
            Self::Fig4 => "fig4",
            Self::Fig5 => "fig5",
            Self::Fig6 => "fig6",
        }
    }

    /// Line figures have one scanned axis plus the r-curve family.
    pub fn is_line(self) -> bool {
        matches!(self, Self::Fig1 | Self::Fig2 | Self::Fig3)
    }
}

impl fmt::Display for FigureName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for FigureName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|f| f.label() == s)
            .ok_or_else(|| Error::UnknownFigure(s.to_string()))
    }
}

/// Sweep reproducing the data behind one figure: all three channels and all
/// three state presets. Line figures plot the r family {0, pi/8, pi/4}.
pub fn figure_preset(name: FigureName) -> SweepSpec {
    let unit_line = Grid::linspace(0.0, 1.0, LINE_POINTS);
    let unit_surface = Grid::linspace(0.0, 1.0, SURFACE_POINTS);
    let r_family = Grid::linspace(0.0, FRAC_PI_4, 3);
    let (mu, p, r) = match name {
        FigureName::Fig1 => (unit_line, Grid::fixed(0.3), r_family),
        FigureName::Fig2 => (unit_line, Grid::fixed(0.7), r_family),
        FigureName::Fig3 => (Grid::fixed(0.5), unit_line, r_family),
        FigureName::Fig4 => (
            Grid::fixed(0.3),
            unit_surface,
            Grid::linspace(0.0, FRAC_PI_4, SURFACE_POINTS),
        ),
        FigureName::Fig5 => (
            Grid::fixed(0.7),
            unit_surface,
            Grid::linspace(0.0, FRAC_PI_4, SURFACE_POINTS),
        ),
        FigureName::Fig6 => (unit_surface, unit_surface, Grid::fixed(FRAC_PI_4)),
    };
    SweepSpec {
        channels: ChannelKind::ALL.to_vec(),
        states: StatePreset::figure_presets().to_vec(),
        application: Application::SingleCorrelatedUse,
        mu,
        p,
        r,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_values() {
        assert_eq!(Grid::fixed(0.3).values(), vec![0.3]);
        let g = Grid::linspace(0.0, FRAC_PI_4, 3).values();
        assert_eq!(g[0], 0.0);
        assert_eq!(g[2], FRAC_PI_4);
        assert!((g[1] - FRAC_PI_4 / 2.0).abs() < 1e-16);
        assert_eq!(Grid::linspace(0.0, 1.0, 101).values().len(), 101);
    }

    #[test]
    fn grid_parsing() {
        assert_eq!("0.25".parse::<Grid>().unwrap(), Grid::fixed(0.25));
        assert_eq!("0:1:11".parse::<Grid>().unwrap(), Grid::linspace(0.0, 1.0, 11));
        assert_eq!("pi/4".parse::<Grid>().unwrap(), Grid::fixed(FRAC_PI_4));
        assert!("0:1".parse::<Grid>().is_err());
        assert!("a".parse::<Grid>().is_err());
    }

    #[test]
    fn spec_validation() {
        let mut spec = figure_preset(FigureName::Fig1);
        assert!(spec.validate().is_ok());
        spec.r = Grid::fixed(1.0);
        assert!(matches!(spec.validate(), Err(Error::BadSweepSpec(_))));
        let mut spec = figure_preset(FigureName::Fig1);
        spec.mu.count = 0;
        assert!(spec.validate().is_err());
        let mut spec = figure_preset(FigureName::Fig1);
        spec.channels.clear();
        assert!(run_sweep(&spec).is_err());
    }

    #[test]
    fn degenerate_grid_gives_one_row() {
        let spec = SweepSpec {
            channels: vec![ChannelKind::BitFlip],
            states: vec![StatePreset::bell()],
            application: Application::SingleCorrelatedUse,
            mu: Grid::fixed(0.2),
            p: Grid::fixed(0.4),
            r: Grid::fixed(0.1),
        };
        let rows = run_sweep(&spec).unwrap();
        assert_eq!(rows.len(), 1);
        let row = &rows[0];
        assert_eq!((row.mu, row.p, row.r), (0.2, 0.4, 0.1));
        assert_eq!(row.delta, (row.c_closed - row.c_oracle).abs());
    }

    #[test]
    fn figure_preset_constants() {
        let f1 = figure_preset(FigureName::Fig1);
        assert_eq!(f1.p, Grid::fixed(0.3));
        assert_eq!(f1.scanned_axes(), vec![SweepAxis::Mu, SweepAxis::R]);
        assert_eq!(figure_preset(FigureName::Fig2).p, Grid::fixed(0.7));
        let f3 = figure_preset(FigureName::Fig3);
        assert_eq!(f3.mu, Grid::fixed(0.5));
        assert_eq!((f3.p.start, f3.p.stop), (0.0, 1.0));
        assert_eq!(figure_preset(FigureName::Fig4).mu, Grid::fixed(0.3));
        assert_eq!(figure_preset(FigureName::Fig5).mu, Grid::fixed(0.7));
        let f6 = figure_preset(FigureName::Fig6);
        assert_eq!(f6.r, Grid::fixed(FRAC_PI_4));
        assert_eq!(f6.scanned_axes(), vec![SweepAxis::Mu, SweepAxis::P]);
        for f in FigureName::ALL {
            let spec = figure_preset(f);
            assert_eq!(spec.channels.len(), 3);
            assert_eq!(spec.states.len(), 3);
        }
        assert!(matches!("fig7".parse::<FigureName>(), Err(Error::UnknownFigure(_))));
    }

    #[test]
    fn fig1_row_count_and_order() {
        let rows = run_sweep(&figure_preset(FigureName::Fig1)).unwrap();
        assert_eq!(rows.len(), 3 * 3 * 101 * 3);
        // channel, state, mu, p, r nesting.
        assert_eq!(rows[0].channel, ChannelKind::AmplitudeDamping);
        assert_eq!(rows[0].state, "bell");
        assert_eq!((rows[0].mu, rows[0].r), (0.0, 0.0));
        assert_eq!(rows[1].r, FRAC_PI_8);
        assert_eq!(rows[3].mu, 0.01);
        assert_eq!(rows[303].state, "werner");
        assert_eq!(rows[909].channel, ChannelKind::Depolarizing);
    }

    const FRAC_PI_8: f64 = std::f64::consts::FRAC_PI_8;
}
