//! Locating entanglement sudden death along one parameter.

use super::{oracle_concurrence, SweepAxis};
use crate::channels::{Application, ChannelKind, ChannelSpec};
use crate::error::{Error, Result};
use crate::xstate::StatePreset;

/// Concurrence at or below this counts as dead.
pub const ESD_THRESHOLD: f64 = 1e-12;
/// Uniform pre-scan used to detect non-monotone zero sets.
pub const PRESCAN_POINTS: usize = 200;

#[derive(Debug, Clone, PartialEq)]
pub struct EsdQuery {
    pub channel: ChannelKind,
    pub state: StatePreset,
    pub application: Application,
    pub scan: SweepAxis,
    pub from: f64,
    pub to: f64,
    /// Fixed values; the one matching `scan` is ignored.
    pub mu: f64,
    pub p: f64,
    pub r: f64,
}

impl EsdQuery {
    /// Oracle concurrence with the scanned parameter set to `x`.
    pub fn concurrence_at(&self, x: f64) -> Result<f64> {
        let (mut mu, mut p, mut r) = (self.mu, self.p, self.r);
        match self.scan {
            SweepAxis::Mu => mu = x,
            SweepAxis::P => p = x,
            SweepAxis::R => r = x,
        }
        let spec = ChannelSpec::new(self.channel, p, mu, self.application)?;
        Ok(oracle_concurrence(&self.state, &spec, r)?.value)
    }

    fn validate(&self) -> Result<()> {
        let (lo, hi) = self.scan.bounds();
        let inside = |x: f64| x.is_finite() && x >= lo && x <= hi + 1e-15;
        if !(inside(self.from) && inside(self.to) && self.from < self.to) {
            return Err(Error::BadSweepSpec(format!(
                "{} scan [{}, {}] must be increasing within [{lo}, {hi}]",
                self.scan.label(),
                self.from,
                self.to
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum EsdOutcome {
    /// First scan value with concurrence at or below [`ESD_THRESHOLD`].
    Boundary(f64),
    NoBoundary,
    /// Already dead at the start of the scan.
    DeadAtStart,
    /// Pre-scan intervals containing a sign change, in scan order.
    Brackets(Vec<(f64, f64)>),
}

pub fn esd_boundary(q: &EsdQuery, tol: f64) -> Result<EsdOutcome> {
    q.validate()?;
    let tol = if tol > 0.0 { tol } else { 1e-6 };
    let xs: Vec<f64> = (0..PRESCAN_POINTS)
        .map(|i| {
            if i == PRESCAN_POINTS - 1 {
                q.to
            } else {
                q.from + (q.to - q.from) * i as f64 / (PRESCAN_POINTS - 1) as f64
            }
        })
        .collect();
    let alive = xs
        .iter()
        .map(|&x| Ok(q.concurrence_at(x)? > ESD_THRESHOLD))
        .collect::<Result<Vec<bool>>>()?;

    let flips: Vec<usize> = (1..xs.len()).filter(|&i| alive[i] != alive[i - 1]).collect();
    match flips.as_slice() {
        [] if alive[0] => Ok(EsdOutcome::NoBoundary),
        [] => Ok(EsdOutcome::DeadAtStart),
        [i] if alive[0] => {
            let (mut lo, mut hi) = (xs[i - 1], xs[*i]);
            while hi - lo > tol {
                let mid = 0.5 * (lo + hi);
                if q.concurrence_at(mid)? > ESD_THRESHOLD {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            Ok(EsdOutcome::Boundary(hi))
        }
        _ => Ok(EsdOutcome::Brackets(
            flips.iter().map(|&i| (xs[i - 1], xs[i])).collect(),
        )),
    }
}
