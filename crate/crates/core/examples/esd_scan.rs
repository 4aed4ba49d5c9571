//! Where does entanglement die? For each channel, scan p at infinite
//! acceleration and report the sudden-death boundary as memory grows.

use std::f64::consts::FRAC_PI_4;

use rindler_noise::sweep::{esd_boundary, EsdOutcome, EsdQuery};
use rindler_noise::{Application, ChannelKind, StatePreset, SweepAxis};

fn main() -> rindler_noise::Result<()> {
    println!("Bell pair, r = pi/4, scanning p in [0, 1]");
    println!("{:>5}  {:>14}  {:>14}  {:>14}", "mu", "ad", "dep", "bf");
    for i in 0..=10 {
        let mu = i as f64 / 10.0;
        let mut line = format!("{mu:>5.2}");
        for channel in ChannelKind::ALL {
            let q = EsdQuery {
                channel,
                state: StatePreset::bell(),
                application: Application::SingleCorrelatedUse,
                scan: SweepAxis::P,
                from: 0.0,
                to: 1.0,
                mu,
                p: 0.0,
                r: FRAC_PI_4,
            };
            let cell = match esd_boundary(&q, 1e-8)? {
                EsdOutcome::Boundary(b) => format!("p = {b:.6}"),
                EsdOutcome::NoBoundary => "none".into(),
                EsdOutcome::DeadAtStart => "dead".into(),
                EsdOutcome::Brackets(bs) => format!("{} crossings", bs.len()),
            };
            line.push_str(&format!("  {cell:>14}"));
        }
        println!("{line}");
    }
    Ok(())
}
