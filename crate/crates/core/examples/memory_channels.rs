//! How channel memory protects a Bell pair: concurrence against mu for the
//! three correlated channels, in both application modes.
//!
//! Usage: cargo run --example memory_channels [p] [r]

use rindler_noise::sweep::oracle_concurrence;
use rindler_noise::{Application, ChannelKind, ChannelSpec, StatePreset};

fn main() -> rindler_noise::Result<()> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<f64>());
    let p = args.next().and_then(Result::ok).unwrap_or(0.7);
    let r = args.next().and_then(Result::ok).unwrap_or(std::f64::consts::FRAC_PI_8);
    let bell = StatePreset::bell();

    for app in Application::ALL {
        println!("{app} use, p = {p}, r = {r:.4}");
        println!("{:>5}  {:>8}  {:>8}  {:>8}", "mu", "ad", "dep", "bf");
        for i in 0..=10 {
            let mu = i as f64 / 10.0;
            let mut line = format!("{mu:>5.2}");
            for kind in ChannelKind::ALL {
                let c = oracle_concurrence(&bell, &ChannelSpec::new(kind, p, mu, app)?, r)?;
                line.push_str(&format!("  {:>8.5}", c.value));
            }
            println!("{line}");
        }
        println!();
    }
    Ok(())
}
