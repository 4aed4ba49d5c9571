//! Puts the closed-form concurrences next to the brute-force
//! pipeline. The two disagree already without noise, which is why the sweep
//! CSV carries both columns and a `delta`.

use rindler_noise::concurrence::closed_form_concurrence;
use rindler_noise::sweep::oracle_concurrence;
use rindler_noise::{Application, ChannelKind, ChannelSpec, StatePreset};

fn main() -> rindler_noise::Result<()> {
    let points = [(0.0, 0.0, 0.0), (0.3, 0.0, 0.0), (0.3, 0.5, 0.4), (0.7, 0.9, 0.785)];
    for state in StatePreset::figure_presets() {
        println!("state {} ({})", state.label(), state.coeffs);
        println!(
            "{:>4} {:>5} {:>5} {:>6}  {:>10}  {:>10}  {:>10}",
            "ch", "p", "mu", "r", "closed", "oracle", "delta"
        );
        for kind in ChannelKind::ALL {
            for &(p, mu, r) in &points {
                let spec = ChannelSpec::new(kind, p, mu, Application::SingleCorrelatedUse)?;
                let oracle = oracle_concurrence(&state, &spec, r)?.value;
                let closed = match closed_form_concurrence(kind, &state.coeffs, r, p, mu, state.magnitudes_mode) {
                    Ok(c) => format!("{:>10.6}", c.value),
                    Err(e) => format!("{:>10}", e.to_string().split(':').next().unwrap_or("error")),
                };
                let delta = closed.trim().parse::<f64>().map_or(f64::NAN, |c| (c - oracle).abs());
                println!("{kind:>4} {p:>5} {mu:>5} {r:>6}  {closed}  {oracle:>10.6}  {delta:>10.3e}");
            }
        }
        println!();
    }
    Ok(())
}
