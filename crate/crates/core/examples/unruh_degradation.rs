//! Bell-pair entanglement as Rob's acceleration grows, with no channel noise.
//!
//! Usage: cargo run --example unruh_degradation [omega]

use rindler_noise::concurrence::{wootters_concurrence, xstate_concurrence};
use rindler_noise::{acceleration_to_r, unruh_oracle, unruh_transform, PhysicalAcceleration, StatePreset};

fn main() -> rindler_noise::Result<()> {
    let omega: f64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1.0);
    let bell = StatePreset::bell();

    println!(
        "{:>10}  {:>10}  {:>10}  {:>10}  {:>10}",
        "a [m/s^2]", "r", "C wootters", "C x-form", "|oracle|"
    );
    for k in 6..=20 {
        let a = 10f64.powi(k);
        let r = acceleration_to_r(&PhysicalAcceleration::new(a, omega))?;
        let rho = unruh_transform(&bell.coeffs, r)?;
        let diff = rho.matrix().max_abs_diff(unruh_oracle(&bell.coeffs, r)?.matrix());
        println!(
            "{a:>10.0e}  {:>10.6}  {:>10.6}  {:>10.6}  {diff:>10.1e}",
            r.r(),
            wootters_concurrence(&rho)?.value,
            xstate_concurrence(&rho)?.value,
        );
    }
    // Infinite acceleration leaves cos(pi/4) = 1/sqrt(2).
    Ok(())
}
