//! Capacity at constant signal-to-noise ratio against the classical limit.

use gmcap::channel::{asymptotic_capacity, classical_limit_capacity, multimode_threshold, squeezing_fraction};
use gmcap::numerics::QuadratureConfig;
use gmcap::toeplitz::MarkovParams;

fn main() -> gmcap::Result<()> {
    let cfg = QuadratureConfig::default();
    for phi in [0.4, 0.7, 0.9] {
        let snr = multimode_threshold(&MarkovParams::new(1.0, phi)?);
        let c_cl = classical_limit_capacity(&MarkovParams::new(1.0, phi)?, snr)?;
        println!("phi = {phi}: snr = {snr:.4}, classical limit {c_cl:.6} bits");
        for noise in [1.0, 3.0, 10.0, 30.0, 100.0] {
            let params = MarkovParams::new(noise, phi)?;
            let n_bar = snr * noise;
            let c = asymptotic_capacity(&params, n_bar, &cfg)?;
            let eta = squeezing_fraction(&params, n_bar, &cfg)?;
            println!("  N = {noise:5}: C = {c:.6}  eta = {eta:.3e}  gap = {:.3e}", c_cl - c);
        }
    }
    Ok(())
}
