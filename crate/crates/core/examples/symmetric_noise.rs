//! Identical correlations in both quadratures: coherent inputs are optimal.

use gmcap::channel::{multimode_solve, symmetric_noise_solution, symmetric_threshold};
use gmcap::numerics::QuadratureConfig;
use gmcap::toeplitz::MarkovParams;

fn main() -> gmcap::Result<()> {
    let cfg = QuadratureConfig::default();
    for phi in [0.3, 0.7] {
        let params = MarkovParams::new(1.0, phi)?;
        let n_bar = symmetric_threshold(&params).max(7.0) + 1.0;
        let sym = symmetric_noise_solution(&params, n_bar, &cfg)?;
        let anti = multimode_solve(&params, n_bar, &cfg)?;
        println!(
            "phi = {phi}, n_bar = {n_bar:.3}: symmetric C = {:.6} (eta {}), anti-correlated C = {:.6} (eta {:.4})",
            sym.capacity_bits, sym.eta, anti.capacity_bits, anti.eta
        );
    }
    Ok(())
}
