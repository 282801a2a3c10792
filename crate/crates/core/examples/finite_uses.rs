//! Finite-use rates approaching the asymptotic capacity.

use gmcap::channel::{asymptotic_capacity, finite_n_rate, EigenPairing};
use gmcap::numerics::QuadratureConfig;
use gmcap::toeplitz::MarkovParams;

fn main() -> gmcap::Result<()> {
    let cfg = QuadratureConfig::default();
    for phi in [0.0, 0.4, 0.55, 0.7] {
        let params = MarkovParams::new(1.0, phi)?;
        let c = asymptotic_capacity(&params, 7.5, &cfg)?;
        print!("phi = {phi:4}: C = {c:.6}");
        for n in [10, 50, 100, 200, 400] {
            let r = finite_n_rate(&params, 7.5, n, EigenPairing::Reversed)?;
            print!("  R({n}) - C = {:+.2e}", r - c);
        }
        println!();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    #[test]
    fn runs() {
        super::main().unwrap();
    }
}
