//! Water-filling solution and capacity for Gauss-Markov noise.

use std::f64::consts::PI;

use gmcap::channel::{first_mode_variance, multimode_solve, FirstModeForm};
use gmcap::numerics::QuadratureConfig;
use gmcap::toeplitz::MarkovParams;

fn main() -> gmcap::Result<()> {
    let cfg = QuadratureConfig::default();
    let params = MarkovParams::new(1.0, 0.7)?;
    let s = multimode_solve(&params, 7.5, &cfg)?;
    println!("threshold {} mu {} eta {:.6} C {:.9} bits", s.threshold, s.mu_global, s.eta, s.capacity_bits);

    println!("{:>8} {:>10} {:>10} {:>10} {:>10}", "x", "in_q", "env_q", "mod_q", "mod_p");
    for k in 0..=8 {
        let x = PI * k as f64 / 8.0;
        let (i, e, m) = (s.input(x), s.environment(x), s.modulation(x));
        println!("{x:8.4} {:10.5} {:10.5} {:10.5} {:10.5}", i.q, e.q, m.q, m.p);
    }

    for form in [FirstModeForm::Printed, FirstModeForm::Alternate] {
        println!("first-mode variance ({form:?}): {:.6}", first_mode_variance(0.7, form, &cfg)?);
    }
    Ok(())
}
