//! Grid-search oracle against the closed-form single-mode solution.

use gmcap::channel::{brute_force_mono_oracle, mono_solve, MonoChannelNoise, ORACLE_RESOLUTION};

fn main() -> gmcap::Result<()> {
    for (gq, gp, n_bar) in [(1.0, 1.0, 2.0), (2.0, 0.5, 2.0), (0.5, 2.0, 3.0)] {
        let noise = MonoChannelNoise::new(gq, gp)?;
        let closed = mono_solve(&noise, n_bar)?;
        let oracle = brute_force_mono_oracle(&noise, n_bar, ORACLE_RESOLUTION)?;
        println!(
            "({gq}, {gp}, {n_bar}): closed {:.8} oracle {:.8} gap {:.2e}",
            closed.capacity_bits,
            oracle.capacity_bits,
            (closed.capacity_bits - oracle.capacity_bits).abs()
        );
    }

    // below threshold the oracle still finds a boundary optimum
    let noise = MonoChannelNoise::new(2.0, 0.5)?;
    let s = brute_force_mono_oracle(&noise, 0.5, ORACLE_RESOLUTION)?;
    println!("below threshold: mod = ({:.4}, {:.4}), chi = {:.6}", s.mod_q, s.mod_p, s.capacity_bits);
    Ok(())
}
