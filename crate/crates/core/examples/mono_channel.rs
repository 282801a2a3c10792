//! Optimal input and modulation for one use of an anisotropic noise channel.

use gmcap::channel::{mono_solve, mono_threshold, MonoChannelNoise};

fn main() -> gmcap::Result<()> {
    let noise = MonoChannelNoise::new(2.0, 0.5)?;
    println!("threshold n_bar = {}", mono_threshold(&noise));
    for n_bar in [1.0, 1.25, 2.0, 5.0] {
        match mono_solve(&noise, n_bar) {
            Ok(s) => println!(
                "n_bar = {n_bar:4}: in = ({:.4}, {:.4}) mod = ({:.4}, {:.4}) mu = {:.4} C = {:.6} bits",
                s.in_q, s.in_p, s.mod_q, s.mod_p, s.mu, s.capacity_bits
            ),
            Err(e) => println!("n_bar = {n_bar:4}: {e}"),
        }
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
