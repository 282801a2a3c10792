//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use gmcap::channel::{
    asymptotic_capacity, brute_force_mono_oracle, classical_limit_capacity,
    environment_entropy_term, finite_n_rate, first_mode_variance, log_environment_mean,
    mono_capacity, mono_solve, mono_threshold, multimode_solve, multimode_threshold,
    squeezing_fraction, symmetric_noise_solution, symmetric_threshold, EigenPairing,
    FirstModeForm, MonoChannelNoise, ORACLE_RESOLUTION,
};
use gmcap::gaussian::g_function;
use gmcap::matrix::Matrix;
use gmcap::numerics::{symmetric_eigenvalues, QuadratureConfig};
use gmcap::toeplitz::{
    circulant_embedding, commutator_norm, fourier_diagonalizer, markov_matrix,
    markov_szego_deviation, szego_deviation, tridiagonal_inverse, MarkovParams, Sign,
};
use gmcap::Error;

type Outcome = Result<String, String>;
type Criterion = (&'static str, Box<dyn Fn() -> Outcome>);

fn params(noise: f64, phi: f64) -> MarkovParams {
    MarkovParams::new(noise, phi).expect("valid parameters")
}

fn g(x: f64) -> f64 {
    g_function(x).expect("non-negative argument")
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn mono_oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut worst_cap: f64 = 0.0;
    let mut worst_var: f64 = 0.0;
    for gq in [0.5, 1.0, 2.0] {
        for gp in [0.5, 1.0, 2.0] {
            let noise = MonoChannelNoise::new(gq, gp).map_err(|e| e.to_string())?;
            // three budgets above every threshold of the set (largest is 1.25)
            for n_bar in [1.5, 2.0, 3.0] {
                if n_bar <= mono_threshold(&noise) {
                    return Err(format!("n_bar {n_bar} not above threshold for ({gq}, {gp})"));
                }
                let closed = mono_solve(&noise, n_bar).map_err(|e| e.to_string())?;
                let cap = mono_capacity(&noise, n_bar).map_err(|e| e.to_string())?;
                let oracle = brute_force_mono_oracle(&noise, n_bar, ORACLE_RESOLUTION)
                    .map_err(|e| e.to_string())?;
                worst_cap = worst_cap.max((cap - oracle.capacity_bits).abs());
                for (a, b) in [
                    (closed.in_q, oracle.in_q),
                    (closed.in_p, oracle.in_p),
                    (closed.mod_q, oracle.mod_q),
                    (closed.mod_p, oracle.mod_p),
                ] {
                    worst_var = worst_var.max((a - b).abs());
                }
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    check(
        worst_cap <= 1e-4 && worst_var <= 5e-3 && secs <= 120.0,
        format!("max |dC| = {worst_cap:.3e}, max |d var| = {worst_var:.3e}, {secs:.1}s"),
    )
}

fn memoryless_reduction(cfg: &QuadratureConfig) -> Outcome {
    let mut worst: f64 = 0.0;
    for (noise, n_bar) in [(1.0, 2.0), (1.0, 7.5), (2.0, 5.0)] {
        let c = asymptotic_capacity(&params(noise, 0.0), n_bar, cfg).map_err(|e| e.to_string())?;
        worst = worst.max((c - (g(n_bar + noise) - g(noise))).abs());
    }
    check(worst <= 1e-9, format!("max deviation {worst:.3e} bits"))
}

fn threshold_value(cfg: &QuadratureConfig) -> Outcome {
    let p = params(1.0, 0.7);
    let thr = multimode_threshold(&p);
    let at = multimode_solve(&p, 7.0, cfg).map_err(|e| e.to_string())?;
    let min_mod = at.min_modulation(10_001);
    let below = matches!(multimode_solve(&p, 6.9, cfg), Err(Error::BelowThreshold { .. }));
    check(
        thr == 7.0 && min_mod.abs() <= 1e-8 && below,
        format!("threshold = {thr:?}, min modulation at 7.0 = {min_mod:.3e}, 6.9 rejected = {below}"),
    )
}

fn fig4_convergence(cfg: &QuadratureConfig) -> Outcome {
    let start = Instant::now();
    let uses = [10, 50, 100, 200, 400];
    let mut lines = Vec::new();
    let mut ok = true;
    for phi in [0.0, 0.4, 0.55, 0.7] {
        let p = params(1.0, phi);
        let c = asymptotic_capacity(&p, 7.5, cfg).map_err(|e| e.to_string())?;
        let dev: Vec<f64> = uses
            .iter()
            .map(|&n| finite_n_rate(&p, 7.5, n, EigenPairing::Reversed).map(|r| (r - c).abs()))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        let last = dev[dev.len() - 1];
        let decreasing = phi == 0.0 || dev.windows(2).all(|w| w[1] < w[0]);
        ok &= last <= 2e-2 && decreasing;
        lines.push(format!("phi={phi}: |R400-C|={last:.2e}"));
    }
    let secs = start.elapsed().as_secs_f64();
    ok &= secs <= 300.0;
    check(ok, format!("{}, {secs:.1}s", lines.join("; ")))
}

fn fig3_trends(cfg: &QuadratureConfig) -> Outcome {
    let noises = [1.0, 3.0, 10.0, 30.0, 100.0];
    let mut etas = Vec::new();
    let mut ok = true;
    for phi in [0.4, 0.7, 0.9] {
        let snr = multimode_threshold(&params(1.0, phi));
        let mut caps = Vec::new();
        let mut eta = Vec::new();
        for &noise in &noises {
            let p = params(noise, phi);
            let n_bar = snr * noise;
            let c = asymptotic_capacity(&p, n_bar, cfg).map_err(|e| e.to_string())?;
            let c_cl = classical_limit_capacity(&p, snr).map_err(|e| e.to_string())?;
            ok &= c < c_cl;
            caps.push(c);
            eta.push(squeezing_fraction(&p, n_bar, cfg).map_err(|e| e.to_string())?);
        }
        ok &= caps.windows(2).all(|w| w[1] > w[0]);
        ok &= eta.windows(2).all(|w| w[1] < w[0]);
        etas.push(eta);
    }
    let ordering = etas[1].iter().zip(&etas[2]).all(|(a, b)| a > b);
    check(
        ok && ordering,
        format!("monotone and below classical = {ok}, eta(0.7) > eta(0.9) = {ordering}"),
    )
}

fn classical_identity(cfg: &QuadratureConfig) -> Outcome {
    let mut worst: f64 = 0.0;
    for phi in [0.3, 0.6, 0.9] {
        for noise in [1.0, 5.0] {
            let lhs = log_environment_mean(&params(noise, phi), cfg).map_err(|e| e.to_string())?;
            worst = worst.max((lhs - (noise * (1.0 - phi * phi)).log2()).abs());
        }
    }
    check(worst <= 1e-8, format!("max deviation {worst:.3e}"))
}

fn full_correlation(cfg: &QuadratureConfig) -> Outcome {
    let terms: Vec<f64> = [0.9, 0.99, 0.999]
        .iter()
        .map(|&phi| environment_entropy_term(&params(1.0, phi), cfg))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let decreasing = terms.windows(2).all(|w| w[1] < w[0]);
    check(
        terms[2] <= 0.05 && decreasing,
        format!("integral terms {:.4} > {:.4} > {:.5}", terms[0], terms[1], terms[2]),
    )
}

fn off_diagonal_after_rotation(n: usize) -> Result<f64, Error> {
    let c = circulant_embedding(params(1.0, 0.5), Sign::Plus, n)?;
    let q = fourier_diagonalizer(n);
    Ok(c.congruence(&q)?.as_matrix().off_diagonal_norm())
}

fn spectral_machinery() -> Outcome {
    let mut worst_rot: f64 = 0.0;
    for n in [8, 9, 64, 65, 256, 257] {
        worst_rot = worst_rot.max(off_diagonal_after_rotation(n).map_err(|e| e.to_string())?);
    }
    let mut worst_circ: f64 = 0.0;
    for n in [4, 8, 65] {
        let a = circulant_embedding(params(1.0, 0.5), Sign::Plus, n).map_err(|e| e.to_string())?;
        let b = circulant_embedding(params(1.0, 0.5), Sign::Minus, n).map_err(|e| e.to_string())?;
        worst_circ = worst_circ.max(commutator_norm(&a, &b).map_err(|e| e.to_string())?);
    }
    let mp = markov_matrix(params(1.0, 0.5), Sign::Plus, 4).map_err(|e| e.to_string())?;
    let mm = markov_matrix(params(1.0, 0.5), Sign::Minus, 4).map_err(|e| e.to_string())?;
    let toeplitz_comm = commutator_norm(&mp, &mm).map_err(|e| e.to_string())?;
    let d64 = markov_szego_deviation(params(1.0, 0.5), 64).map_err(|e| e.to_string())?;
    let d256 = markov_szego_deviation(params(1.0, 0.5), 256).map_err(|e| e.to_string())?;
    check(
        worst_rot <= 1e-10 && worst_circ <= 1e-12 && toeplitz_comm > 1e-3 && d256 <= 0.5 * d64,
        format!(
            "QtCQ off-diag {worst_rot:.2e}, circulant [.,.] {worst_circ:.2e}, Toeplitz [.,.] {toeplitz_comm:.3}, Szego {d64:.2e} -> {d256:.2e}"
        ),
    )
}

fn inverse_structure() -> Outcome {
    let p = params(1.0, 0.6);
    let n = 10;
    let v = tridiagonal_inverse(p, n).map_err(|e| e.to_string())?;
    let m = markov_matrix(p, Sign::Plus, n).map_err(|e| e.to_string())?;
    let vm = v.as_matrix().matmul(m.as_matrix()).map_err(|e| e.to_string())?;
    let id = Matrix::identity(n);
    let mut worst: f64 = 0.0;
    for i in 1..n - 1 {
        for j in 0..n {
            worst = worst.max((vm[(i, j)] - id[(i, j)]).abs());
        }
    }
    let dev = |n: usize| -> Result<f64, Error> {
        let eig = symmetric_eigenvalues(&tridiagonal_inverse(p, n)?)?;
        Ok(szego_deviation(&eig, |x| p.inverse_symbol(x)))
    };
    let d64 = dev(64).map_err(|e| e.to_string())?;
    let d256 = dev(256).map_err(|e| e.to_string())?;
    check(
        worst <= 1e-12 && d256 < d64,
        format!("interior rows {worst:.2e}, symbol deviation {d64:.2e} -> {d256:.2e}"),
    )
}

fn energy_and_flatness(cfg: &QuadratureConfig) -> Outcome {
    let s = multimode_solve(&params(1.0, 0.5), 4.0, cfg).map_err(|e| e.to_string())?;
    let mut worst_flat: f64 = 0.0;
    let points = 2001;
    for k in 0..points {
        let x = PI * k as f64 / (points - 1) as f64;
        let t = s.total(x);
        worst_flat = worst_flat.max((t.q - 5.5).abs()).max((t.p - 5.5).abs());
    }
    let energy = s.mean_photon_number(cfg).map_err(|e| e.to_string())?;
    let gap = (energy - 4.0).abs();
    check(
        s.mu_global == 5.5 && worst_flat <= 1e-10 && gap <= 1e-8,
        format!("mu = {}, flatness {worst_flat:.2e}, energy gap {gap:.2e}", s.mu_global),
    )
}

fn symmetric_noise(cfg: &QuadratureConfig) -> Outcome {
    let mut ok = true;
    for phi in [0.3, 0.7] {
        let p = params(1.0, phi);
        let s = symmetric_noise_solution(&p, symmetric_threshold(&p) + 1.0, cfg).map_err(|e| e.to_string())?;
        ok &= s.eta == 0.0;
        for k in 0..=1000 {
            let i = s.input(PI * k as f64 / 1000.0);
            ok &= i.q == 0.5 && i.p == 0.5;
        }
    }
    check(ok, "input identically 1/2 and eta = 0 for phi in {0.3, 0.7}".to_string())
}

fn first_mode(cfg: &QuadratureConfig) -> Outcome {
    let v0 = first_mode_variance(0.0, FirstModeForm::Printed, cfg).map_err(|e| e.to_string())?;
    let vals: Vec<f64> = [0.3, 0.6, 0.9]
        .iter()
        .map(|&phi| first_mode_variance(phi, FirstModeForm::Printed, cfg))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let ok = (v0 - 0.5).abs() <= 1e-10 && vals[0] > 0.5 && vals.windows(2).all(|w| w[1] > w[0]);
    check(
        ok,
        format!("v(0) = {v0:.12}, v(0.3, 0.6, 0.9) = {:.4}, {:.4}, {:.4}", vals[0], vals[1], vals[2]),
    )
}

fn main() -> ExitCode {
    let cfg = QuadratureConfig::default();
    let criteria: Vec<Criterion> = vec![
        ("mono-modal oracle equivalence", Box::new(mono_oracle_equivalence)),
        ("memoryless reduction", Box::new(move || memoryless_reduction(&cfg))),
        ("threshold value", Box::new(move || threshold_value(&cfg))),
        ("finite-use convergence", Box::new(move || fig4_convergence(&cfg))),
        ("constant-SNR trends", Box::new(move || fig3_trends(&cfg))),
        ("classical-limit identity", Box::new(move || classical_identity(&cfg))),
        ("full-correlation limit", Box::new(move || full_correlation(&cfg))),
        ("spectral machinery", Box::new(spectral_machinery)),
        ("tridiagonal inverse", Box::new(inverse_structure)),
        ("energy closure and flatness", Box::new(move || energy_and_flatness(&cfg))),
        ("symmetric noise", Box::new(move || symmetric_noise(&cfg))),
        ("first-mode variance", Box::new(move || first_mode(&cfg))),
    ];
    let mut failures = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS [{:>2}] {name}: {detail}", k + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL [{:>2}] {name}: {detail}", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
