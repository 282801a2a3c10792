use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use gmcap::channel::EigenPairing;
use gmcap::report::{
    self, exit_code, ConfigFile, ResultRow, SpectrumKind, Status, EXIT_BELOW_THRESHOLD,
};
use gmcap::toeplitz::MarkovParams;
use gmcap::{Error, Result};

/// Capacities of Gaussian channels with Gauss-Markov noise.
#[derive(Parser)]
#[command(name = "gmcap", version)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// key = value file supplying defaults for any flag
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write CSV here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Absolute quadrature tolerance (overrides GMCAP_QUAD_TOL)
    #[arg(long, global = true)]
    quad_tol: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Single-mode channel with noise variances (gq, gp)
    Mono {
        #[arg(long)]
        gq: Option<f64>,
        #[arg(long)]
        gp: Option<f64>,
        #[arg(long)]
        nbar: Option<f64>,
    },
    /// Gauss-Markov channel in the limit of many uses
    Capacity {
        #[arg(long)]
        phi: Option<f64>,
        #[arg(long = "N")]
        noise: Option<f64>,
        #[arg(long)]
        nbar: Option<f64>,
        /// Report the threshold instead of failing below it
        #[arg(long)]
        allow_below: bool,
        /// Also report both forms of the first-mode variance
        #[arg(long)]
        alt_form: bool,
    },
    /// Constant-SNR sweep against the classical limit
    Fig3 {
        #[arg(long, value_delimiter = ',')]
        phis: Option<Vec<f64>>,
        #[arg(long = "Ns", value_delimiter = ',')]
        noises: Option<Vec<f64>>,
    },
    /// Finite-use rates converging to the capacity
    Fig4 {
        #[arg(long, value_delimiter = ',')]
        phis: Option<Vec<f64>>,
        #[arg(long = "N")]
        noise: Option<f64>,
        #[arg(long)]
        nbar: Option<f64>,
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long)]
        n_step: Option<usize>,
        /// Pair q and p eigenvalues in the same order
        #[arg(long)]
        same_order: bool,
    },
    /// Finite or asymptotic noise spectrum
    Spectrum {
        #[arg(long, value_enum, default_value_t = Kind::Toeplitz)]
        kind: Kind,
        #[arg(long)]
        phi: Option<f64>,
        #[arg(long = "N")]
        noise: Option<f64>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        samples: Option<usize>,
        /// Write the matrix as whitespace-separated rows to this file
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Grid-search oracle against the single-mode closed form
    Oracle {
        #[arg(long)]
        gq: Option<f64>,
        #[arg(long)]
        gp: Option<f64>,
        #[arg(long)]
        nbar: Option<f64>,
        #[arg(long, default_value_t = gmcap::channel::ORACLE_RESOLUTION)]
        resolution: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Toeplitz,
    Circulant,
    Asymptotic,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}

fn required(flag: Option<f64>, config: &ConfigFile, key: &str) -> Result<f64> {
    match flag {
        Some(v) => Ok(v),
        None => config
            .get_f64(key)?
            .ok_or_else(|| Error::Config(format!("missing --{key} (flag or config file)"))),
    }
}

fn list(flag: Option<Vec<f64>>, config: &ConfigFile, key: &str, default: &[f64]) -> Result<Vec<f64>> {
    match flag {
        Some(v) => Ok(v),
        None => Ok(config.get_list(key)?.unwrap_or_else(|| default.to_vec())),
    }
}

fn count(flag: Option<usize>, config: &ConfigFile, key: &str, default: usize) -> Result<usize> {
    match flag {
        Some(v) => Ok(v),
        None => match config.get_f64(key)? {
            Some(v) if v >= 0.0 && v.fract() == 0.0 => Ok(v as usize),
            Some(v) => Err(Error::Config(format!("{key}: expected a non-negative integer, got {v}"))),
            None => Ok(default),
        },
    }
}

fn below_threshold(row: &ResultRow) -> bool {
    if row.status == Status::BelowThreshold {
        eprintln!("below threshold: n_bar_thr = {}", report::format_number(row.threshold));
        true
    } else {
        false
    }
}

fn run(cli: Cli) -> Result<i32> {
    let config = match &cli.common.config {
        Some(p) => ConfigFile::load(p)?,
        None => ConfigFile::default(),
    };
    let quad = report::quadrature_config(cli.common.quad_tol, &config)?;
    let out = cli.common.out.as_deref();

    match cli.command {
        Command::Mono { gq, gp, nbar } => {
            let (gq, gp, nbar) = (
                required(gq, &config, "gq")?,
                required(gp, &config, "gp")?,
                required(nbar, &config, "nbar")?,
            );
            let row = report::mono_report(gq, gp, nbar)?;
            let comments = vec![format!("mono gq={gq} gp={gp} nbar={nbar}")];
            ResultRow::table(std::slice::from_ref(&row), comments).emit(out)?;
            Ok(if below_threshold(&row) { EXIT_BELOW_THRESHOLD } else { 0 })
        }
        Command::Capacity { phi, noise, nbar, allow_below, alt_form } => {
            let phi = required(phi, &config, "phi")?;
            let noise = report::resolve(noise, &config, "N", 1.0)?;
            let nbar = required(nbar, &config, "nbar")?;
            let params = MarkovParams::new(noise, phi)?;
            let row = report::capacity_report(&params, nbar, alt_form, &quad)?;
            let comments = vec![
                format!("capacity phi={phi} N={noise} nbar={nbar}"),
                format!("quad_tol={:e}", quad.abs_tol),
            ];
            ResultRow::table(std::slice::from_ref(&row), comments).emit(out)?;
            Ok(if below_threshold(&row) && !allow_below { EXIT_BELOW_THRESHOLD } else { 0 })
        }
        Command::Fig3 { phis, noises } => {
            let phis = list(phis, &config, "phis", &[0.4, 0.7, 0.9])?;
            let noises = list(noises, &config, "Ns", &[1.0, 3.0, 10.0, 30.0, 100.0])?;
            let rows = report::fig3_rows(&phis, &noises, &quad)?;
            let comments = vec![
                "fig3: n_bar = N * n_bar_thr(phi, 1)".to_string(),
                format!("phis={phis:?} Ns={noises:?} quad_tol={:e}", quad.abs_tol),
            ];
            report::fig3_table(&rows, comments).emit(out)?;
            Ok(0)
        }
        Command::Fig4 { phis, noise, nbar, n_max, n_step, same_order } => {
            let phis = list(phis, &config, "phis", &[0.0, 0.4, 0.55, 0.7])?;
            let noise = report::resolve(noise, &config, "N", 1.0)?;
            let nbar = report::resolve(nbar, &config, "nbar", 7.5)?;
            let n_max = count(n_max, &config, "n_max", 400)?;
            let n_step = count(n_step, &config, "n_step", 2)?;
            if n_max < 1 || n_step < 1 {
                return Err(Error::Config("n_max and n_step must be at least 1".into()));
            }
            let uses: Vec<usize> = (n_step..=n_max).step_by(n_step).collect();
            let pairing = if same_order { EigenPairing::SameOrder } else { EigenPairing::Reversed };
            let rows = report::fig4_rows(&phis, noise, nbar, &uses, pairing, &quad)?;
            let comments = vec![
                format!("fig4 phis={phis:?} N={noise} nbar={nbar} n_max={n_max} n_step={n_step}"),
                format!("pairing={pairing:?} quad_tol={:e}", quad.abs_tol),
            ];
            report::fig4_table(&rows, comments).emit(out)?;
            Ok(0)
        }
        Command::Spectrum { kind, phi, noise, n, samples, dump } => {
            let phi = report::resolve(phi, &config, "phi", 0.0)?;
            let noise = report::resolve(noise, &config, "N", 1.0)?;
            let n = count(n, &config, "n", 16)?;
            let samples = count(samples, &config, "samples", 65)?;
            let params = MarkovParams::new(noise, phi)?;
            let kind = match kind {
                Kind::Toeplitz => SpectrumKind::Toeplitz,
                Kind::Circulant => SpectrumKind::Circulant,
                Kind::Asymptotic => SpectrumKind::Asymptotic,
            };
            if let Some(path) = dump {
                let m = report::spectrum_matrix(kind, &params, n)?;
                std::fs::write(&path, format!("{m}\n"))
                    .map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display())))?;
            }
            let rows = report::spectrum_rows(kind, &params, n, samples)?;
            let comments = vec![format!("spectrum kind={kind:?} phi={phi} N={noise} n={n} samples={samples}")];
            report::spectrum_table(&rows, comments).emit(out)?;
            Ok(0)
        }
        Command::Oracle { gq, gp, nbar, resolution } => {
            let points = match (gq, gp, nbar) {
                (Some(a), Some(b), Some(c)) => vec![(a, b, c)],
                (None, None, None) => report::oracle_grid(),
                _ => return Err(Error::Config("give all of --gq --gp --nbar or none".into())),
            };
            let rows = report::oracle_sweep(&points, resolution)?;
            let comments = vec![format!("oracle resolution={resolution} points={}", points.len())];
            ResultRow::table(&rows, comments).emit(out)?;
            Ok(0)
        }
    }
}
