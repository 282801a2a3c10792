//! Sweep drivers, result rows and CSV output.
//!
//! Everything the `gmcap` binary prints is produced here, so the binary only
//! parses flags and routes output. Rows are computed in parallel and written
//! in input order.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use rayon::prelude::*;

use crate::channel::{
    asymptotic_capacity, brute_force_mono_oracle, classical_limit_capacity, finite_n_rate,
    first_mode_variance, mono_solve, mono_threshold, multimode_solve, multimode_threshold,
    squeezing_fraction, EigenPairing, FirstModeForm, MonoChannelNoise, PHI_MAX,
};
use crate::error::{Error, Result};
use crate::numerics::{symmetric_eigenvalues, QuadratureConfig};
use crate::toeplitz::{circulant_embedding, markov_matrix, midpoint_grid, MarkovParams, Sign};

/// Environment variable overriding the quadrature tolerance.
pub const QUAD_TOL_ENV: &str = "GMCAP_QUAD_TOL";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BELOW_THRESHOLD: i32 = 3;
pub const EXIT_NUMERICAL: i32 = 4;

/// Process exit code for a library error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::BelowThreshold { .. } => EXIT_BELOW_THRESHOLD,
        Error::Domain { .. } | Error::Config(_) | Error::DimensionMismatch { .. } => EXIT_USAGE,
        _ => EXIT_NUMERICAL,
    }
}

/// Twelve significant digits, scientific notation, `.` as decimal point.
pub fn format_number(x: f64) -> String {
    format!("{x:.11e}")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    BelowThreshold,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::BelowThreshold => "below_threshold",
        }
    }
}

/// One computed point: echoed inputs, headline results and extra outputs.
///
/// Below threshold every result field except `threshold` is `None`.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub inputs: Vec<(&'static str, f64)>,
    pub status: Status,
    pub threshold: f64,
    pub capacity_bits: Option<f64>,
    pub eta: Option<f64>,
    pub mu_global: Option<f64>,
    pub extras: Vec<(&'static str, Option<f64>)>,
}

impl ResultRow {
    pub fn is_ok(&self) -> bool {
        self.status == Status::Ok
    }

    /// Table with one line per row; columns are taken from the first row.
    pub fn table(rows: &[ResultRow], comments: Vec<String>) -> Table {
        let mut columns: Vec<String> = Vec::new();
        if let Some(first) = rows.first() {
            columns.extend(first.inputs.iter().map(|(k, _)| k.to_string()));
            columns.extend(["status", "threshold", "capacity_bits", "eta", "mu_global"].map(String::from));
            columns.extend(first.extras.iter().map(|(k, _)| k.to_string()));
        }
        let opt = |v: Option<f64>| v.map(format_number).unwrap_or_default();
        let lines = rows
            .iter()
            .map(|r| {
                let mut line: Vec<String> = r.inputs.iter().map(|&(_, v)| format_number(v)).collect();
                line.push(r.status.as_str().to_string());
                line.push(format_number(r.threshold));
                line.push(opt(r.capacity_bits));
                line.push(opt(r.eta));
                line.push(opt(r.mu_global));
                line.extend(r.extras.iter().map(|&(_, v)| opt(v)));
                line
            })
            .collect();
        Table {
            comments,
            columns,
            rows: lines,
        }
    }
}

/// CSV data preceded by `#` comment lines.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub comments: Vec<String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn write_to<W: Write>(&self, mut out: W) -> Result<()> {
        let io = |e: std::io::Error| Error::Config(format!("write failed: {e}"));
        for c in &self.comments {
            writeln!(out, "# {c}").map_err(io)?;
        }
        let mut writer = csv::Writer::from_writer(out);
        let csv_err = |e: csv::Error| Error::Config(format!("write failed: {e}"));
        writer.write_record(&self.columns).map_err(csv_err)?;
        for row in &self.rows {
            writer.write_record(row).map_err(csv_err)?;
        }
        writer.flush().map_err(io)?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_to(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is utf-8"))
    }

    /// Writes to `path`, or to stdout when `path` is `None`.
    pub fn emit(&self, path: Option<&Path>) -> Result<()> {
        match path {
            Some(p) => {
                let file = std::fs::File::create(p)
                    .map_err(|e| Error::Config(format!("cannot create {}: {e}", p.display())))?;
                self.write_to(std::io::BufWriter::new(file))
            }
            None => self.write_to(std::io::stdout().lock()),
        }
    }
}

/// `key = value` settings; `#` starts a comment.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigFile {
    entries: BTreeMap<String, String>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", lineno + 1)))?;
            entries.insert(key.trim().to_string(), value.trim().to_string());
        }
        Ok(ConfigFile { entries })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    pub fn get_f64(&self, key: &str) -> Result<Option<f64>> {
        self.get(key).map(|v| parse_f64(key, v)).transpose()
    }

    pub fn get_list(&self, key: &str) -> Result<Option<Vec<f64>>> {
        self.get(key).map(|v| parse_list(key, v)).transpose()
    }
}

fn parse_f64(key: &str, v: &str) -> Result<f64> {
    v.trim()
        .parse()
        .map_err(|_| Error::Config(format!("{key}: cannot parse {v:?} as a number")))
}

/// Comma-separated numbers.
pub fn parse_list(key: &str, v: &str) -> Result<Vec<f64>> {
    v.split(',').map(|s| parse_f64(key, s)).collect()
}

/// Flag, then config file, then default.
pub fn resolve(flag: Option<f64>, config: &ConfigFile, key: &str, default: f64) -> Result<f64> {
    match flag {
        Some(v) => Ok(v),
        None => Ok(config.get_f64(key)?.unwrap_or(default)),
    }
}

/// Quadrature settings: flag, then `GMCAP_QUAD_TOL`, then `quad_tol` in the
/// config file, then the default tolerance.
pub fn quadrature_config(flag: Option<f64>, config: &ConfigFile) -> Result<QuadratureConfig> {
    let env = match std::env::var(QUAD_TOL_ENV) {
        Ok(v) => Some(parse_f64(QUAD_TOL_ENV, &v)?),
        Err(_) => None,
    };
    let tol = match flag.or(env) {
        Some(t) => t,
        None => config
            .get_f64("quad_tol")?
            .unwrap_or(QuadratureConfig::default().abs_tol),
    };
    let cfg = QuadratureConfig::with_tolerance(tol);
    cfg.validate()?;
    Ok(cfg)
}

/// Single-mode channel row.
pub fn mono_report(gamma_q: f64, gamma_p: f64, n_bar: f64) -> Result<ResultRow> {
    let noise = MonoChannelNoise::new(gamma_q, gamma_p)?;
    let threshold = mono_threshold(&noise);
    let inputs = vec![("gamma_q", gamma_q), ("gamma_p", gamma_p), ("n_bar", n_bar)];
    let names = ["in_q", "in_p", "mod_q", "mod_p"];
    match mono_solve(&noise, n_bar) {
        Ok(s) => Ok(ResultRow {
            inputs,
            status: Status::Ok,
            threshold,
            capacity_bits: Some(s.capacity_bits),
            eta: None,
            mu_global: Some(s.mu),
            extras: names
                .into_iter()
                .zip([s.in_q, s.in_p, s.mod_q, s.mod_p])
                .map(|(k, v)| (k, Some(v)))
                .collect(),
        }),
        Err(Error::BelowThreshold { .. }) => Ok(ResultRow {
            inputs,
            status: Status::BelowThreshold,
            threshold,
            capacity_bits: None,
            eta: None,
            mu_global: None,
            extras: names.into_iter().map(|k| (k, None)).collect(),
        }),
        Err(e) => Err(e),
    }
}

/// Grid-search oracle next to the closed form.
pub fn oracle_report(gamma_q: f64, gamma_p: f64, n_bar: f64, resolution: usize) -> Result<ResultRow> {
    let noise = MonoChannelNoise::new(gamma_q, gamma_p)?;
    let oracle = brute_force_mono_oracle(&noise, n_bar, resolution)?;
    let closed = mono_solve(&noise, n_bar).ok();
    let status = if closed.is_some() { Status::Ok } else { Status::BelowThreshold };
    Ok(ResultRow {
        inputs: vec![("gamma_q", gamma_q), ("gamma_p", gamma_p), ("n_bar", n_bar)],
        status,
        threshold: mono_threshold(&noise),
        capacity_bits: closed.as_ref().map(|s| s.capacity_bits),
        eta: None,
        mu_global: closed.as_ref().map(|s| s.mu),
        extras: vec![
            ("oracle_capacity_bits", Some(oracle.capacity_bits)),
            ("oracle_in_q", Some(oracle.in_q)),
            ("oracle_mod_q", Some(oracle.mod_q)),
            ("oracle_mod_p", Some(oracle.mod_p)),
            ("capacity_gap", closed.map(|s| (s.capacity_bits - oracle.capacity_bits).abs())),
        ],
    })
}

/// Default oracle grid: `γ_q, γ_p ∈ {0.5, 1, 2}`, `n̄ ∈ {1.5, 2, 3}`, all
/// above the largest threshold of the set (1.25).
pub fn oracle_grid() -> Vec<(f64, f64, f64)> {
    let gammas = [0.5, 1.0, 2.0];
    let n_bars = [1.5, 2.0, 3.0];
    let mut out = Vec::new();
    for &gq in &gammas {
        for &gp in &gammas {
            for &nb in &n_bars {
                out.push((gq, gp, nb));
            }
        }
    }
    out
}

pub fn oracle_sweep(points: &[(f64, f64, f64)], resolution: usize) -> Result<Vec<ResultRow>> {
    points
        .par_iter()
        .map(|&(gq, gp, nb)| oracle_report(gq, gp, nb, resolution))
        .collect()
}

/// Gauss-Markov channel row. Below threshold only the threshold is filled.
pub fn capacity_report(
    params: &MarkovParams,
    n_bar: f64,
    with_first_mode: bool,
    config: &QuadratureConfig,
) -> Result<ResultRow> {
    let inputs = vec![("phi", params.phi()), ("noise", params.noise()), ("n_bar", n_bar)];
    let mut extras = Vec::new();
    if with_first_mode {
        extras.push(("first_mode_printed", Some(first_mode_variance(params.phi(), FirstModeForm::Printed, config)?)));
        extras.push((
            "first_mode_alternate",
            Some(first_mode_variance(params.phi(), FirstModeForm::Alternate, config)?),
        ));
    }
    match multimode_solve(params, n_bar, config) {
        Ok(s) => Ok(ResultRow {
            inputs,
            status: Status::Ok,
            threshold: s.threshold,
            capacity_bits: Some(s.capacity_bits),
            eta: Some(s.eta),
            mu_global: Some(s.mu_global),
            extras,
        }),
        Err(Error::BelowThreshold { threshold, .. }) => Ok(ResultRow {
            inputs,
            status: Status::BelowThreshold,
            threshold,
            capacity_bits: None,
            eta: None,
            mu_global: None,
            extras,
        }),
        Err(e) => Err(e),
    }
}

/// One point of the constant-SNR sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fig3Row {
    pub phi: f64,
    pub noise: f64,
    pub n_bar: f64,
    pub capacity_bits: f64,
    pub eta: f64,
    pub classical_bits: f64,
}

/// Constant-SNR sweep: `n̄ = N · n̄_thr(φ, 1)`, so every point sits on the
/// threshold of a unit-noise channel scaled up by `N`.
pub fn fig3_rows(phis: &[f64], noises: &[f64], config: &QuadratureConfig) -> Result<Vec<Fig3Row>> {
    let jobs: Vec<(f64, f64)> = phis
        .iter()
        .flat_map(|&phi| noises.iter().map(move |&n| (phi, n)))
        .collect();
    jobs.par_iter()
        .map(|&(phi, noise)| {
            let snr = multimode_threshold(&MarkovParams::new(1.0, phi)?);
            let params = MarkovParams::new(noise, phi)?;
            let n_bar = snr * noise;
            Ok(Fig3Row {
                phi,
                noise,
                n_bar,
                capacity_bits: asymptotic_capacity(&params, n_bar, config)?,
                eta: squeezing_fraction(&params, n_bar, config)?,
                classical_bits: classical_limit_capacity(&params, snr)?,
            })
        })
        .collect()
}

pub fn fig3_table(rows: &[Fig3Row], comments: Vec<String>) -> Table {
    Table {
        comments,
        columns: ["phi", "noise", "n_bar", "capacity_bits", "eta", "classical_bits"].map(String::from).to_vec(),
        rows: rows
            .iter()
            .map(|r| {
                [r.phi, r.noise, r.n_bar, r.capacity_bits, r.eta, r.classical_bits]
                    .map(format_number)
                    .to_vec()
            })
            .collect(),
    }
}

/// Finite-use rate next to the asymptotic capacity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fig4Row {
    pub phi: f64,
    pub n: usize,
    pub rate_bits: f64,
    pub capacity_bits: Option<f64>,
}

/// `R^(n)` for every `(φ, n)`; `C` is `None` when `n̄` is below threshold.
pub fn fig4_rows(
    phis: &[f64],
    noise: f64,
    n_bar: f64,
    uses: &[usize],
    pairing: EigenPairing,
    config: &QuadratureConfig,
) -> Result<Vec<Fig4Row>> {
    let capacities: Vec<Option<f64>> = phis
        .iter()
        .map(|&phi| {
            let params = MarkovParams::new(noise, phi)?;
            match asymptotic_capacity(&params, n_bar, config) {
                Ok(c) => Ok(Some(c)),
                Err(Error::BelowThreshold { .. }) => Ok(None),
                Err(e) => Err(e),
            }
        })
        .collect::<Result<_>>()?;
    let jobs: Vec<(usize, usize)> = (0..phis.len())
        .flat_map(|i| uses.iter().map(move |&n| (i, n)))
        .collect();
    jobs.par_iter()
        .map(|&(i, n)| {
            let params = MarkovParams::new(noise, phis[i])?;
            Ok(Fig4Row {
                phi: phis[i],
                n,
                rate_bits: finite_n_rate(&params, n_bar, n, pairing)?,
                capacity_bits: capacities[i],
            })
        })
        .collect()
}

pub fn fig4_table(rows: &[Fig4Row], comments: Vec<String>) -> Table {
    Table {
        comments,
        columns: ["phi", "n", "rate_bits", "capacity_bits"].map(String::from).to_vec(),
        rows: rows
            .iter()
            .map(|r| {
                vec![
                    format_number(r.phi),
                    r.n.to_string(),
                    format_number(r.rate_bits),
                    r.capacity_bits.map(format_number).unwrap_or_default(),
                ]
            })
            .collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumKind {
    /// Eigenvalues of `M(φ)`.
    Toeplitz,
    /// Eigenvalues of the circulant embedding of `M(φ)`.
    Circulant,
    /// `λ(x)` on `samples` evenly spaced points of `[0, π]`.
    Asymptotic,
}

/// `(x_k, value_k)` pairs. Matrix kinds list eigenvalues in descending order
/// against the midpoint grid `x_k = π(k + 1/2)/n`.
pub fn spectrum_rows(kind: SpectrumKind, params: &MarkovParams, n: usize, samples: usize) -> Result<Vec<(f64, f64)>> {
    match kind {
        SpectrumKind::Asymptotic => {
            if samples < 2 {
                return Err(Error::Config("at least two samples are required".into()));
            }
            Ok((0..samples)
                .map(|k| {
                    let x = std::f64::consts::PI * k as f64 / (samples - 1) as f64;
                    (x, params.symbol(x))
                })
                .collect())
        }
        SpectrumKind::Toeplitz | SpectrumKind::Circulant => {
            let m = spectrum_matrix(kind, params, n)?;
            let eig = symmetric_eigenvalues(&m)?;
            Ok(midpoint_grid(n).into_iter().zip(eig).collect())
        }
    }
}

/// The matrix whose eigenvalues [`spectrum_rows`] reports.
pub fn spectrum_matrix(kind: SpectrumKind, params: &MarkovParams, n: usize) -> Result<crate::matrix::SymmetricMatrix> {
    match kind {
        SpectrumKind::Toeplitz => markov_matrix(*params, Sign::Plus, n),
        SpectrumKind::Circulant => circulant_embedding(*params, Sign::Plus, n),
        SpectrumKind::Asymptotic => Err(Error::Config("the asymptotic spectrum has no matrix".into())),
    }
}

pub fn spectrum_table(rows: &[(f64, f64)], comments: Vec<String>) -> Table {
    Table {
        comments,
        columns: ["k", "x", "value"].map(String::from).to_vec(),
        rows: rows
            .iter()
            .enumerate()
            .map(|(k, &(x, v))| vec![k.to_string(), format_number(x), format_number(v)])
            .collect(),
    }
}

/// Parameter swept by a [`SweepRequest`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParameter {
    Phi,
    Noise,
    NBar,
    NUses,
}

/// Values held fixed during a sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedParams {
    pub phi: f64,
    pub noise: f64,
    pub n_bar: f64,
    pub n_uses: usize,
}

/// Linear sweep of one parameter.
///
/// For `NUses` the capacity column holds the finite-use rate; otherwise it
/// holds the asymptotic capacity.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRequest {
    pub parameter: SweepParameter,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
    pub fixed: FixedParams,
}

impl SweepRequest {
    pub fn validate(&self) -> Result<()> {
        if self.steps == 0 {
            return Err(Error::Config("a sweep needs at least one step".into()));
        }
        if self.parameter == SweepParameter::Phi {
            for v in [self.start, self.stop] {
                if !(0.0..=PHI_MAX).contains(&v) {
                    return Err(Error::domain("phi", v, "sweeps take 0 <= phi <= 0.999"));
                }
            }
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.start];
        }
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|k| self.start + (self.stop - self.start) * k as f64 / last)
            .collect()
    }

    pub fn run(&self, config: &QuadratureConfig) -> Result<Vec<ResultRow>> {
        self.validate()?;
        self.values()
            .par_iter()
            .map(|&v| {
                let mut f = self.fixed;
                match self.parameter {
                    SweepParameter::Phi => f.phi = v,
                    SweepParameter::Noise => f.noise = v,
                    SweepParameter::NBar => f.n_bar = v,
                    SweepParameter::NUses => f.n_uses = v.round().max(1.0) as usize,
                }
                let params = MarkovParams::new(f.noise, f.phi)?;
                if self.parameter == SweepParameter::NUses {
                    let rate = finite_n_rate(&params, f.n_bar, f.n_uses, EigenPairing::Reversed)?;
                    return Ok(ResultRow {
                        inputs: vec![("phi", f.phi), ("noise", f.noise), ("n_bar", f.n_bar), ("n_uses", f.n_uses as f64)],
                        status: Status::Ok,
                        threshold: multimode_threshold(&params),
                        capacity_bits: Some(rate),
                        eta: None,
                        mu_global: None,
                        extras: Vec::new(),
                    });
                }
                capacity_report(&params, f.n_bar, false, config)
            })
            .collect()
    }
}
