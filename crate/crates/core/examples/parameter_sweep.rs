//! A linear sweep written as CSV.

use gmcap::numerics::QuadratureConfig;
use gmcap::report::{FixedParams, ResultRow, SweepParameter, SweepRequest};

fn main() -> gmcap::Result<()> {
    let request = SweepRequest {
        parameter: SweepParameter::NBar,
        start: 5.0,
        stop: 10.0,
        steps: 6,
        fixed: FixedParams { phi: 0.7, noise: 1.0, n_bar: 0.0, n_uses: 1 },
    };
    let rows = request.run(&QuadratureConfig::default())?;
    let comments = vec!["n_bar sweep at phi = 0.7, N = 1".to_string()];
    print!("{}", ResultRow::table(&rows, comments).to_csv_string()?);
    Ok(())
}

#[cfg(test)]
mod tests {
    #[test]
    fn runs() {
        super::main().unwrap();
    }
}
