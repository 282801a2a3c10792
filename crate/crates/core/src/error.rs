use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{name} = {value} is outside its domain: {reason}")]
    Domain {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not symmetric (max |a_ij - a_ji| = {asymmetry:e})")]
    NotSymmetric { asymmetry: f64 },

    #[error("matrix is not orthogonal (|UᵀU - 1|_F = {deviation:e})")]
    NotOrthogonal { deviation: f64 },

    #[error("unphysical state: symplectic eigenvalue #{index} = {value} is below 1/2")]
    Unphysical { index: usize, value: f64 },

    #[error("mean photon number {n_bar} is below the water-filling threshold {threshold}")]
    BelowThreshold { n_bar: f64, threshold: f64 },

    #[error("quadrature did not converge within {subdivisions} panels (estimate {estimate}, error bound {error_bound:e})")]
    QuadratureNonConvergence {
        subdivisions: usize,
        estimate: f64,
        error_bound: f64,
    },

    #[error("eigensolver did not converge within {sweeps} sweeps (off-diagonal norm {off_diagonal:e})")]
    EigenNonConvergence { sweeps: usize, off_diagonal: f64 },

    #[error("objective returned non-finite value {value} at feasible point {point:?}")]
    NonFiniteObjective { point: Vec<f64>, value: f64 },

    #[error("no feasible point found on the search grid")]
    NoFeasiblePoint,

    #[error("invalid configuration: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn domain(name: &'static str, value: f64, reason: &'static str) -> Self {
        Error::Domain {
            name,
            value,
            reason,
        }
    }
}
