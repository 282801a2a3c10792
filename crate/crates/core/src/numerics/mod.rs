//! Numerical kernel: quadrature on `[0, π]`, dense symmetric eigensolvers and
//! a deterministic grid optimizer.

mod eigen;
mod optimize;
mod quadrature;

pub use eigen::{symmetric_eigen, symmetric_eigenvalues, EigenConfig, SymmetricEigen};
pub use optimize::{grid_maximize, GridOptimum};
pub use quadrature::{
    integrate, integrate_spectral, spectral_mean, GaussLegendre, QuadratureConfig,
};
