//! Classical capacity of bosonic Gaussian additive-noise channels with
//! Gauss-Markov memory.
//!
//! The crate is organised bottom-up:
//!
//! * [`numerics`]: adaptive quadrature, symmetric eigensolvers, grid search.
//! * [`gaussian`]: covariance blocks, symplectic spectra and entropies.
//! * [`toeplitz`]: Markov noise matrices, circulant embeddings and symbols.
//! * [`channel`]: optimal inputs, modulations and capacities.
//! * [`report`]: sweep drivers and CSV output used by the `gmcap` binary.
//!
//! ```
//! use gmcap::channel::asymptotic_capacity;
//! use gmcap::numerics::QuadratureConfig;
//! use gmcap::toeplitz::MarkovParams;
//!
//! let params = MarkovParams::new(1.0, 0.7).unwrap();
//! let c = asymptotic_capacity(&params, 7.5, &QuadratureConfig::default()).unwrap();
//! assert!(c > 3.0 && c < 3.3);
//! ```

pub mod channel;
pub mod error;
pub mod gaussian;
pub mod matrix;
pub mod numerics;
pub mod report;
pub mod toeplitz;

pub use error::{Error, Result};
