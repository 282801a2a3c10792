//! Toeplitz noise matrices, circulant embeddings and the limiting symbol.

use gmcap::numerics::symmetric_eigenvalues;
use gmcap::toeplitz::{
    circulant_embedding, commutator_norm, fourier_diagonalizer, markov_matrix, markov_szego_deviation,
    MarkovParams, Sign,
};

fn main() -> gmcap::Result<()> {
    let params = MarkovParams::new(1.0, 0.5)?;
    println!("M(0.5), n = 4:\n{}", markov_matrix(params, Sign::Plus, 4)?);

    let toeplitz = commutator_norm(&markov_matrix(params, Sign::Plus, 4)?, &markov_matrix(params, Sign::Minus, 4)?)?;
    let circulant = commutator_norm(
        &circulant_embedding(params, Sign::Plus, 4)?,
        &circulant_embedding(params, Sign::Minus, 4)?,
    )?;
    println!("||[M(φ), M(−φ)]|| = {toeplitz:.4}, ||[C(φ), C(−φ)]|| = {circulant:.2e}");

    for n in [8, 9, 64] {
        let c = circulant_embedding(params, Sign::Plus, n)?;
        let d = c.congruence(&fourier_diagonalizer(n))?;
        println!("n = {n:3}: off-diagonal norm of QᵀCQ = {:.2e}", d.as_matrix().off_diagonal_norm());
    }

    for n in [16, 64, 256] {
        println!("n = {n:3}: Szegő deviation {:.3e}", markov_szego_deviation(params, n)?);
    }

    let eig = symmetric_eigenvalues(&markov_matrix(params, Sign::Plus, 8)?)?;
    println!("eigenvalues of M(0.5), n = 8: {eig:.4?}");
    println!("symbol endpoints: λ(0) = {}, λ(π) = {}", params.symbol(0.0), params.symbol(std::f64::consts::PI));
    Ok(())
}
