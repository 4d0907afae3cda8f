//! Roots of complex polynomials via the balanced companion matrix.
//!
//! The polynomial Σ aᵢ zⁱ is monicized, its companion matrix (upper
//! Hessenberg, coefficients in the last column) is balanced and handed to
//! the shifted-QR iteration, and each computed root gets a couple of
//! residual-guarded Newton polish steps against the monic polynomial.
//! Multiple roots are returned as the numerical cluster the iteration
//! produces — no clustering correction is applied, so an m-fold root is
//! determined only to about machine-epsilon^(1/m).

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{balance, hessenberg_eigenvalues};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Evaluates p and p′ at z by Horner's rule; coefficients low degree first.
fn horner(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = ZERO;
    let mut dp = ZERO;
    for &a in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// All roots of the polynomial with the given coefficients (low degree
/// first, leading coefficient last and nonzero).
///
/// Degree 0 yields no roots. The output order is unspecified.
pub fn polynomial_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let lead = match coeffs.last() {
        Some(&l) if l != ZERO => l,
        _ => {
            return Err(Error::InvalidArgument(
                "polynomial_roots needs a nonzero leading coefficient".into(),
            ))
        }
    };
    let n = coeffs.len() - 1;
    if n == 0 {
        return Ok(Vec::new());
    }
    let monic: Vec<Complex64> = coeffs.iter().map(|&a| a / lead).collect();

    let mut comp = Array2::zeros((n, n));
    for i in 0..n - 1 {
        comp[(i + 1, i)] = Complex64::new(1.0, 0.0);
    }
    for j in 0..n {
        comp[(j, n - 1)] = -monic[j];
    }
    let mut roots = hessenberg_eigenvalues(&balance(&comp))?;

    // Newton polish with a residual guard: accept a step only if it shrinks
    // |p|; harmless near multiple roots, a digit or two gained elsewhere.
    for z in &mut roots {
        for _ in 0..2 {
            let (p, dp) = horner(&monic, *z);
            if dp == ZERO {
                break;
            }
            let step = *z - p / dp;
            let (p_new, _) = horner(&monic, step);
            if p_new.norm() < p.norm() {
                *z = step;
            } else {
                break;
            }
        }
    }
    Ok(roots)
}
