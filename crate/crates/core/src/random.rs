//! Seeded generators for random test objects: states, 2×2 unitaries,
//! graded vectors, and well-separated root sets.
//!
//! Everything is driven by an explicit ChaCha stream so that a given seed
//! reproduces the same objects on every platform and run.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::sparse::SparseOp;
use crate::sym::{BasisFlavor, SymVector};

/// A deterministic RNG stream for the given seed.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Standard complex Gaussian (independent N(0,1) real and imaginary parts).
pub fn complex_gaussian(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// A Haar-ish random unit vector: Gaussian components, normalized.
pub fn random_state(rng: &mut impl Rng, dim: usize) -> Vec<Complex64> {
    assert!(dim > 0, "random_state needs a positive dimension");
    loop {
        let v: Vec<Complex64> = (0..dim).map(|_| complex_gaussian(rng)).collect();
        let norm = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            return v.into_iter().map(|c| c / norm).collect();
        }
    }
}

/// A Haar-distributed 2×2 unitary: Gram–Schmidt on a complex Gaussian
/// matrix with positive-real triangular diagonal.
pub fn random_unitary_2x2(rng: &mut impl Rng) -> SparseOp {
    loop {
        let (g11, g21) = (complex_gaussian(rng), complex_gaussian(rng));
        let (g12, g22) = (complex_gaussian(rng), complex_gaussian(rng));
        let n1 = (g11.norm_sqr() + g21.norm_sqr()).sqrt();
        if n1 < 1e-6 {
            continue;
        }
        let (v11, v21) = (g11 / n1, g21 / n1);
        let ip = v11.conj() * g12 + v21.conj() * g22;
        let (w1, w2) = (g12 - ip * v11, g22 - ip * v21);
        let n2 = (w1.norm_sqr() + w2.norm_sqr()).sqrt();
        if n2 < 1e-6 {
            continue;
        }
        return SparseOp::from_triplets(
            2,
            2,
            vec![
                (0, 0, v11),
                (1, 0, v21),
                (0, 1, w1 / n2),
                (1, 1, w2 / n2),
            ],
        );
    }
}

/// A random unit vector in Sy_k, carried in the requested flavor.
pub fn random_sym_vector(rng: &mut impl Rng, k: usize, flavor: BasisFlavor) -> SymVector {
    SymVector {
        k,
        flavor,
        coeffs: random_state(rng, k + 1),
    }
}

/// Chordal distance between two finite points seen on the sphere:
/// |z − w| / √((1+|z|²)(1+|w|²)).
pub fn chordal_distance_finite(z: Complex64, w: Complex64) -> f64 {
    (z - w).norm() / (z.norm().hypot(1.0) * w.norm().hypot(1.0))
}

/// `count` points uniform in the disc of the given radius, redrawn until
/// all pairwise chordal separations are at least `min_sep`.
pub fn random_separated_roots(
    rng: &mut impl Rng,
    count: usize,
    min_sep: f64,
    radius: f64,
) -> Vec<Complex64> {
    'outer: loop {
        let roots: Vec<Complex64> = (0..count)
            .map(|_| {
                let r = radius * rng.random_range(0.0f64..1.0).sqrt();
                let theta = rng.random_range(0.0f64..std::f64::consts::TAU);
                Complex64::from_polar(r, theta)
            })
            .collect();
        for i in 0..count {
            for j in (i + 1)..count {
                if chordal_distance_finite(roots[i], roots[j]) < min_sep {
                    continue 'outer;
                }
            }
        }
        return roots;
    }
}
