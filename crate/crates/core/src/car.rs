//! Fermionic ladder operators and the Clifford algebra behind them.
//!
//! Two constructions of the same operators, kept deliberately independent
//! so they can check each other:
//!
//! * the recursive Clifford construction — generators of the complex
//!   Clifford algebra on n generators satisfying eᵢeⱼ + eⱼeᵢ = 2δᵢⱼ·I,
//!   built by tensoring a fresh σx/σy pair onto the previous stage and
//!   stringing the earlier generators with the quadratic element σz;
//!   consecutive generator pairs combine into ladder operators
//!   aₗ = (e₂ₗ + i·e₂ₗ₊₁)/2;
//! * the direct string construction — aᵢ = 1⊗…⊗1 ⊗ a ⊗ σz⊗…⊗σz with the
//!   single-qubit ladder a = [[0,1],[0,0]] and i string factors.
//!
//! Tensor-factor convention, used crate-wide: factor 0 is the rightmost
//! tensor slot, so mode i carries i σz string factors to its right.  Under
//! this convention the two constructions agree entrywise once the Clifford
//! pairs are listed by their string count (pair l has n_modes−1−l trailing
//! σz factors, hence is mode n_modes−1−l).
//!
//! Both satisfy the fermionic anticommutation relations
//! {aᵢ,aⱼ} = {aᵢ*,aⱼ*} = 0, {aᵢ,aⱼ*} = δᵢⱼ, verified by [`verify_car`].

use num_complex::Complex64;

use crate::error::{Budget, Error, Result};
use crate::report::VerificationReport;
use crate::sparse::{anticommutator, SparseOp};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// The Pauli matrices and identity: (σx, σy, σz, I).
pub fn pauli_basis() -> (SparseOp, SparseOp, SparseOp, SparseOp) {
    let sx = SparseOp::from_triplets(2, 2, vec![(0, 1, c(1.0, 0.0)), (1, 0, c(1.0, 0.0))]);
    let sy = SparseOp::from_triplets(2, 2, vec![(0, 1, c(0.0, -1.0)), (1, 0, c(0.0, 1.0))]);
    let sz = SparseOp::from_diag(&[c(1.0, 0.0), c(-1.0, 0.0)]);
    (sx, sy, sz, SparseOp::identity(2))
}

/// Kronecker product of the factors, leftmost factor most significant.
fn kron_fold(factors: &[&SparseOp]) -> SparseOp {
    let mut out = SparseOp::identity(1);
    for f in factors {
        out = out.kron(f);
    }
    out
}

/// Generators of the complex Clifford algebra on `n` generators,
/// represented on 2^(n/2) dimensions.
#[derive(Debug, Clone)]
pub struct CliffordGenerators {
    /// Number of generators (even).
    pub n: usize,
    /// The generator matrices e₀ … e₍ₙ₋₁₎.
    pub mats: Vec<SparseOp>,
}

/// Builds Clifford generators with the default size budget.
pub fn clifford_generators(n: usize) -> Result<CliffordGenerators> {
    clifford_generators_with(n, Budget::default())
}

/// Builds Clifford generators by the tensor recursion.
///
/// Base case: e₀ = σx, e₁ = σy.  Step n → n+2: every existing generator is
/// right-tensored with the quadratic element σz (which anticommutes with
/// the new pair and squares to the identity), and the fresh pair 1⊗σx,
/// 1⊗σy is added.
pub fn clifford_generators_with(n: usize, budget: Budget) -> Result<CliffordGenerators> {
    if n == 0 || n % 2 != 0 {
        return Err(Error::InvalidArgument(format!(
            "clifford_generators needs even n ≥ 2, got {n}"
        )));
    }
    let half = n / 2;
    if half >= usize::BITS as usize {
        return Err(Error::BudgetExceeded(format!(
            "clifford_generators dimension 2^{half} overflows"
        )));
    }
    // Every generator is a Kronecker product of Pauli factors, hence has
    // exactly one nonzero per row: nnz = dimension.
    budget.admit(1usize << half, "clifford generator")?;

    let (sx, sy, sz, _) = pauli_basis();
    let mut mats = vec![sx.clone(), sy.clone()];
    for _ in 1..half {
        let dim = mats[0].nrows();
        let mut next: Vec<SparseOp> = mats.iter().map(|e| e.kron(&sz)).collect();
        next.push(SparseOp::identity(dim).kron(&sx));
        next.push(SparseOp::identity(dim).kron(&sy));
        mats = next;
    }
    Ok(CliffordGenerators { n, mats })
}

/// Fermionic ladder operators for `modes` modes on 2^modes dimensions.
#[derive(Debug, Clone)]
pub struct FermionLadder {
    pub modes: usize,
    /// Annihilators a₀ … a₍ₘ₋₁₎.
    pub a: Vec<SparseOp>,
    /// Creators: aᵢ* is exactly the conjugate transpose of aᵢ.
    pub a_dag: Vec<SparseOp>,
}

/// Ladder operators from the Clifford generators, default budget.
pub fn fermion_ladder_from_clifford(n_modes: usize) -> Result<FermionLadder> {
    fermion_ladder_from_clifford_with(n_modes, Budget::default())
}

/// Ladder operators from consecutive Clifford generator pairs:
/// aₗ = (e₂ₗ + i·e₂ₗ₊₁)/2.
///
/// Pair l carries n_modes−1−l trailing σz string factors, so it is listed
/// as mode n_modes−1−l to match the crate's factor-ordering convention
/// (mode index = number of string factors to the right).
pub fn fermion_ladder_from_clifford_with(n_modes: usize, budget: Budget) -> Result<FermionLadder> {
    if n_modes == 0 {
        return Err(Error::InvalidArgument(
            "fermion ladder needs at least one mode".into(),
        ));
    }
    let gens = clifford_generators_with(2 * n_modes, budget)?;
    let mut a = vec![SparseOp::identity(0); n_modes];
    let mut a_dag = vec![SparseOp::identity(0); n_modes];
    for l in 0..n_modes {
        let lower = gens.mats[2 * l]
            .add(&gens.mats[2 * l + 1].scale(c(0.0, 1.0)))?
            .scale(c(0.5, 0.0));
        let mode = n_modes - 1 - l;
        a_dag[mode] = lower.adjoint();
        a[mode] = lower;
    }
    Ok(FermionLadder {
        modes: n_modes,
        a,
        a_dag,
    })
}

/// Ladder operators from the string formula, default budget.
pub fn fermion_ladder_jordan_wigner(n_modes: usize) -> Result<FermionLadder> {
    fermion_ladder_jordan_wigner_with(n_modes, Budget::default())
}

/// Ladder operators built directly as
/// aᵢ = 1^⊗(n−1−i) ⊗ a ⊗ σz^⊗i with a = [[0,1],[0,0]].
pub fn fermion_ladder_jordan_wigner_with(n_modes: usize, budget: Budget) -> Result<FermionLadder> {
    if n_modes == 0 {
        return Err(Error::InvalidArgument(
            "fermion ladder needs at least one mode".into(),
        ));
    }
    if n_modes >= usize::BITS as usize {
        return Err(Error::BudgetExceeded(format!(
            "fermion ladder dimension 2^{n_modes} overflows"
        )));
    }
    budget.admit(1usize << n_modes, "jordan-wigner ladder operator")?;

    let (_, _, sz, id) = pauli_basis();
    let lower = SparseOp::from_triplets(2, 2, vec![(0, 1, c(1.0, 0.0))]);
    let mut a = Vec::with_capacity(n_modes);
    let mut a_dag = Vec::with_capacity(n_modes);
    for i in 0..n_modes {
        let mut factors: Vec<&SparseOp> = vec![&id; n_modes - 1 - i];
        factors.push(&lower);
        factors.extend(std::iter::repeat_n(&sz, i));
        let ai = kron_fold(&factors);
        a_dag.push(ai.adjoint());
        a.push(ai);
    }
    Ok(FermionLadder {
        modes: n_modes,
        a,
        a_dag,
    })
}

/// Checks the three anticommutation families over all ordered mode pairs:
/// `car_aa` for {aᵢ,aⱼ} = 0, `car_adag_adag` for {aᵢ*,aⱼ*} = 0, and
/// `car_a_adag` for {aᵢ,aⱼ*} = δᵢⱼ·I.
pub fn verify_car(ops: &FermionLadder, tol: f64) -> VerificationReport {
    let mut report = VerificationReport::new(tol);
    let dim = ops.a[0].nrows();
    let id = SparseOp::identity(dim);
    for i in 0..ops.modes {
        for j in 0..ops.modes {
            let aa = anticommutator(&ops.a[i], &ops.a[j]).expect("conformable by construction");
            report.push("car_aa", i, j, aa.max_abs());
            let dd =
                anticommutator(&ops.a_dag[i], &ops.a_dag[j]).expect("conformable by construction");
            report.push("car_adag_adag", i, j, dd.max_abs());
            let ad = anticommutator(&ops.a[i], &ops.a_dag[j]).expect("conformable by construction");
            let dev = if i == j {
                ad.max_abs_diff(&id).expect("same shape")
            } else {
                ad.max_abs()
            };
            report.push("car_a_adag", i, j, dev);
        }
    }
    report
}

/// Rank of the span of all 4^modes normal-ordered ladder monomials
/// (per mode: 1, aᵢ, aᵢ*, aᵢ*aᵢ), with each product flattened to a row.
///
/// Equals 4^modes exactly when the ladder generates the full matrix
/// algebra. Intended for small mode counts (the matrix is 4^m × 4^m).
pub fn ladder_span_rank(ops: &FermionLadder) -> usize {
    let m = ops.modes;
    let dim = 1usize << m;
    let mut span = ndarray::Array2::zeros((1 << (2 * m), dim * dim));
    for choice in 0..(1usize << (2 * m)) {
        let mut prod = SparseOp::identity(dim);
        for mode in 0..m {
            let digit = (choice >> (2 * mode)) & 3;
            let factor = match digit {
                0 => None,
                1 => Some(ops.a[mode].clone()),
                2 => Some(ops.a_dag[mode].clone()),
                _ => Some(
                    ops.a_dag[mode]
                        .matmul(&ops.a[mode])
                        .expect("square factors"),
                ),
            };
            if let Some(f) = factor {
                prod = prod.matmul(&f).expect("square factors");
            }
        }
        for (r, cc, v) in prod.iter() {
            span[(choice, r * dim + cc)] = v;
        }
    }
    crate::linalg::rank(&span, 1e-10)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pauli_products() {
        let (sx, sy, sz, id) = pauli_basis();
        // σx·σy = iσz and σ² = I for each.
        let prod = sx.matmul(&sy).unwrap();
        assert_eq!(prod.max_abs_diff(&sz.scale(c(0.0, 1.0))).unwrap(), 0.0);
        for p in [&sx, &sy, &sz] {
            assert_eq!(p.matmul(p).unwrap().max_abs_diff(&id).unwrap(), 0.0);
            assert_eq!(p.adjoint().max_abs_diff(p).unwrap(), 0.0); // Hermitian
        }
    }

    #[test]
    fn clifford_base_case_is_sigma_x_y() {
        let gens = clifford_generators(2).unwrap();
        let (sx, sy, _, _) = pauli_basis();
        assert_eq!(gens.mats.len(), 2);
        assert_eq!(gens.mats[0].max_abs_diff(&sx).unwrap(), 0.0);
        assert_eq!(gens.mats[1].max_abs_diff(&sy).unwrap(), 0.0);
    }

    #[test]
    fn clifford_rejects_bad_counts() {
        assert!(matches!(
            clifford_generators(0),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            clifford_generators(3),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            clifford_generators_with(10, Budget::new(4)),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn clifford_relations_hold_exactly_up_to_n10() {
        for n in (2..=10).step_by(2) {
            let gens = clifford_generators(n).unwrap();
            let dim = 1 << (n / 2);
            let id2 = SparseOp::identity(dim).scale(c(2.0, 0.0));
            for i in 0..n {
                // Hermitian and unitary generators.
                assert_eq!(gens.mats[i].adjoint().max_abs_diff(&gens.mats[i]).unwrap(), 0.0);
                for j in i..n {
                    let anti = anticommutator(&gens.mats[i], &gens.mats[j]).unwrap();
                    let dev = if i == j {
                        anti.max_abs_diff(&id2).unwrap()
                    } else {
                        anti.max_abs()
                    };
                    assert_eq!(dev, 0.0, "anticommutator defect at ({i},{j}), n={n}");
                }
            }
        }
    }

    #[test]
    fn single_mode_ladder_is_the_2x2_pair() {
        let ops = fermion_ladder_from_clifford(1).unwrap();
        let expect = SparseOp::from_triplets(2, 2, vec![(0, 1, c(1.0, 0.0))]);
        assert_eq!(ops.a[0].max_abs_diff(&expect).unwrap(), 0.0);
        assert_eq!(ops.a_dag[0].max_abs_diff(&expect.adjoint()).unwrap(), 0.0);
        // {a, a*} = I.
        let anti = anticommutator(&ops.a[0], &ops.a_dag[0]).unwrap();
        assert_eq!(anti.max_abs_diff(&SparseOp::identity(2)).unwrap(), 0.0);
    }

    #[test]
    fn creator_formula_matches_adjoint() {
        // a*ₗ = (e₂ₗ − i·e₂ₗ₊₁)/2 coincides exactly with the stored adjoint.
        let n_modes = 3;
        let gens = clifford_generators(2 * n_modes).unwrap();
        let ops = fermion_ladder_from_clifford(n_modes).unwrap();
        for l in 0..n_modes {
            let raise = gens.mats[2 * l]
                .sub(&gens.mats[2 * l + 1].scale(c(0.0, 1.0)))
                .unwrap()
                .scale(c(0.5, 0.0));
            let mode = n_modes - 1 - l;
            assert_eq!(ops.a_dag[mode].max_abs_diff(&raise).unwrap(), 0.0);
        }
    }

    #[test]
    fn cross_mode_anticommutator_vanishes() {
        let ops = fermion_ladder_from_clifford(3).unwrap();
        let anti = anticommutator(&ops.a[0], &ops.a_dag[2]).unwrap();
        assert_eq!(anti.nnz(), 0);
    }

    #[test]
    fn jordan_wigner_two_modes_explicit() {
        // Mode 1 of two is a ⊗ σz.
        let ops = fermion_ladder_jordan_wigner(2).unwrap();
        let (_, _, sz, _) = pauli_basis();
        let lower = SparseOp::from_triplets(2, 2, vec![(0, 1, c(1.0, 0.0))]);
        assert_eq!(ops.a[1].max_abs_diff(&lower.kron(&sz)).unwrap(), 0.0);
    }

    #[test]
    fn constructions_agree_entrywise() {
        for n_modes in 1..=5 {
            let jw = fermion_ladder_jordan_wigner(n_modes).unwrap();
            let cl = fermion_ladder_from_clifford(n_modes).unwrap();
            for i in 0..n_modes {
                // Both routes produce dyadic entries; equality is exact.
                assert_eq!(jw.a[i].max_abs_diff(&cl.a[i]).unwrap(), 0.0, "mode {i}");
                assert_eq!(jw.a_dag[i].max_abs_diff(&cl.a_dag[i]).unwrap(), 0.0);
            }
        }
    }

    #[test]
    fn verify_car_passes_and_counts_all_pairs() {
        let ops = fermion_ladder_jordan_wigner(3).unwrap();
        let report = verify_car(&ops, 1e-12);
        assert!(report.pass);
        assert_eq!(report.checks.len(), 3 * 9);
        assert_eq!(report.worst(), 0.0);
    }

    #[test]
    fn verify_car_flags_sabotage() {
        let mut ops = fermion_ladder_jordan_wigner(2).unwrap();
        let (sx, _, _, _) = pauli_basis();
        ops.a[0] = sx.kron(&SparseOp::identity(2));
        let report = verify_car(&ops, 1e-12);
        assert!(!report.pass);
        // {a₀,a₀} = 2σx² ⊗ 1 = 2 ≠ 0.
        let bad = report
            .checks
            .iter()
            .find(|ch| ch.relation == "car_aa" && ch.i == 0 && ch.j == 0)
            .unwrap();
        assert!(!bad.pass);
        assert!((bad.max_abs_deviation - 2.0).abs() < 1e-15);
    }

    #[test]
    fn ladder_monomials_span_full_algebra() {
        for m in 1..=3 {
            let ops = fermion_ladder_jordan_wigner(m).unwrap();
            assert_eq!(ladder_span_rank(&ops), 1 << (2 * m), "modes = {m}");
        }
    }
}
