//! Truncated bosonic ladder operators and their polynomial counterpart.
//!
//! The bosonic relations [cᵢ,cⱼ*] = δᵢⱼ cannot hold for finite matrices —
//! the commutator of finite matrices is traceless while the identity is
//! not — so any finite realization must fail somewhere.  Truncating each
//! mode at occupation `n_max` localizes the failure: with the rule that
//! the creator annihilates the top state, [c,c*] equals the identity on
//! the interior block and picks up a single defect of −n_max on the
//! boundary, keeping c* exactly the adjoint of c and the trace exactly
//! zero.
//!
//! The same algebra acts on polynomials: D (differentiation) and X
//! (multiplication by the variable) satisfy [D,X] = 1; the diagonal
//! intertwiner S = diag(√(n!)) carries the occupation-basis ladder onto
//! (D, X), and per-mode combinations cᵢ = (Xᵢ+Dᵢ)/√2 give a multimode
//! ladder on monomials.  The monomial basis is not orthonormal, so that
//! variant's creators are not matrix adjoints — it gets its own type.

use num_complex::Complex64;

use crate::error::{Budget, Error, Result};
use crate::report::VerificationReport;
use crate::sparse::{commutator, SparseOp};
use crate::sym::factorial;

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Per-mode truncation window for a multimode Fock space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FockCutoff {
    /// Number of modes, ≥ 1.
    pub modes: usize,
    /// Largest occupation per mode, ≥ 1.
    pub n_max: usize,
}

impl FockCutoff {
    pub fn new(modes: usize, n_max: usize) -> Result<Self> {
        if modes == 0 || n_max == 0 {
            return Err(Error::InvalidArgument(format!(
                "FockCutoff needs modes ≥ 1 and n_max ≥ 1, got modes={modes}, n_max={n_max}"
            )));
        }
        Ok(FockCutoff { modes, n_max })
    }

    /// Total dimension (n_max+1)^modes, if it fits in usize.
    pub fn dim(&self) -> Result<usize> {
        (self.n_max + 1)
            .checked_pow(self.modes as u32)
            .ok_or_else(|| {
                Error::BudgetExceeded(format!(
                    "occupation space ({}+1)^{} overflows",
                    self.n_max, self.modes
                ))
            })
    }
}

/// Enumeration of occupation tuples (n₀,…,n₍ₘ₋₁₎), 0 ≤ nᵢ ≤ n_max, in
/// lexicographic order with mode 0 slowest (mode 0 is the leftmost tensor
/// factor).  The tuple↔index map is bijective.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OccupationBasis {
    pub cutoff: FockCutoff,
}

impl OccupationBasis {
    pub fn new(cutoff: FockCutoff) -> Self {
        OccupationBasis { cutoff }
    }

    pub fn dim(&self) -> usize {
        self.cutoff
            .dim()
            .expect("dimension validated at construction")
    }

    /// Flat index of an occupation tuple.
    pub fn index_of(&self, occ: &[usize]) -> usize {
        assert_eq!(occ.len(), self.cutoff.modes, "wrong mode count");
        let base = self.cutoff.n_max + 1;
        occ.iter().fold(0, |acc, &n| {
            assert!(n < base, "occupation {n} exceeds cutoff");
            acc * base + n
        })
    }

    /// Occupation tuple of a flat index.
    pub fn occ_of(&self, mut index: usize) -> Vec<usize> {
        let base = self.cutoff.n_max + 1;
        let mut occ = vec![0; self.cutoff.modes];
        for slot in occ.iter_mut().rev() {
            *slot = index % base;
            index /= base;
        }
        assert_eq!(index, 0, "index out of range");
        occ
    }

    /// Indices of all tuples with every occupation strictly below the
    /// cutoff — the block on which the commutation relations are exact.
    pub fn interior_indices(&self) -> Vec<usize> {
        (0..self.dim())
            .filter(|&s| self.occ_of(s).iter().all(|&n| n < self.cutoff.n_max))
            .collect()
    }
}

/// Bosonic ladder operators in the occupation-number basis.
///
/// cᵢ maps |…,nᵢ,…⟩ to √nᵢ·|…,nᵢ−1,…⟩; cᵢ* maps to √(nᵢ+1)·|…,nᵢ+1,…⟩
/// below the cutoff and annihilates the top state.  cᵢ* is exactly the
/// conjugate transpose of cᵢ.
#[derive(Debug, Clone)]
pub struct BosonLadder {
    pub basis: OccupationBasis,
    pub c: Vec<SparseOp>,
    pub c_dag: Vec<SparseOp>,
}

/// Single-mode lowering matrix with entries √n on the superdiagonal.
fn single_mode_lower(n_max: usize) -> SparseOp {
    let triplets = (1..=n_max)
        .map(|n| (n - 1, n, re((n as f64).sqrt())))
        .collect();
    SparseOp::from_triplets(n_max + 1, n_max + 1, triplets)
}

/// Builds the occupation-basis ladder with the default budget.
pub fn boson_ladder(cutoff: FockCutoff) -> Result<BosonLadder> {
    boson_ladder_with(cutoff, Budget::default())
}

pub fn boson_ladder_with(cutoff: FockCutoff, budget: Budget) -> Result<BosonLadder> {
    let dim = cutoff.dim()?;
    budget.admit(dim, "boson ladder operator")?;
    let lower = single_mode_lower(cutoff.n_max);
    let mut c = Vec::with_capacity(cutoff.modes);
    let mut c_dag = Vec::with_capacity(cutoff.modes);
    for i in 0..cutoff.modes {
        let mut op = SparseOp::identity(1);
        for slot in 0..cutoff.modes {
            let factor = if slot == i {
                lower.clone()
            } else {
                SparseOp::identity(cutoff.n_max + 1)
            };
            op = op.kron(&factor);
        }
        c_dag.push(op.adjoint());
        c.push(op);
    }
    Ok(BosonLadder {
        basis: OccupationBasis::new(cutoff),
        c,
        c_dag,
    })
}

/// Checks the commutation structure of a truncated ladder:
///
/// * `ccr_cc`, `ccr_cdag_cdag` — [cᵢ,cⱼ] and [cᵢ*,cⱼ*] vanish exactly
///   (judged at 1e-15 regardless of `tol`; the entries cancel exactly);
/// * `ccr_c_cdag_interior` — [cᵢ,cⱼ*] − δᵢⱼ·I restricted to tuples with
///   every occupation below the cutoff;
/// * `ccr_boundary_defect` — on states with nᵢ = n_max the diagonal of
///   [cᵢ,cᵢ*] equals −n_max;
/// * `ccr_trace` — every commutator of finite matrices is traceless.
pub fn verify_ccr(ops: &BosonLadder, tol: f64) -> VerificationReport {
    let mut report = VerificationReport::new(tol);
    let basis = &ops.basis;
    let dim = basis.dim();
    let n_max = basis.cutoff.n_max;
    let interior = basis.interior_indices();
    let id_interior = SparseOp::identity(interior.len());
    for i in 0..basis.cutoff.modes {
        for j in 0..basis.cutoff.modes {
            let cc = commutator(&ops.c[i], &ops.c[j]).expect("conformable by construction");
            report.push_with_tol("ccr_cc", i, j, cc.max_abs(), 1e-15);
            let dd = commutator(&ops.c_dag[i], &ops.c_dag[j]).expect("conformable by construction");
            report.push_with_tol("ccr_cdag_cdag", i, j, dd.max_abs(), 1e-15);

            let mixed = commutator(&ops.c[i], &ops.c_dag[j]).expect("conformable by construction");
            let restricted = mixed.restrict(&interior, &interior);
            let dev = if i == j {
                restricted
                    .max_abs_diff(&id_interior)
                    .expect("same shape by construction")
            } else {
                restricted.max_abs()
            };
            report.push("ccr_c_cdag_interior", i, j, dev);
            report.push("ccr_trace", i, j, mixed.trace().norm());
            if i == j {
                let defect = (0..dim)
                    .filter(|&s| basis.occ_of(s)[i] == n_max)
                    .map(|s| (mixed.get(s, s) - re(-(n_max as f64))).norm())
                    .fold(0.0, f64::max);
                report.push("ccr_boundary_defect", i, j, defect);
            }
        }
    }
    report
}

/// Multiplication and differentiation on the monomial basis {xⁿ}:
/// returns (X, D) with X·xⁿ = xⁿ⁺¹ (zero at the top, truncation) and
/// D·xⁿ = n·xⁿ⁻¹, so [D,X] = 1 below the cutoff.
pub fn position_derivative_rep(n_max: usize) -> Result<(SparseOp, SparseOp)> {
    if n_max == 0 {
        return Err(Error::InvalidArgument(
            "position_derivative_rep needs n_max ≥ 1".into(),
        ));
    }
    let x = SparseOp::from_triplets(
        n_max + 1,
        n_max + 1,
        (0..n_max).map(|n| (n + 1, n, re(1.0))).collect(),
    );
    let d = SparseOp::from_triplets(
        n_max + 1,
        n_max + 1,
        (1..=n_max).map(|n| (n - 1, n, re(n as f64))).collect(),
    );
    Ok((x, d))
}

/// Largest occupation the intertwiner supports: beyond 20 the √(n!)
/// scaling drifts out of comfortable double-precision territory.
pub const INTERTWINER_N_MAX: usize = 20;

/// The diagonal intertwiner S = diag(√0!, √1!, …, √(n_max!)) with
/// S⁻¹·c·S = D and S⁻¹·c*·S = X for the single-mode ladder.
pub fn intertwiner(n_max: usize) -> Result<SparseOp> {
    if n_max == 0 || n_max > INTERTWINER_N_MAX {
        return Err(Error::InvalidArgument(format!(
            "intertwiner needs 1 ≤ n_max ≤ {INTERTWINER_N_MAX}, got {n_max}"
        )));
    }
    let diag: Vec<Complex64> = (0..=n_max).map(|n| re(factorial(n).sqrt())).collect();
    Ok(SparseOp::from_diag(&diag))
}

/// Inverse of [`intertwiner`], built directly as diag(1/√(n!)).
pub fn intertwiner_inverse(n_max: usize) -> Result<SparseOp> {
    if n_max == 0 || n_max > INTERTWINER_N_MAX {
        return Err(Error::InvalidArgument(format!(
            "intertwiner needs 1 ≤ n_max ≤ {INTERTWINER_N_MAX}, got {n_max}"
        )));
    }
    let diag: Vec<Complex64> = (0..=n_max)
        .map(|n| re(1.0 / factorial(n).sqrt()))
        .collect();
    Ok(SparseOp::from_diag(&diag))
}

/// Multimode ladder on the monomial basis, cᵢ = (Xᵢ+Dᵢ)/√2 and
/// cᵢ° = (Xᵢ−Dᵢ)/√2.
///
/// The `c_star` operators are the algebraic conjugates, not the matrix
/// adjoints: the monomial basis is not orthonormal, so adjointness only
/// holds after intertwining into the occupation basis.
#[derive(Debug, Clone)]
pub struct DiffLadder {
    pub basis: OccupationBasis,
    pub c: Vec<SparseOp>,
    pub c_star: Vec<SparseOp>,
}

/// Builds the monomial-basis multimode ladder, default budget.
pub fn multimode_diff_ladder(cutoff: FockCutoff) -> Result<DiffLadder> {
    multimode_diff_ladder_with(cutoff, Budget::default())
}

pub fn multimode_diff_ladder_with(cutoff: FockCutoff, budget: Budget) -> Result<DiffLadder> {
    let dim = cutoff.dim()?;
    budget.admit(2 * dim, "monomial-basis ladder operator")?;
    let (x1, d1) = position_derivative_rep(cutoff.n_max)?;
    let sqrt_half = re(1.0 / 2.0f64.sqrt());
    let mut c = Vec::with_capacity(cutoff.modes);
    let mut c_star = Vec::with_capacity(cutoff.modes);
    for i in 0..cutoff.modes {
        let mut x = SparseOp::identity(1);
        let mut d = SparseOp::identity(1);
        for slot in 0..cutoff.modes {
            let id = SparseOp::identity(cutoff.n_max + 1);
            let (xf, df) = if slot == i {
                (x1.clone(), d1.clone())
            } else {
                (id.clone(), id)
            };
            x = x.kron(&xf);
            d = d.kron(&df);
        }
        c.push(x.add(&d)?.scale(sqrt_half));
        c_star.push(x.sub(&d)?.scale(sqrt_half));
    }
    Ok(DiffLadder {
        basis: OccupationBasis::new(cutoff),
        c,
        c_star,
    })
}

/// The number operator cᵢ*·cᵢ of one mode; diagonal with entries nᵢ.
pub fn number_operator(ops: &BosonLadder, mode: usize) -> Result<SparseOp> {
    if mode >= ops.basis.cutoff.modes {
        return Err(Error::InvalidArgument(format!(
            "mode {mode} out of range for {} modes",
            ops.basis.cutoff.modes
        )));
    }
    ops.c_dag[mode].matmul(&ops.c[mode])
}
