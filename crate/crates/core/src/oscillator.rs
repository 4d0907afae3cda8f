//! Two-mode oscillator checks: degeneracy structure and the block
//! decomposition of a truncated two-mode space into grade spaces.
//!
//! The Hamiltonian is built algebraically as ħω(c₀*c₀ + c₁*c₁ + 1) on
//! the two-mode occupation basis, so it is diagonal by construction with
//! entries (n₀+n₁+1)ħω.  For total quanta n ≤ n_max the energy-(n+1)ħω
//! eigenspace is spanned by {|k, n−k⟩} and carries an exact copy of the
//! (n+1)-dimensional grade space: mapping |n₀,n₁⟩ to the orthonormal
//! grade word with n₀ zeros and n₁ ones matches the two-mode ladder with
//! the grade ladder entrywise.  Levels above n_max are truncation
//! artifacts (their multiplicity shrinks) and are flagged as such.

use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Budget, Error, Result};
use crate::fock::{boson_ladder_with, BosonLadder, FockCutoff};
use crate::report::VerificationReport;
use crate::sparse::SparseOp;
use crate::sym::sym_ladder;

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Physical parameters of the truncated two-mode oscillator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorSpec {
    pub omega: f64,
    pub hbar: f64,
    pub n_max: usize,
}

impl OscillatorSpec {
    pub fn new(omega: f64, hbar: f64, n_max: usize) -> Result<Self> {
        if !(omega > 0.0) || !(hbar > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "omega and hbar must be positive, got {omega} and {hbar}"
            )));
        }
        if n_max < 1 {
            return Err(Error::InvalidArgument("n_max must be at least 1".into()));
        }
        Ok(OscillatorSpec {
            omega,
            hbar,
            n_max,
        })
    }

    /// Defaults ω = ħ = 1.
    pub fn with_cutoff(n_max: usize) -> Result<Self> {
        OscillatorSpec::new(1.0, 1.0, n_max)
    }

    pub fn cutoff(&self) -> FockCutoff {
        FockCutoff::new(2, self.n_max).expect("validated at construction")
    }

    /// E = (n+1)ħω for total quanta n.
    pub fn energy(&self, n: usize) -> f64 {
        (n as f64 + 1.0) * self.hbar * self.omega
    }
}

/// ħω(c₀*c₀ + c₁*c₁ + 1): diagonal with entries (n₀+n₁+1)ħω.
pub fn hamiltonian_2d(spec: &OscillatorSpec) -> Result<SparseOp> {
    hamiltonian_2d_with(spec, Budget::default())
}

pub fn hamiltonian_2d_with(spec: &OscillatorSpec, budget: Budget) -> Result<SparseOp> {
    let ops = boson_ladder_with(spec.cutoff(), budget)?;
    let dim = ops.basis.dim();
    let mut h = SparseOp::identity(dim);
    for i in 0..2 {
        let n_i = ops.c_dag[i].matmul(&ops.c[i])?;
        h = h.add(&n_i)?;
    }
    Ok(h.scale(re(spec.hbar * spec.omega)))
}

/// One energy level of the truncated spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyLevel {
    /// Total quanta n (energy (n+1)ħω).
    pub n: usize,
    pub energy: f64,
    pub multiplicity: usize,
    /// True when the cutoff has distorted this level's multiplicity
    /// (n > n_max; an untruncated system would have n+1).
    pub truncated: bool,
}

impl Serialize for EnergyLevel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("EnergyLevel", 4)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("E", &self.energy)?;
        st.serialize_field("multiplicity", &self.multiplicity)?;
        st.serialize_field("truncation_flag", &self.truncated)?;
        st.end()
    }
}

/// Exact multiplicity count per total-quanta level, 0 ≤ n ≤ 2·n_max.
/// Untruncated levels (n ≤ n_max) have multiplicity n+1; beyond the
/// cutoff the count drops to 2·n_max − n + 1 and the level is flagged.
pub fn degeneracy_table(spec: &OscillatorSpec) -> Vec<EnergyLevel> {
    let n_max = spec.n_max;
    (0..=2 * n_max)
        .map(|n| {
            let multiplicity = if n <= n_max { n + 1 } else { 2 * n_max - n + 1 };
            EnergyLevel {
                n,
                energy: spec.energy(n),
                multiplicity,
                truncated: n > n_max,
            }
        })
        .collect()
}

/// Counts each diagonal Hamiltonian entry into (level, multiplicity)
/// pairs — the spectral cross-check for `degeneracy_table`.
pub fn spectrum_multiplicities(spec: &OscillatorSpec) -> Result<Vec<(usize, usize)>> {
    let h = hamiltonian_2d(spec)?;
    let scale = spec.hbar * spec.omega;
    let mut counts = vec![0usize; 2 * spec.n_max + 1];
    for i in 0..h.nrows() {
        let e = h.get(i, i).re / scale;
        let n = (e - 1.0).round() as usize;
        let defect = (e - (n as f64 + 1.0)).abs();
        if defect > 1e-12 {
            return Err(Error::InvalidArgument(format!(
                "diagonal entry {e} is not an integer level (defect {defect:.3e})"
            )));
        }
        counts[n] += 1;
    }
    Ok(counts.into_iter().enumerate().collect())
}

/// Basis indices of the total-quanta-n eigenspace, ordered as
/// |n, 0⟩, |n−1, 1⟩, …, |0, n⟩ (mode-1 count increasing), matching the
/// grade-space position convention.
pub fn level_indices(spec: &OscillatorSpec, n: usize) -> Result<Vec<usize>> {
    if n > spec.n_max {
        return Err(Error::InvalidArgument(format!(
            "level {n} exceeds the cutoff {}",
            spec.n_max
        )));
    }
    let basis = crate::fock::OccupationBasis::new(spec.cutoff());
    Ok((0..=n).map(|m| basis.index_of(&[n - m, m])).collect())
}

/// Verifies that the level-n block of the two-mode ladder coincides with
/// the grade-n ladder maps entrywise: lowering compared at every n ≤
/// n_max, raising only below the cutoff (raising out of level n_max
/// leaves the truncated space).
pub fn block_isomorphism_check(spec: &OscillatorSpec, n: usize, tol: f64) -> Result<VerificationReport> {
    if n > spec.n_max {
        return Err(Error::InvalidArgument(format!(
            "level {n} exceeds the cutoff {}",
            spec.n_max
        )));
    }
    let ops: BosonLadder = boson_ladder_with(spec.cutoff(), Budget::default())?;
    let grade = sym_ladder(n);
    let mut report = VerificationReport::new(tol);
    let here = level_indices(spec, n)?;
    if n >= 1 {
        let below = level_indices(spec, n - 1)?;
        for (i, (c, want)) in [(&ops.c[0], &grade.lower0), (&ops.c[1], &grade.lower1)]
            .into_iter()
            .enumerate()
        {
            let block = c.restrict(&below, &here);
            report.push("block_lowering", i, n, block.max_abs_diff(want)?);
        }
    }
    if n < spec.n_max {
        let above = level_indices(spec, n + 1)?;
        for (i, (c_dag, want)) in [(&ops.c_dag[0], &grade.raise0), (&ops.c_dag[1], &grade.raise1)]
            .into_iter()
            .enumerate()
        {
            let block = c_dag.restrict(&above, &here);
            report.push("block_raising", i, n, block.max_abs_diff(want)?);
        }
    }
    Ok(report)
}

/// Which sign the time-evolution phases carry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseSign {
    /// exp(+i(n+1)ħωt) — the convention used across this crate's
    /// evolution checks.
    Plus,
    /// exp(−iEt/ħ), the usual Schrödinger sign.
    Minus,
}

/// Diagonal phase evolution for time t: amplitudes of |n₀,n₁⟩ pick up
/// exp(±i(n₀+n₁+1)ωt) — ħ cancels between E and E/ħ.
pub fn time_evolution(spec: &OscillatorSpec, t: f64, sign: PhaseSign) -> Result<SparseOp> {
    let basis = crate::fock::OccupationBasis::new(spec.cutoff());
    let s = match sign {
        PhaseSign::Plus => 1.0,
        PhaseSign::Minus => -1.0,
    };
    let phases: Vec<Complex64> = (0..basis.dim())
        .map(|idx| {
            let occ = basis.occ_of(idx);
            let n = occ[0] + occ[1];
            Complex64::from_polar(1.0, s * (n as f64 + 1.0) * spec.omega * t)
        })
        .collect();
    Ok(SparseOp::from_diag(&phases))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::OccupationBasis;
    use crate::linalg::unitary_deviation;

    #[test]
    fn hamiltonian_is_diagonal_with_level_entries() {
        let spec = OscillatorSpec::with_cutoff(2).unwrap();
        let h = hamiltonian_2d(&spec).unwrap();
        let basis = OccupationBasis::new(spec.cutoff());
        // H|1,1⟩ = 3ħω|1,1⟩ and H|0,0⟩ = ħω|0,0⟩.
        let idx = basis.index_of(&[1, 1]);
        assert!((h.get(idx, idx) - re(3.0)).norm() <= 1e-14);
        let idx = basis.index_of(&[0, 0]);
        assert!((h.get(idx, idx) - re(1.0)).norm() <= 1e-14);
        // Diagonal and Hermitian.
        for (r, c, _) in h.iter() {
            assert_eq!(r, c);
        }
        assert!(h.adjoint().max_abs_diff(&h).unwrap() <= 1e-14);
    }

    #[test]
    fn omega_scales_linearly() {
        let base = hamiltonian_2d(&OscillatorSpec::new(1.0, 1.0, 3).unwrap()).unwrap();
        let doubled = hamiltonian_2d(&OscillatorSpec::new(2.0, 1.0, 3).unwrap()).unwrap();
        assert!(doubled.max_abs_diff(&base.scale(re(2.0))).unwrap() <= 1e-12);
    }

    #[test]
    fn degeneracy_counts_are_exact() {
        let spec = OscillatorSpec::with_cutoff(10).unwrap();
        let table = degeneracy_table(&spec);
        for level in &table[..=10] {
            assert_eq!(level.multiplicity, level.n + 1);
            assert!(!level.truncated);
        }
        for level in &table[11..] {
            assert_eq!(level.multiplicity, 2 * 10 - level.n + 1);
            assert!(level.truncated);
        }
        // The table matches the actual diagonal entry counts.
        let counted = spectrum_multiplicities(&spec).unwrap();
        for (level, (n, mult)) in table.iter().zip(counted) {
            assert_eq!(level.n, n);
            assert_eq!(level.multiplicity, mult);
        }
        // Σ multiplicities = total dimension.
        let total: usize = table.iter().map(|l| l.multiplicity).sum();
        assert_eq!(total, 11 * 11);
    }

    #[test]
    fn invalid_specs_are_rejected() {
        assert!(OscillatorSpec::new(0.0, 1.0, 3).is_err());
        assert!(OscillatorSpec::new(1.0, -1.0, 3).is_err());
        assert!(OscillatorSpec::new(1.0, 1.0, 0).is_err());
    }

    #[test]
    fn level_indices_follow_grade_positions() {
        let spec = OscillatorSpec::with_cutoff(4).unwrap();
        let basis = OccupationBasis::new(spec.cutoff());
        let idx = level_indices(&spec, 2).unwrap();
        assert_eq!(idx.len(), 3);
        assert_eq!(idx[0], basis.index_of(&[2, 0]));
        assert_eq!(idx[2], basis.index_of(&[0, 2]));
        assert!(level_indices(&spec, 5).is_err());
    }

    #[test]
    fn blocks_match_grade_ladders() {
        let spec = OscillatorSpec::with_cutoff(8).unwrap();
        for n in 0..=8 {
            let report = block_isomorphism_check(&spec, n, 1e-12).unwrap();
            assert!(report.pass, "level {n}: {:#?}", report.checks);
        }
        assert!(block_isomorphism_check(&spec, 9, 1e-12).is_err());
        // n=1 block lowering is literally sym_ladder(1)'s lowering.
        let report = block_isomorphism_check(&spec, 1, 1e-12).unwrap();
        assert!(report.worst() <= 1e-12);
    }

    #[test]
    fn evolution_is_unitary_with_level_phases() {
        let spec = OscillatorSpec::new(0.7, 1.0, 3).unwrap();
        let t = 1.3;
        let u = time_evolution(&spec, t, PhaseSign::Plus).unwrap();
        assert!(unitary_deviation(&u.to_dense()) <= 1e-14);
        let basis = OccupationBasis::new(spec.cutoff());
        let idx = basis.index_of(&[2, 1]);
        let want = Complex64::from_polar(1.0, 4.0 * 0.7 * t);
        assert!((u.get(idx, idx) - want).norm() <= 1e-14);
        // The two signs are adjoints of each other.
        let v = time_evolution(&spec, t, PhaseSign::Minus).unwrap();
        assert!(u.adjoint().max_abs_diff(&v).unwrap() <= 1e-14);
    }
}
