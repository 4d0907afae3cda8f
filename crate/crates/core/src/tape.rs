//! Variable-length qubit registers: the direct sum ⊕_k (H₂)^⊗k up to a
//! grade cap.
//!
//! A `GradedVector` holds one complex component per occupied grade k,
//! each of length 2^k (grade 0 is a scalar); absent grades are zero and
//! different grades are orthogonal by construction.  Appending a blank
//! cell maps every grade-k component to ψ ⊗ |0⟩ at grade k+1 — an
//! isometry whose output never overlaps a single-grade input.
//!
//! Cell / bit convention (shared with the ladder constructions): factor 0
//! is the rightmost tensor slot, so bit p of a basis index addresses
//! factor p and cell q of a grade-k word is bit k−1−q.  The blank cell is
//! appended at the rightmost slot: index s becomes s << 1.
//!
//! `symmetrize_tape` projects each grade onto its symmetric subspace and
//! returns the (k+1)-dimensional coordinates — an `AbacusVector` of
//! grade-wise `SymVector`s in the orthonormal flavor.  `apply_gate`
//! applies a unitary window at a cell position grade-wise, either
//! skipping grades too short for the window or treating them as errors.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Budget, Error, Result};
use crate::linalg::unitary_deviation;
use crate::sparse::SparseOp;
use crate::sym::{embed_sym_with, BasisFlavor, SymVector};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// A state with components at several qubit counts, truncated at `cap`.
#[derive(Debug, Clone, PartialEq)]
pub struct GradedVector {
    cap: usize,
    components: BTreeMap<usize, Vec<Complex64>>,
}

impl GradedVector {
    /// The zero vector with the given maximum grade.
    pub fn new(cap: usize) -> Self {
        GradedVector {
            cap,
            components: BTreeMap::new(),
        }
    }

    /// Builds from (grade, component) pairs, validating lengths.
    pub fn from_components<I>(cap: usize, parts: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, Vec<Complex64>)>,
    {
        let mut v = GradedVector::new(cap);
        for (k, comp) in parts {
            v.set_component(k, comp)?;
        }
        Ok(v)
    }

    /// The basis word for a cell string (cell 0 first); e.g. `[false,
    /// true]` is |01⟩ at grade 2.
    pub fn basis_word(cap: usize, cells: &[bool]) -> Result<Self> {
        let k = cells.len();
        if k > cap {
            return Err(Error::BudgetExceeded(format!(
                "word of {k} cells exceeds the grade cap {cap}"
            )));
        }
        let mut index = 0usize;
        for &cell in cells {
            index = (index << 1) | usize::from(cell);
        }
        let mut comp = vec![ZERO; 1usize << k];
        comp[index] = Complex64::new(1.0, 0.0);
        let mut v = GradedVector::new(cap);
        v.set_component(k, comp)?;
        Ok(v)
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn set_component(&mut self, k: usize, comp: Vec<Complex64>) -> Result<()> {
        if k > self.cap {
            return Err(Error::BudgetExceeded(format!(
                "grade {k} exceeds the grade cap {}",
                self.cap
            )));
        }
        if comp.len() != 1usize << k {
            return Err(Error::ShapeMismatch(format!(
                "grade {k} component must have length {}, got {}",
                1usize << k,
                comp.len()
            )));
        }
        self.components.insert(k, comp);
        Ok(())
    }

    pub fn component(&self, k: usize) -> Option<&[Complex64]> {
        self.components.get(&k).map(Vec::as_slice)
    }

    /// Occupied grades in increasing order.
    pub fn components(&self) -> impl Iterator<Item = (usize, &[Complex64])> {
        self.components.iter().map(|(&k, c)| (k, c.as_slice()))
    }

    pub fn top_grade(&self) -> Option<usize> {
        self.components.keys().next_back().copied()
    }

    pub fn norm(&self) -> f64 {
        self.components
            .values()
            .flatten()
            .map(|c| c.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

#[derive(Serialize, Deserialize)]
struct GradeWire {
    k: usize,
    re: Vec<f64>,
    im: Vec<f64>,
}

impl Serialize for GradedVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let grades: Vec<GradeWire> = self
            .components()
            .map(|(k, c)| GradeWire {
                k,
                re: c.iter().map(|z| z.re).collect(),
                im: c.iter().map(|z| z.im).collect(),
            })
            .collect();
        let mut st = s.serialize_struct("GradedVector", 2)?;
        st.serialize_field("K", &self.cap)?;
        st.serialize_field("grades", &grades)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for GradedVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            #[serde(rename = "K")]
            cap: usize,
            grades: Vec<GradeWire>,
        }
        let wire = Wire::deserialize(d)?;
        let mut v = GradedVector::new(wire.cap);
        for g in wire.grades {
            if g.re.len() != g.im.len() {
                return Err(serde::de::Error::custom(format!(
                    "grade {}: re and im arrays differ in length",
                    g.k
                )));
            }
            let comp = g
                .re
                .iter()
                .zip(&g.im)
                .map(|(&re, &im)| Complex64::new(re, im))
                .collect();
            v.set_component(g.k, comp)
                .map_err(|e| serde::de::Error::custom(e.to_string()))?;
        }
        Ok(v)
    }
}

/// Grade-wise symmetric coordinates: one `SymVector` (orthonormal
/// flavor) per occupied grade.
#[derive(Debug, Clone, PartialEq)]
pub struct AbacusVector {
    cap: usize,
    components: BTreeMap<usize, SymVector>,
}

impl AbacusVector {
    pub fn new(cap: usize) -> Self {
        AbacusVector {
            cap,
            components: BTreeMap::new(),
        }
    }

    pub fn set_component(&mut self, v: SymVector) -> Result<()> {
        if v.k > self.cap {
            return Err(Error::BudgetExceeded(format!(
                "grade {} exceeds the grade cap {}",
                v.k, self.cap
            )));
        }
        if v.flavor != BasisFlavor::Tilde {
            return Err(Error::InvalidArgument(
                "abacus components are stored in the orthonormal flavor".into(),
            ));
        }
        self.components.insert(v.k, v);
        Ok(())
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn component(&self, k: usize) -> Option<&SymVector> {
        self.components.get(&k)
    }

    pub fn components(&self) -> impl Iterator<Item = &SymVector> {
        self.components.values()
    }

    pub fn norm(&self) -> f64 {
        self.components
            .values()
            .flat_map(|v| &v.coeffs)
            .map(|c| c.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

impl Serialize for AbacusVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let grades: Vec<&SymVector> = self.components().collect();
        let mut st = s.serialize_struct("AbacusVector", 2)?;
        st.serialize_field("K", &self.cap)?;
        st.serialize_field("grades", &grades)?;
        st.end()
    }
}

/// Appends a blank cell at the rightmost slot: ψ_k ↦ ψ_k ⊗ |0⟩ at grade
/// k+1.  Errors when the top grade is already at the cap.
pub fn append_blank(psi: &GradedVector) -> Result<GradedVector> {
    if let Some(top) = psi.top_grade() {
        if top >= psi.cap() {
            return Err(Error::BudgetExceeded(format!(
                "appending to a grade-{top} component exceeds the grade cap {}",
                psi.cap()
            )));
        }
    }
    let mut out = GradedVector::new(psi.cap());
    for (k, comp) in psi.components() {
        let mut shifted = vec![ZERO; 1usize << (k + 1)];
        for (s, &amp) in comp.iter().enumerate() {
            shifted[s << 1] = amp;
        }
        out.set_component(k + 1, shifted)?;
    }
    Ok(out)
}

/// ⟨Ψ, Φ⟩ = Σ_k ⟨ψ_k, φ_k⟩, conjugate-linear in the first argument;
/// grades never cross-talk, so values at disjoint grade supports are
/// exactly zero.
pub fn graded_inner(psi: &GradedVector, phi: &GradedVector) -> Complex64 {
    let mut acc = ZERO;
    for (k, a) in psi.components() {
        if let Some(b) = phi.component(k) {
            acc += a.iter().zip(b).map(|(x, y)| x.conj() * y).sum::<Complex64>();
        }
    }
    acc
}

/// Projects each grade onto its symmetric subspace and returns the
/// orthonormal-flavor coordinates, default budget.
pub fn symmetrize_tape(psi: &GradedVector) -> Result<AbacusVector> {
    symmetrize_tape_with(psi, Budget::default())
}

pub fn symmetrize_tape_with(psi: &GradedVector, budget: Budget) -> Result<AbacusVector> {
    let mut out = AbacusVector::new(psi.cap());
    for (k, comp) in psi.components() {
        let coeffs = if k == 0 {
            comp.to_vec()
        } else {
            embed_sym_with(k, budget)?.adjoint().apply(comp)?
        };
        out.set_component(SymVector::new(k, BasisFlavor::Tilde, coeffs)?)?;
    }
    Ok(out)
}

/// Carries symmetric coordinates back into the graded tensor space,
/// default budget.
pub fn embed_abacus(a: &AbacusVector) -> Result<GradedVector> {
    embed_abacus_with(a, Budget::default())
}

pub fn embed_abacus_with(a: &AbacusVector, budget: Budget) -> Result<GradedVector> {
    let mut out = GradedVector::new(a.cap());
    for v in a.components() {
        let comp = if v.k == 0 {
            v.coeffs.clone()
        } else {
            embed_sym_with(v.k, budget)?.apply(&v.coeffs)?
        };
        out.set_component(v.k, comp)?;
    }
    Ok(out)
}

/// What to do with grades too short for a gate window.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GatePolicy {
    /// Leave short grades untouched (superpositions over lengths remain
    /// processable).
    SkipShortGrades,
    /// Error when any occupied grade cannot host the window.
    Strict,
}

/// Applies a unitary on r contiguous cells starting at `position`,
/// grade-wise.  Cell q of a grade-k word is bit k−1−q; the gate's own
/// cell order follows the same convention within its window.
pub fn apply_gate(
    psi: &GradedVector,
    gate: &SparseOp,
    position: usize,
    policy: GatePolicy,
) -> Result<GradedVector> {
    let (rows, cols) = gate.shape();
    if rows != cols || !rows.is_power_of_two() || rows < 2 {
        return Err(Error::ShapeMismatch(format!(
            "gate must be square with power-of-two dimension ≥ 2, got {rows}×{cols}"
        )));
    }
    let r = rows.trailing_zeros() as usize;
    let dev = unitary_deviation(&gate.to_dense());
    if !(dev <= 1e-12) {
        return Err(Error::InvalidArgument(format!(
            "gate is not unitary (deviation {dev:.3e})"
        )));
    }
    if position + r > psi.cap() {
        return Err(Error::InvalidArgument(format!(
            "window [{position}, {}) exceeds the grade cap {}",
            position + r,
            psi.cap()
        )));
    }
    let dense = gate.to_dense();
    let mut out = GradedVector::new(psi.cap());
    for (k, comp) in psi.components() {
        if position + r > k {
            match policy {
                GatePolicy::SkipShortGrades => {
                    out.set_component(k, comp.to_vec())?;
                    continue;
                }
                GatePolicy::Strict => {
                    return Err(Error::ShapeMismatch(format!(
                        "grade {k} cannot host a {r}-cell window at position {position}"
                    )));
                }
            }
        }
        let mut mask = 0usize;
        for c in 0..r {
            mask |= 1usize << (k - 1 - position - c);
        }
        let mut next = vec![ZERO; comp.len()];
        for (s, &amp) in comp.iter().enumerate() {
            if amp == ZERO {
                continue;
            }
            let mut w = 0usize;
            for c in 0..r {
                w |= ((s >> (k - 1 - position - c)) & 1) << (r - 1 - c);
            }
            let base = s & !mask;
            for w_out in 0..rows {
                let g = dense[(w_out, w)];
                if g == ZERO {
                    continue;
                }
                let mut target = base;
                for c in 0..r {
                    target |= ((w_out >> (r - 1 - c)) & 1) << (k - 1 - position - c);
                }
                next[target] += g * amp;
            }
        }
        out.set_component(k, next)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_state, rng_from_seed};

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn random_graded(seed: u64, cap: usize, grades: &[usize]) -> GradedVector {
        let mut rng = rng_from_seed(seed);
        let mut v = GradedVector::new(cap);
        for &k in grades {
            v.set_component(k, random_state(&mut rng, 1 << k)).unwrap();
        }
        v
    }

    #[test]
    fn component_shape_is_enforced() {
        let mut v = GradedVector::new(4);
        assert!(v.set_component(2, vec![ZERO; 4]).is_ok());
        assert!(v.set_component(2, vec![ZERO; 3]).is_err());
        assert!(v.set_component(5, vec![ZERO; 32]).is_err());
    }

    #[test]
    fn append_shifts_single_word() {
        // |0⟩ at grade 1 → |00⟩ at grade 2, norm preserved.
        let v = GradedVector::basis_word(4, &[false]).unwrap();
        let a = append_blank(&v).unwrap();
        assert!(v.component(1).is_some());
        assert_eq!(a.component(1), None);
        let c2 = a.component(2).unwrap();
        assert_eq!(c2[0], re(1.0));
        assert!((a.norm() - 1.0).abs() <= 1e-15);
        // |1⟩ → |10⟩ (the blank lands at the rightmost slot).
        let v = GradedVector::basis_word(4, &[true]).unwrap();
        let a = append_blank(&v).unwrap();
        assert_eq!(a.component(2).unwrap()[2], re(1.0));
    }

    #[test]
    fn append_moves_every_grade_up() {
        let v = random_graded(1, 6, &[1, 2]);
        let a = append_blank(&v).unwrap();
        assert_eq!(a.component(0), None);
        assert_eq!(a.component(1), None);
        assert!(a.component(2).is_some() && a.component(3).is_some());
        // Grade-k amplitudes reappear at even indices of grade k+1.
        let src = v.component(2).unwrap();
        let dst = a.component(3).unwrap();
        for (s, &amp) in src.iter().enumerate() {
            assert_eq!(dst[s << 1], amp);
            assert_eq!(dst[(s << 1) | 1], ZERO);
        }
    }

    #[test]
    fn append_is_isometric_and_respects_the_cap() {
        let v = random_graded(2, 8, &[0, 2, 5]);
        let w = random_graded(3, 8, &[1, 2, 5]);
        let (av, aw) = (append_blank(&v).unwrap(), append_blank(&w).unwrap());
        let before = graded_inner(&v, &w);
        let after = graded_inner(&av, &aw);
        assert!((before - after).norm() <= 1e-14);
        assert!((av.norm() - v.norm()).abs() <= 1e-14);
        let full = random_graded(4, 5, &[5]);
        assert!(matches!(append_blank(&full), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn appended_state_is_orthogonal_on_disjoint_grades() {
        // Single grade: support moves from {k} to {k+1}.
        let v = random_graded(5, 8, &[3]);
        assert_eq!(graded_inner(&v, &append_blank(&v).unwrap()), ZERO);
        // Non-consecutive grade support: {1, 3} shifts to {2, 4}.
        let v = random_graded(6, 8, &[1, 3]);
        assert_eq!(graded_inner(&v, &append_blank(&v).unwrap()), ZERO);
        // Consecutive grades overlap at the shared grade: the value is the
        // cross term ⟨ψ_2, ψ_1 ⊗ |0⟩⟩, not zero in general.
        let v = random_graded(7, 8, &[1, 2]);
        let a = append_blank(&v).unwrap();
        let manual: Complex64 = v
            .component(2)
            .unwrap()
            .iter()
            .zip(a.component(2).unwrap())
            .map(|(x, y)| x.conj() * y)
            .sum();
        assert_eq!(graded_inner(&v, &a), manual);
    }

    #[test]
    fn inner_product_examples() {
        let v = random_graded(8, 6, &[2]);
        let w = random_graded(9, 6, &[3]);
        assert_eq!(graded_inner(&v, &w), ZERO);
        let mixed = random_graded(10, 6, &[0, 2, 4]);
        let norm_sq: f64 = mixed
            .components()
            .map(|(_, c)| c.iter().map(|z| z.norm_sqr()).sum::<f64>())
            .sum();
        assert!((graded_inner(&mixed, &mixed).re - norm_sq).abs() <= 1e-14);
        assert!(graded_inner(&mixed, &mixed).im.abs() <= 1e-16);
        let scalar = GradedVector::from_components(3, [(0, vec![re(1.0)])]).unwrap();
        assert_eq!(graded_inner(&scalar, &scalar), re(1.0));
    }

    #[test]
    fn symmetrize_explicit_components() {
        // e₀⊗e₁ → coefficient 1/√2 on the mixed symmetric word.
        let v = GradedVector::basis_word(4, &[false, true]).unwrap();
        let a = symmetrize_tape(&v).unwrap();
        let comp = a.component(2).unwrap();
        assert!((comp.coeffs[1] - re(1.0 / 2.0f64.sqrt())).norm() <= 1e-15);
        // e₀^{⊗k} → coefficient 1 on the all-zeros word.
        let v = GradedVector::basis_word(6, &[false; 5]).unwrap();
        let a = symmetrize_tape(&v).unwrap();
        assert!((a.component(5).unwrap().coeffs[0] - re(1.0)).norm() <= 1e-15);
        // The antisymmetric combination is annihilated.
        let s = 1.0 / 2.0f64.sqrt();
        let v = GradedVector::from_components(
            4,
            [(2, vec![ZERO, re(s), re(-s), ZERO])],
        )
        .unwrap();
        let a = symmetrize_tape(&v).unwrap();
        assert!(a.component(2).unwrap().coeffs.iter().all(|c| c.norm() <= 1e-15));
    }

    #[test]
    fn symmetrize_is_idempotent_through_embedding() {
        let v = random_graded(11, 8, &[0, 1, 3, 6]);
        let a = symmetrize_tape(&v).unwrap();
        let back = embed_abacus(&a).unwrap();
        let again = symmetrize_tape(&back).unwrap();
        for (x, y) in a.components().zip(again.components()) {
            assert_eq!(x.k, y.k);
            let worst = x
                .coeffs
                .iter()
                .zip(&y.coeffs)
                .map(|(p, q)| (p - q).norm())
                .fold(0.0, f64::max);
            assert!(worst <= 1e-12);
        }
        // Norm never grows under projection.
        assert!(a.norm() <= v.norm() + 1e-14);
    }

    #[test]
    fn append_then_symmetrize_scales_like_zero_count() {
        // On the symmetric word with i zeros and j ones, appending a blank
        // and re-symmetrizing lands on ẽ_{i+1,j} with factor √((i+1)/(k+1)).
        for k in 1..=4 {
            for j in 0..=k {
                let i = k - j;
                let mut a = AbacusVector::new(8);
                a.set_component(SymVector::basis_tilde(i, j)).unwrap();
                let v = embed_abacus(&a).unwrap();
                let appended = append_blank(&v).unwrap();
                let out = symmetrize_tape(&appended).unwrap();
                let comp = out.component(k + 1).unwrap();
                let factor = ((i as f64 + 1.0) / (k as f64 + 1.0)).sqrt();
                for (m, c) in comp.coeffs.iter().enumerate() {
                    let want = if m == j { factor } else { 0.0 };
                    assert!(
                        (c - re(want)).norm() <= 1e-14,
                        "k={k} j={j} m={m}: got {c}, want {want}"
                    );
                }
            }
        }
    }

    #[test]
    fn gates_act_on_cells() {
        let sigma_x = SparseOp::from_triplets(2, 2, vec![(0, 1, re(1.0)), (1, 0, re(1.0))]);
        // σx at cell 0 on grade-1 |0⟩ → |1⟩.
        let v = GradedVector::basis_word(4, &[false]).unwrap();
        let out = apply_gate(&v, &sigma_x, 0, GatePolicy::SkipShortGrades).unwrap();
        assert_eq!(out.component(1).unwrap()[1], re(1.0));
        // Identity leaves a mixed state untouched.
        let v = random_graded(12, 6, &[1, 3, 4]);
        let out = apply_gate(&v, &SparseOp::identity(2), 1, GatePolicy::SkipShortGrades).unwrap();
        assert_eq!(out, v);
        // σx at cell 1 on |00⟩ flips the second cell: |01⟩ = index 1.
        let v = GradedVector::basis_word(4, &[false, false]).unwrap();
        let out = apply_gate(&v, &sigma_x, 1, GatePolicy::SkipShortGrades).unwrap();
        assert_eq!(out.component(2).unwrap()[1], re(1.0));
    }

    #[test]
    fn two_cell_gate_window() {
        // Controlled flip: cells (q, q+1), control on the first window cell.
        let cnot = SparseOp::from_triplets(
            4,
            4,
            vec![
                (0, 0, re(1.0)),
                (1, 1, re(1.0)),
                (3, 2, re(1.0)),
                (2, 3, re(1.0)),
            ],
        );
        // Grade 3, window at cells (1,2), state |010⟩: control cell 1 is
        // set, so cell 2 flips → |011⟩.
        let v = GradedVector::basis_word(4, &[false, true, false]).unwrap();
        let out = apply_gate(&v, &cnot, 1, GatePolicy::SkipShortGrades).unwrap();
        assert_eq!(out.component(3).unwrap()[0b011], re(1.0));
        // Control clear: |100⟩ is untouched.
        let v = GradedVector::basis_word(4, &[true, false, false]).unwrap();
        let out = apply_gate(&v, &cnot, 1, GatePolicy::SkipShortGrades).unwrap();
        assert_eq!(out.component(3).unwrap()[0b100], re(1.0));
    }

    #[test]
    fn gate_policies_and_validation() {
        let sigma_x = SparseOp::from_triplets(2, 2, vec![(0, 1, re(1.0)), (1, 0, re(1.0))]);
        let v = random_graded(13, 6, &[0, 1, 3]);
        // Skip policy: grades 0 and 1 cannot host a window at cell 1.
        let out = apply_gate(&v, &sigma_x, 1, GatePolicy::SkipShortGrades).unwrap();
        assert_eq!(out.component(0), v.component(0));
        assert_eq!(out.component(1), v.component(1));
        assert!((out.norm() - v.norm()).abs() <= 1e-14);
        // Strict policy refuses.
        assert!(apply_gate(&v, &sigma_x, 1, GatePolicy::Strict).is_err());
        // Non-unitary gates and out-of-cap windows are rejected.
        let bad = SparseOp::from_diag(&[re(2.0), re(1.0)]);
        assert!(apply_gate(&v, &bad, 0, GatePolicy::SkipShortGrades).is_err());
        assert!(apply_gate(&v, &sigma_x, 6, GatePolicy::SkipShortGrades).is_err());
    }

    #[test]
    fn gate_preserves_norm_across_grades() {
        let mut rng = rng_from_seed(14);
        let u = crate::random::random_unitary_2x2(&mut rng);
        let v = random_graded(15, 6, &[1, 2, 4]);
        let out = apply_gate(&v, &u, 0, GatePolicy::SkipShortGrades).unwrap();
        assert!((out.norm() - v.norm()).abs() <= 1e-14);
        for (k, comp) in v.components() {
            let before: f64 = comp.iter().map(|c| c.norm_sqr()).sum();
            let after: f64 = out
                .component(k)
                .unwrap()
                .iter()
                .map(|c| c.norm_sqr())
                .sum();
            assert!((before - after).abs() <= 1e-14, "grade {k}");
        }
    }

    #[test]
    fn json_round_trip_matches_schema() {
        let v = random_graded(16, 5, &[0, 2]);
        let json = serde_json::to_value(&v).unwrap();
        assert_eq!(json["K"], 5);
        let grades = json["grades"].as_array().unwrap();
        assert_eq!(grades.len(), 2);
        assert_eq!(grades[0]["k"], 0);
        assert_eq!(grades[1]["re"].as_array().unwrap().len(), 4);
        let back: GradedVector = serde_json::from_value(json).unwrap();
        assert_eq!(back, v);
        // Abacus dumps reuse the graded layout with per-grade flavor tags.
        let a = symmetrize_tape(&v).unwrap();
        let json = serde_json::to_value(&a).unwrap();
        assert_eq!(json["grades"][1]["flavor"], "tilde");
        assert_eq!(json["grades"][1]["re"].as_array().unwrap().len(), 3);
    }

    #[test]
    fn rejected_graded_json() {
        let bad = serde_json::json!({"K": 4, "grades": [{"k": 2, "re": [0.0], "im": [0.0]}]});
        assert!(serde_json::from_value::<GradedVector>(bad).is_err());
        let bad = serde_json::json!({"K": 4, "grades": [{"k": 1, "re": [0.0, 1.0], "im": [0.0]}]});
        assert!(serde_json::from_value::<GradedVector>(bad).is_err());
    }
}
