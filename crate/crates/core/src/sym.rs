//! Symmetric subspaces of qubit tensor powers.
//!
//! The grade-k symmetric subspace Sy_k of the k-fold tensor power of the
//! qubit space is (k+1)-dimensional, spanned by the symmetrizations of
//! basis words with i zeros and j = k−i ones.  Two coordinate flavors are
//! used throughout:
//!
//! * the **tilde** basis ẽ_{i,j} — orthonormal within each grade; the
//!   symmetrized unit word scaled to norm one;
//! * the **e** basis e_{i,j} = √(i!·j!)·ẽ_{i,j} — the monomial-like
//!   flavor in which grade ladder maps act as plain differentiation and
//!   multiplication, at the price of a diag(i!·j!) Gram matrix.
//!
//! A vector is stored as k+1 amplitudes indexed by the count m of "1"
//! factors, i.e. position m ↔ ẽ_{k−m,m}.  In the computational basis of
//! the 2^k tensor power (factor 0 = rightmost slot, so bit p of a basis
//! index is factor p), the symmetrized word for position m is the
//! normalized sum over all basis states of popcount m — which is why the
//! symmetrizer has the closed form P[s,t] = 1/C(k, popcount) exactly when
//! popcount(s) = popcount(t).
//!
//! On top of the bases: the symmetrizer projector, the isometric
//! embedding Sy_k → (H₂)^⊗k, standard and 1/k!-weighted inner products,
//! the induced action of a 2×2 unitary on Sy_k (a (k+1)×(k+1) unitary),
//! and the two-mode ladder maps between adjacent grades.

use ndarray::Array2;
use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Budget, Error, Result};
use crate::linalg::unitary_deviation;
use crate::sparse::SparseOp;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// n! as f64, exact for n ≤ 18 and correctly rounded growth beyond;
/// panics past 170 where f64 overflows.
pub fn factorial(n: usize) -> f64 {
    assert!(n <= 170, "factorial({n}) overflows f64");
    let mut acc = 1.0f64;
    for k in 2..=n {
        acc *= k as f64;
    }
    acc
}

/// Binomial coefficient C(n, k) as f64.
pub fn binomial(n: usize, k: usize) -> f64 {
    assert!(k <= n, "binomial({n},{k}) with k > n");
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Dimension of the grade-k symmetric subspace of qubit tensor powers.
pub fn sym_dim(k: usize) -> usize {
    k + 1
}

/// Largest grade whose 2^k tensor power the symmetrizer and embedding
/// will touch.  Pure Sy_k operations (ladders, induced unitaries) have no
/// such cap since they never leave the (k+1)-dimensional space.
pub const TENSOR_GRADE_CAP: usize = 16;

/// Coordinate flavors on Sy_k.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisFlavor {
    /// ẽ_{i,j}: orthonormal within each grade.
    Tilde,
    /// e_{i,j} = √(i!·j!)·ẽ_{i,j}: ladder maps act with integer entries.
    E,
}

/// A grade-k symmetric vector: k+1 amplitudes, position m ↔ 1-count m.
#[derive(Debug, Clone, PartialEq)]
pub struct SymVector {
    pub k: usize,
    pub flavor: BasisFlavor,
    pub coeffs: Vec<Complex64>,
}

impl SymVector {
    pub fn new(k: usize, flavor: BasisFlavor, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != k + 1 {
            return Err(Error::ShapeMismatch(format!(
                "grade {k} needs {} coefficients, got {}",
                k + 1,
                coeffs.len()
            )));
        }
        Ok(SymVector { k, flavor, coeffs })
    }

    /// The unit basis vector ẽ_{i,j} (i + j = k) in tilde flavor.
    pub fn basis_tilde(i: usize, j: usize) -> Self {
        let k = i + j;
        let mut coeffs = vec![ZERO; k + 1];
        coeffs[j] = re(1.0);
        SymVector {
            k,
            flavor: BasisFlavor::Tilde,
            coeffs,
        }
    }
}

impl Serialize for SymVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SymVector", 4)?;
        st.serialize_field("k", &self.k)?;
        st.serialize_field("flavor", &self.flavor)?;
        st.serialize_field("re", &self.coeffs.iter().map(|c| c.re).collect::<Vec<_>>())?;
        st.serialize_field("im", &self.coeffs.iter().map(|c| c.im).collect::<Vec<_>>())?;
        st.end()
    }
}

/// Scaling between flavors at grade k: e_{k−m,m} = w(m)·ẽ_{k−m,m} with
/// w(m) = √((k−m)!·m!).
pub fn flavor_weight(k: usize, m: usize) -> f64 {
    (factorial(k - m) * factorial(m)).sqrt()
}

/// Re-expresses a vector in the requested flavor (identity if already
/// there).  Round trips are identities up to one rounding per entry.
pub fn basis_convert(v: &SymVector, to: BasisFlavor) -> SymVector {
    if v.flavor == to {
        return v.clone();
    }
    let coeffs = v
        .coeffs
        .iter()
        .enumerate()
        .map(|(m, &c)| {
            let w = flavor_weight(v.k, m);
            match to {
                // e-coefficients a_m relate by v = Σ a_m e = Σ a_m·w·ẽ.
                BasisFlavor::Tilde => c * w,
                BasisFlavor::E => c / w,
            }
        })
        .collect();
    SymVector {
        k: v.k,
        flavor: to,
        coeffs,
    }
}

/// Inner product weightings on graded vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InnerProductKind {
    /// Plain sum of componentwise products (ẽ orthonormal).
    Standard,
    /// Grade-k pairing scaled by 1/k!.
    Exp,
}

/// Sesquilinear inner product (conjugate-linear in the first argument),
/// computed in the orthonormal tilde coordinates whatever the stored
/// flavors are.
pub fn inner_product(a: &SymVector, b: &SymVector, kind: InnerProductKind) -> Result<Complex64> {
    if a.k != b.k {
        return Err(Error::ShapeMismatch(format!(
            "inner product between grades {} and {}",
            a.k, b.k
        )));
    }
    let at = basis_convert(a, BasisFlavor::Tilde);
    let bt = basis_convert(b, BasisFlavor::Tilde);
    let sum: Complex64 = at
        .coeffs
        .iter()
        .zip(&bt.coeffs)
        .map(|(x, y)| x.conj() * y)
        .sum();
    Ok(match kind {
        InnerProductKind::Standard => sum,
        InnerProductKind::Exp => sum / factorial(a.k),
    })
}

fn check_tensor_grade(k: usize, nnz: usize, budget: Budget, what: &str) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidArgument(format!("{what} needs grade k ≥ 1")));
    }
    if k > TENSOR_GRADE_CAP {
        return Err(Error::BudgetExceeded(format!(
            "{what} at grade {k} exceeds the tensor grade cap {TENSOR_GRADE_CAP}"
        )));
    }
    budget.admit(nnz, what)
}

/// Number of nonzeros of the grade-k symmetrizer: Σ_j C(k,j)² = C(2k,k).
fn symmetrizer_nnz(k: usize) -> usize {
    // Exact in u128 for every k ≤ TENSOR_GRADE_CAP.
    let mut acc: u128 = 0;
    for j in 0..=k {
        let b = binomial(k, j) as u128;
        acc += b * b;
    }
    acc as usize
}

/// The symmetrization projector on the 2^k tensor power, default budget.
pub fn symmetrizer(k: usize) -> Result<SparseOp> {
    symmetrizer_with(k, Budget::default())
}

/// The average of all k! tensor-factor permutations: an idempotent
/// Hermitian projector of rank k+1, with closed form
/// P[s,t] = 1/C(k, popcount(s)) iff popcount(s) = popcount(t).
pub fn symmetrizer_with(k: usize, budget: Budget) -> Result<SparseOp> {
    check_tensor_grade(k, symmetrizer_nnz(k), budget, "symmetrizer")?;
    let dim = 1usize << k;
    let mut classes: Vec<Vec<usize>> = vec![Vec::new(); k + 1];
    for s in 0..dim {
        classes[s.count_ones() as usize].push(s);
    }
    let mut triplets = Vec::with_capacity(symmetrizer_nnz(k));
    for (j, class) in classes.iter().enumerate() {
        let val = re(1.0 / binomial(k, j));
        for &s in class {
            for &t in class {
                triplets.push((s, t, val));
            }
        }
    }
    Ok(SparseOp::from_triplets(dim, dim, triplets))
}

/// Reference symmetrizer by explicit permutation averaging:
/// (1/k!)·Σ_σ σ.  Factorial cost — for cross-checks at small k only;
/// `symmetrizer` is the closed form.
pub fn symmetrizer_reference(k: usize) -> Result<SparseOp> {
    if k == 0 || k > 8 {
        return Err(Error::InvalidArgument(format!(
            "reference symmetrizer covers 1 ≤ k ≤ 8, got {k}"
        )));
    }
    fn perms(n: usize) -> Vec<Vec<usize>> {
        fn rec(pool: &mut Vec<usize>, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if pool.is_empty() {
                out.push(prefix.clone());
                return;
            }
            for i in 0..pool.len() {
                let x = pool.remove(i);
                prefix.push(x);
                rec(pool, prefix, out);
                prefix.pop();
                pool.insert(i, x);
            }
        }
        let mut out = Vec::new();
        rec(&mut (0..n).collect(), &mut Vec::new(), &mut out);
        out
    }
    let dim = 1usize << k;
    let scale = re(1.0 / factorial(k));
    let mut triplets = Vec::new();
    for p in perms(k) {
        // The permutation sends factor (bit) position b to p[b].
        for s in 0..dim {
            let mut t = 0usize;
            for (b, &target) in p.iter().enumerate() {
                if (s >> b) & 1 == 1 {
                    t |= 1 << target;
                }
            }
            triplets.push((t, s, scale));
        }
    }
    Ok(SparseOp::from_triplets(dim, dim, triplets))
}

/// The isometry Sy_k → (H₂)^⊗k, default budget.
pub fn embed_sym(k: usize) -> Result<SparseOp> {
    embed_sym_with(k, Budget::default())
}

/// Column m is the unit-normalized symmetrized word with m ones:
/// (1/√C(k,m))·Σ_{popcount(s)=m} |s⟩.  Columns are orthonormal, so
/// embed† ∘ embed = identity on Sy_k and embed ∘ embed† = symmetrizer.
pub fn embed_sym_with(k: usize, budget: Budget) -> Result<SparseOp> {
    check_tensor_grade(k, 1usize << k, budget, "symmetric embedding")?;
    let dim = 1usize << k;
    let mut triplets = Vec::with_capacity(dim);
    for s in 0..dim {
        let m = s.count_ones() as usize;
        triplets.push((s, m, re(1.0 / binomial(k, m).sqrt())));
    }
    Ok(SparseOp::from_triplets(dim, k + 1, triplets))
}

fn powers(z: Complex64, n: usize) -> Vec<Complex64> {
    let mut v = vec![re(1.0); n + 1];
    for i in 1..=n {
        v[i] = v[i - 1] * z;
    }
    v
}

/// The (k+1)×(k+1) unitary induced on Sy_k (tilde basis) by a 2×2 unitary.
///
/// Computed by substitution on the monomial flavor — each symmetrized
/// word transforms as the product of its factors' images — then rescaled
/// into tilde coordinates.  This never touches the 2^k tensor power, so
/// large grades are cheap; agreement with the tensor-power route
/// embed† ∘ U^⊗k ∘ embed is part of the verification suite.
pub fn su2_induced(u: &SparseOp, k: usize) -> Result<SparseOp> {
    if u.shape() != (2, 2) {
        return Err(Error::ShapeMismatch(format!(
            "su2_induced needs a 2×2 matrix, got {:?}",
            u.shape()
        )));
    }
    if k == 0 {
        return Err(Error::InvalidArgument("su2_induced needs grade k ≥ 1".into()));
    }
    let ud = u.to_dense();
    let dev = unitary_deviation(&ud);
    if !(dev <= 1e-12) {
        return Err(Error::InvalidArgument(format!(
            "su2_induced input is not unitary (deviation {dev:.3e})"
        )));
    }
    let (u00, u01, u10, u11) = (ud[(0, 0)], ud[(0, 1)], ud[(1, 0)], ud[(1, 1)]);
    let (p00, p01, p10, p11) = (
        powers(u00, k),
        powers(u01, k),
        powers(u10, k),
        powers(u11, k),
    );
    let weights: Vec<f64> = (0..=k).map(|m| flavor_weight(k, m)).collect();
    let mut dense = Array2::zeros((k + 1, k + 1));
    for m in 0..=k {
        // Monomial-flavor column m: expand (u00·ξ + u10·η)^(k−m)·(u01·ξ + u11·η)^m
        // over the η-degree r.
        let mut col = vec![ZERO; k + 1];
        for a in 0..=(k - m) {
            let left = re(binomial(k - m, a)) * p00[k - m - a] * p10[a];
            for b in 0..=m {
                let right = re(binomial(m, b)) * p01[m - b] * p11[b];
                col[a + b] += left * right;
            }
        }
        for r in 0..=k {
            dense[(r, m)] = col[r] * (weights[r] / weights[m]);
        }
    }
    Ok(SparseOp::from_dense(&dense))
}

/// The four ladder maps in tilde coordinates at grade k.
///
/// `lower0`/`lower1` annihilate one "0"/"1" factor (Sy_k → Sy_{k−1},
/// shape k×(k+1)); `raise0`/`raise1` create one (Sy_k → Sy_{k+1}, shape
/// (k+2)×(k+1)).  On ẽ_{n₀,n₁}: lower0 gives √n₀·ẽ_{n₀−1,n₁}, raise0
/// gives √(n₀+1)·ẽ_{n₀+1,n₁}, and symmetrically for the "1" count.
/// raise_i at grade k is exactly the adjoint of lower_i at grade k+1.
#[derive(Debug, Clone)]
pub struct SymLadder {
    pub k: usize,
    pub lower0: SparseOp,
    pub lower1: SparseOp,
    pub raise0: SparseOp,
    pub raise1: SparseOp,
}

/// Builds the tilde-basis ladder maps at grade k (k = 0 gives empty
/// lowering maps into the zero-dimensional grade below the scalars).
pub fn sym_ladder(k: usize) -> SymLadder {
    let lower0 = SparseOp::from_triplets(
        k,
        k + 1,
        (0..k)
            .map(|m| (m, m, re(((k - m) as f64).sqrt())))
            .collect(),
    );
    let lower1 = SparseOp::from_triplets(
        k,
        k + 1,
        (1..=k).map(|m| (m - 1, m, re((m as f64).sqrt()))).collect(),
    );
    let raise0 = SparseOp::from_triplets(
        k + 2,
        k + 1,
        (0..=k)
            .map(|m| (m, m, re(((k - m + 1) as f64).sqrt())))
            .collect(),
    );
    let raise1 = SparseOp::from_triplets(
        k + 2,
        k + 1,
        (0..=k)
            .map(|m| (m + 1, m, re((m as f64 + 1.0).sqrt())))
            .collect(),
    );
    SymLadder {
        k,
        lower0,
        lower1,
        raise0,
        raise1,
    }
}

/// Rescales an operator from tilde coordinates to the monomial (e)
/// flavor: M_e = W(k_out)⁻¹ · M · W(k_in), where W is the diagonal of
/// flavor weights.
pub fn operator_in_e_flavor(op: &SparseOp, k_in: usize, k_out: usize) -> SparseOp {
    assert_eq!(op.ncols(), k_in + 1, "operator does not act on grade k_in");
    assert_eq!(op.nrows(), k_out + 1, "operator does not map into grade k_out");
    let triplets = op
        .iter()
        .map(|(r, c, v)| {
            (
                r,
                c,
                v * re(flavor_weight(k_in, c) / flavor_weight(k_out, r)),
            )
        })
        .collect();
    SparseOp::from_triplets(op.nrows(), op.ncols(), triplets)
}

/// The ladder maps in the monomial flavor, where they act by plain
/// differentiation and multiplication on e_{n₀,n₁}: lower0 gives
/// n₀·e_{n₀−1,n₁} and raise0 gives e_{n₀+1,n₁} (entries exact integers
/// and ones).  Reference matrices for the basis-change check.
pub fn sym_ladder_e_reference(k: usize) -> SymLadder {
    let lower0 = SparseOp::from_triplets(
        k,
        k + 1,
        (0..k).map(|m| (m, m, re((k - m) as f64))).collect(),
    );
    let lower1 = SparseOp::from_triplets(
        k,
        k + 1,
        (1..=k).map(|m| (m - 1, m, re(m as f64))).collect(),
    );
    let raise0 = SparseOp::from_triplets(
        k + 2,
        k + 1,
        (0..=k).map(|m| (m, m, re(1.0))).collect(),
    );
    let raise1 = SparseOp::from_triplets(
        k + 2,
        k + 1,
        (0..=k).map(|m| (m + 1, m, re(1.0))).collect(),
    );
    SymLadder {
        k,
        lower0,
        lower1,
        raise0,
        raise1,
    }
}
