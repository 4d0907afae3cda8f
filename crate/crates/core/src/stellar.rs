//! Star representation of grade-k symmetric vectors.
//!
//! A grade-k vector, read in the monomial flavor, is a homogeneous
//! polynomial p(ξ,η) = a_k ξ^k + a_{k−1} ξ^{k−1}η + ⋯ + a_0 η^k.  Up to
//! an overall scale it factors into k linear forms (α_iξ − β_iη), so the
//! state is faithfully encoded by k points (α_i : β_i) on the projective
//! line — its "stars" — plus the scale.  Finite stars correspond to roots
//! ζ_i = β_i/α_i of the dehomogenized p(ζ) = p(ζ, 1); a vanishing ξ^k
//! head contributes stars at the pole (α = 0).
//!
//! Conventions, fixed so round trips are deterministic:
//! * coefficient storage is high-first a_k..a_0, i.e. `coeffs[m]` is the
//!   coefficient of ξ^{k−m}η^m (matching grade positions of `sym`);
//! * a star is stored as a unit vector (|α|²+|β|² = 1) whose first
//!   nonzero component is real positive;
//! * star multisets are sorted by (Re ζ, Im ζ) with poles last.
//!
//! Also here: the directional derivative v₁∂_ξ + v₂∂_η, which lowers the
//! grade by one and merges coincident stars, and the two-mode operators
//! D̃ = c₀c₁ (entries √(n₀n₁)) and X̃ (shift up both occupations), whose
//! restriction to the equal-occupation subspace {|n,n⟩} reproduces the
//! single-variable derivative and multiplication matrices.

use std::cmp::Ordering;

use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Budget, Error, Result};
use crate::fock::{FockCutoff, OccupationBasis};
use crate::roots::polynomial_roots;
use crate::sparse::SparseOp;
use crate::sym::{basis_convert, BasisFlavor, SymVector};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Relative magnitude below which leading coefficients are treated as
/// zero, each contributing one pole star.
pub const POLE_STRIP_REL_TOL: f64 = 1e-12;

/// A degree-k homogeneous polynomial in (ξ, η); `coeffs[m]` multiplies
/// ξ^{k−m}η^m.
#[derive(Debug, Clone, PartialEq)]
pub struct HomogeneousPoly {
    pub k: usize,
    pub coeffs: Vec<Complex64>,
}

impl HomogeneousPoly {
    pub fn new(k: usize, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != k + 1 {
            return Err(Error::ShapeMismatch(format!(
                "degree {k} needs {} coefficients, got {}",
                k + 1,
                coeffs.len()
            )));
        }
        Ok(HomogeneousPoly { k, coeffs })
    }

    /// Reads a symmetric vector as a polynomial via its monomial-flavor
    /// coefficients.
    pub fn from_sym(v: &SymVector) -> Self {
        let e = basis_convert(v, BasisFlavor::E);
        HomogeneousPoly {
            k: e.k,
            coeffs: e.coeffs,
        }
    }

    /// The same coefficients as a symmetric vector in the requested flavor.
    pub fn to_sym(&self, flavor: BasisFlavor) -> SymVector {
        let e = SymVector {
            k: self.k,
            flavor: BasisFlavor::E,
            coeffs: self.coeffs.clone(),
        };
        basis_convert(&e, flavor)
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

/// A point (α : β) on the projective line in canonical form: unit norm,
/// first nonzero component real positive.  The pole is (0, 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StellarPoint {
    pub alpha: Complex64,
    pub beta: Complex64,
}

impl StellarPoint {
    pub fn new(alpha: Complex64, beta: Complex64) -> Result<Self> {
        let h = alpha.norm().hypot(beta.norm());
        if h == 0.0 || !h.is_finite() {
            return Err(Error::InvalidArgument(
                "a star needs a finite nonzero direction".into(),
            ));
        }
        let (a, b) = (alpha / h, beta / h);
        let phase = if alpha == ZERO {
            b / b.norm()
        } else {
            a / a.norm()
        };
        Ok(StellarPoint {
            alpha: a * phase.conj(),
            beta: b * phase.conj(),
        })
    }

    /// The star of a finite root: the direction (1, ζ), normalized.
    pub fn from_root(zeta: Complex64) -> Self {
        let h = zeta.norm().hypot(1.0);
        StellarPoint {
            alpha: re(1.0 / h),
            beta: zeta / h,
        }
    }

    /// The star at infinity: (0, 1) exactly.
    pub fn pole() -> Self {
        StellarPoint {
            alpha: ZERO,
            beta: re(1.0),
        }
    }

    pub fn is_pole(&self) -> bool {
        self.alpha == ZERO
    }

    /// β/α for finite stars, None at the pole.
    pub fn zeta(&self) -> Option<Complex64> {
        if self.is_pole() {
            None
        } else {
            Some(self.beta / self.alpha)
        }
    }
}

impl Serialize for StellarPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("StellarPoint", 2)?;
        st.serialize_field("alpha", &[self.alpha.re, self.alpha.im])?;
        st.serialize_field("beta", &[self.beta.re, self.beta.im])?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for StellarPoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            alpha: [f64; 2],
            beta: [f64; 2],
        }
        let w = Wire::deserialize(d)?;
        let alpha = Complex64::new(w.alpha[0], w.alpha[1]);
        let beta = Complex64::new(w.beta[0], w.beta[1]);
        let h = alpha.norm().hypot(beta.norm());
        if h == 0.0 || !h.is_finite() {
            return Err(serde::de::Error::custom(
                "a star needs a finite nonzero direction",
            ));
        }
        // Stored as given, not re-canonicalized: the encoded polynomial
        // depends on the literal (α, β, scale) triple.
        Ok(StellarPoint { alpha, beta })
    }
}

/// Chordal distance between two canonical (unit-vector) stars:
/// |α₁β₂ − α₂β₁|, in [0, 1], zero iff the points coincide.
pub fn chordal_distance(p: &StellarPoint, q: &StellarPoint) -> f64 {
    (p.alpha * q.beta - q.alpha * p.beta).norm()
}

/// k stars plus the overall scale: the polynomial is
/// scale · Π_i (α_iξ − β_iη).
#[derive(Debug, Clone, PartialEq)]
pub struct StarConfiguration {
    pub k: usize,
    pub scale: Complex64,
    pub stars: Vec<StellarPoint>,
}

impl Serialize for StarConfiguration {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("StarConfiguration", 4)?;
        st.serialize_field("k", &self.k)?;
        st.serialize_field("scale_re", &self.scale.re)?;
        st.serialize_field("scale_im", &self.scale.im)?;
        st.serialize_field("stars", &self.stars)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for StarConfiguration {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            k: usize,
            scale_re: f64,
            scale_im: f64,
            stars: Vec<StellarPoint>,
        }
        let w = Wire::deserialize(d)?;
        if w.stars.len() != w.k {
            return Err(serde::de::Error::custom(format!(
                "expected {} stars, found {}",
                w.k,
                w.stars.len()
            )));
        }
        let scale = Complex64::new(w.scale_re, w.scale_im);
        if !scale.is_finite() {
            return Err(serde::de::Error::custom("scale must be finite"));
        }
        Ok(StarConfiguration {
            k: w.k,
            scale,
            stars: w.stars,
        })
    }
}

/// Sorts stars by (Re ζ, Im ζ) with poles last.
pub fn sort_stars_canonical(stars: &mut [StellarPoint]) {
    stars.sort_by(|a, b| match (a.zeta(), b.zeta()) {
        (None, None) => Ordering::Equal,
        (None, Some(_)) => Ordering::Greater,
        (Some(_), None) => Ordering::Less,
        (Some(za), Some(zb)) => za
            .re
            .partial_cmp(&zb.re)
            .unwrap_or(Ordering::Equal)
            .then(za.im.partial_cmp(&zb.im).unwrap_or(Ordering::Equal)),
    });
}

fn expand_product(stars: &[StellarPoint], scale: Complex64) -> HomogeneousPoly {
    let mut coeffs = vec![scale];
    for s in stars {
        let mut next = vec![ZERO; coeffs.len() + 1];
        for (m, &c) in coeffs.iter().enumerate() {
            next[m] += s.alpha * c;
            next[m + 1] -= s.beta * c;
        }
        coeffs = next;
    }
    HomogeneousPoly {
        k: stars.len(),
        coeffs,
    }
}

/// Factors a nonzero polynomial into its star configuration: the finite
/// roots of the dehomogenized polynomial plus one exact pole star per
/// stripped leading coefficient, sorted canonically, with the scale that
/// makes `poly_from_stars` reproduce the input.
pub fn stars_from_poly(p: &HomogeneousPoly) -> Result<StarConfiguration> {
    let max_abs = p.max_abs();
    if max_abs == 0.0 {
        return Err(Error::InvalidArgument(
            "cannot extract stars from the zero polynomial".into(),
        ));
    }
    let strip_tol = POLE_STRIP_REL_TOL * max_abs;
    let mut poles = 0;
    while poles < p.k && p.coeffs[poles].norm() <= strip_tol {
        poles += 1;
    }
    let mut stars = vec![StellarPoint::pole(); poles];
    if poles < p.k {
        // Low-first coefficients of the dehomogenized p(ζ) = Σ a_i ζ^i.
        let low_first: Vec<Complex64> = p.coeffs[poles..].iter().rev().copied().collect();
        stars.extend(polynomial_roots(&low_first)?.into_iter().map(StellarPoint::from_root));
    }
    sort_stars_canonical(&mut stars);
    let unscaled = expand_product(&stars, re(1.0));
    let anchor = (0..=p.k)
        .max_by(|&i, &j| {
            unscaled.coeffs[i]
                .norm()
                .partial_cmp(&unscaled.coeffs[j].norm())
                .unwrap_or(Ordering::Equal)
        })
        .unwrap();
    let scale = p.coeffs[anchor] / unscaled.coeffs[anchor];
    Ok(StarConfiguration {
        k: p.k,
        scale,
        stars,
    })
}

/// Expands scale · Π_i (α_iξ − β_iη) by coefficient convolution.  An
/// empty configuration gives the degree-0 constant.
pub fn poly_from_stars(cfg: &StarConfiguration) -> HomogeneousPoly {
    expand_product(&cfg.stars, cfg.scale)
}

/// v₁∂_ξ + v₂∂_η: exact coefficient-level derivative, degree k−1.
pub fn directional_derivative(
    p: &HomogeneousPoly,
    v: (Complex64, Complex64),
) -> Result<HomogeneousPoly> {
    if p.k == 0 {
        return Err(Error::InvalidArgument(
            "cannot lower the degree of a constant".into(),
        ));
    }
    if v.0 == ZERO && v.1 == ZERO {
        return Err(Error::InvalidArgument(
            "derivative direction must be nonzero".into(),
        ));
    }
    let k = p.k;
    let coeffs = (0..k)
        .map(|m| {
            v.0 * re((k - m) as f64) * p.coeffs[m] + v.1 * re((m + 1) as f64) * p.coeffs[m + 1]
        })
        .collect();
    Ok(HomogeneousPoly { k: k - 1, coeffs })
}

/// Worst-case chordal distance under a greedy nearest-star matching;
/// infinite when the multisets cannot be matched.
pub fn star_matching_deviation(a: &[StellarPoint], b: &[StellarPoint]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let mut used = vec![false; b.len()];
    let mut worst = 0.0f64;
    for p in a {
        let mut best = f64::INFINITY;
        let mut best_j = usize::MAX;
        for (j, q) in b.iter().enumerate() {
            if !used[j] {
                let d = chordal_distance(p, q);
                if d < best {
                    best = d;
                    best_j = j;
                }
            }
        }
        used[best_j] = true;
        worst = worst.max(best);
    }
    worst
}

/// Largest coefficient difference relative to the largest coefficient of
/// `reference`; infinite on degree mismatch.
pub fn poly_relative_deviation(p: &HomogeneousPoly, reference: &HomogeneousPoly) -> f64 {
    if p.k != reference.k {
        return f64::INFINITY;
    }
    let scale = reference.max_abs();
    if scale == 0.0 {
        return if p.max_abs() == 0.0 { 0.0 } else { f64::INFINITY };
    }
    p.coeffs
        .iter()
        .zip(&reference.coeffs)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
        / scale
}

/// The two-mode operators D̃ (lower both occupations, entries √(n₀n₁))
/// and X̃ (raise both occupations, entries 1) on the (n_max+1)² basis,
/// default budget.
pub fn tilde_ops(n_max: usize) -> Result<(SparseOp, SparseOp)> {
    tilde_ops_with(n_max, Budget::default())
}

pub fn tilde_ops_with(n_max: usize, budget: Budget) -> Result<(SparseOp, SparseOp)> {
    let cutoff = FockCutoff::new(2, n_max)?;
    let dim = cutoff.dim()?;
    budget.admit(2 * dim, "two-mode diagonal-shift operators")?;
    let basis = OccupationBasis::new(cutoff);
    let mut d_trip = Vec::new();
    let mut x_trip = Vec::new();
    for idx in 0..dim {
        let occ = basis.occ_of(idx);
        let (n0, n1) = (occ[0], occ[1]);
        if n0 >= 1 && n1 >= 1 {
            let val = re(((n0 * n1) as f64).sqrt());
            d_trip.push((basis.index_of(&[n0 - 1, n1 - 1]), idx, val));
        }
        if n0 < n_max && n1 < n_max {
            x_trip.push((basis.index_of(&[n0 + 1, n1 + 1]), idx, re(1.0)));
        }
    }
    Ok((
        SparseOp::from_triplets(dim, dim, d_trip),
        SparseOp::from_triplets(dim, dim, x_trip),
    ))
}

/// Indices of the equal-occupation states |n,n⟩, n = 0..n_max, in the
/// two-mode occupation basis.
pub fn diagonal_subspace_indices(n_max: usize) -> Vec<usize> {
    let basis = OccupationBasis::new(FockCutoff::new(2, n_max).expect("n_max ≥ 1"));
    (0..=n_max).map(|n| basis.index_of(&[n, n])).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::position_derivative_rep;
    use crate::random::{random_separated_roots, random_state, rng_from_seed};
    use crate::sparse::commutator;
    use proptest::prelude::*;

    fn poly(coeffs: &[Complex64]) -> HomogeneousPoly {
        HomogeneousPoly::new(coeffs.len() - 1, coeffs.to_vec()).unwrap()
    }

    #[test]
    fn difference_of_squares_has_real_stars() {
        // ξ² − η² = (ξ−η)(ξ+η): stars ζ = −1, +1 in sorted order.
        let cfg = stars_from_poly(&poly(&[re(1.0), ZERO, re(-1.0)])).unwrap();
        assert_eq!(cfg.stars.len(), 2);
        let want = [
            StellarPoint::from_root(re(-1.0)),
            StellarPoint::from_root(re(1.0)),
        ];
        for (got, want) in cfg.stars.iter().zip(&want) {
            assert!(chordal_distance(got, want) <= 1e-12);
        }
        // Unit-normalized factors each shed 1/√2, so the scale is 2.
        assert!((cfg.scale - re(2.0)).norm() <= 1e-12);
        let back = poly_from_stars(&cfg);
        assert!(poly_relative_deviation(&back, &poly(&[re(1.0), ZERO, re(-1.0)])) <= 1e-12);
    }

    #[test]
    fn vanishing_head_yields_exact_poles() {
        // η²: both stars at the pole, stored as (0, 1) exactly.
        let cfg = stars_from_poly(&poly(&[ZERO, ZERO, re(1.0)])).unwrap();
        assert_eq!(cfg.stars.len(), 2);
        for s in &cfg.stars {
            assert_eq!(s.alpha, ZERO);
            assert_eq!(s.beta, re(1.0));
        }
        assert!((cfg.scale - re(1.0)).norm() <= 1e-12);
        // ξη: one finite star at 0, one pole, pole sorted last.
        let cfg = stars_from_poly(&poly(&[ZERO, re(1.0), ZERO])).unwrap();
        assert!(!cfg.stars[0].is_pole());
        assert!(cfg.stars[0].zeta().unwrap().norm() <= 1e-12);
        assert!(cfg.stars[1].is_pole());
    }

    #[test]
    fn zero_polynomial_is_rejected() {
        assert!(matches!(
            stars_from_poly(&poly(&[ZERO, ZERO])),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn expansion_examples() {
        // Double star at ζ = 0 → ξ².
        let cfg = StarConfiguration {
            k: 2,
            scale: re(1.0),
            stars: vec![StellarPoint::from_root(ZERO); 2],
        };
        let p = poly_from_stars(&cfg);
        assert_eq!(p.coeffs, vec![re(1.0), ZERO, ZERO]);
        // A single pole star → −η.
        let cfg = StarConfiguration {
            k: 1,
            scale: re(1.0),
            stars: vec![StellarPoint::pole()],
        };
        let p = poly_from_stars(&cfg);
        assert_eq!(p.coeffs, vec![ZERO, re(-1.0)]);
    }

    #[test]
    fn round_trip_random_degree_six() {
        let mut rng = rng_from_seed(101);
        for _ in 0..20 {
            let roots = random_separated_roots(&mut rng, 6, 1e-3, 1.5);
            let stars: Vec<StellarPoint> =
                roots.iter().map(|&z| StellarPoint::from_root(z)).collect();
            let scale = crate::random::complex_gaussian(&mut rng);
            let p = expand_product(&stars, scale);
            let cfg = stars_from_poly(&p).unwrap();
            let back = poly_from_stars(&cfg);
            let dev = poly_relative_deviation(&back, &p);
            assert!(dev <= 1e-8, "round-trip coefficient deviation {dev:.3e}");
            let star_dev = star_matching_deviation(&cfg.stars, &stars);
            assert!(star_dev <= 1e-7, "star mismatch {star_dev:.3e}");
        }
    }

    #[test]
    fn rescaling_stars_changes_only_the_scale() {
        let mut rng = rng_from_seed(7);
        let roots = random_separated_roots(&mut rng, 5, 1e-2, 1.5);
        let stars: Vec<StellarPoint> = roots.iter().map(|&z| StellarPoint::from_root(z)).collect();
        let base = expand_product(&stars, re(1.0));
        // Non-canonical representatives of the same projective points.
        let rescaled: Vec<StellarPoint> = stars
            .iter()
            .map(|s| {
                let lambda = crate::random::complex_gaussian(&mut rng);
                StellarPoint {
                    alpha: s.alpha * lambda,
                    beta: s.beta * lambda,
                }
            })
            .collect();
        let scaled = expand_product(&rescaled, re(1.0));
        // Proportionality: scaled = λ·base with λ from the largest entry.
        let anchor = (0..=5)
            .max_by(|&i, &j| {
                base.coeffs[i]
                    .norm()
                    .partial_cmp(&base.coeffs[j].norm())
                    .unwrap()
            })
            .unwrap();
        let lambda = scaled.coeffs[anchor] / base.coeffs[anchor];
        let aligned = HomogeneousPoly {
            k: 5,
            coeffs: base.coeffs.iter().map(|&c| c * lambda).collect(),
        };
        assert!(poly_relative_deviation(&scaled, &aligned) <= 1e-12);
    }

    #[test]
    fn derivative_merges_coincident_pair() {
        // ∂_ξ (ξ − ζη)² = 2(ξ − ζη).
        let zeta = Complex64::new(0.3, -0.7);
        let p = poly(&[re(1.0), -2.0 * zeta, zeta * zeta]);
        let d = directional_derivative(&p, (re(1.0), ZERO)).unwrap();
        assert_eq!(d.coeffs, vec![re(2.0), -2.0 * zeta]);
        let cfg = stars_from_poly(&d).unwrap();
        assert!(chordal_distance(&cfg.stars[0], &StellarPoint::from_root(zeta)) <= 1e-12);
    }

    #[test]
    fn derivative_can_annihilate() {
        // ∂_η ξ³ = 0: an all-zero degree-2 polynomial.
        let d = directional_derivative(&poly(&[re(1.0), ZERO, ZERO, ZERO]), (ZERO, re(1.0)))
            .unwrap();
        assert_eq!(d.k, 2);
        assert!(d.max_abs() == 0.0);
        // The zero result then has no star decomposition.
        assert!(stars_from_poly(&d).is_err());
    }

    #[test]
    fn derivative_moves_stars() {
        // v = (1,1) on ξη → ξ + η: stars {0, ∞} ↦ {−1}.
        let d = directional_derivative(&poly(&[ZERO, re(1.0), ZERO]), (re(1.0), re(1.0))).unwrap();
        assert_eq!(d.coeffs, vec![re(1.0), re(1.0)]);
        let cfg = stars_from_poly(&d).unwrap();
        assert!(chordal_distance(&cfg.stars[0], &StellarPoint::from_root(re(-1.0))) <= 1e-12);
    }

    #[test]
    fn derivative_guards() {
        assert!(directional_derivative(&poly(&[re(1.0)]), (re(1.0), ZERO)).is_err());
        assert!(directional_derivative(&poly(&[re(1.0), ZERO]), (ZERO, ZERO)).is_err());
    }

    #[test]
    fn coincident_configuration_is_an_eigenconfiguration() {
        let mut rng = rng_from_seed(19);
        for k in [2usize, 3] {
            for _ in 0..10 {
                let dir = random_state(&mut rng, 2);
                let star = StellarPoint::new(dir[0], dir[1]).unwrap();
                let p = expand_product(&vec![star; k], re(1.0));
                let v = (re(1.0), re(0.37));
                // Skip directions that annihilate the power.
                let d = directional_derivative(&p, v).unwrap();
                if d.max_abs() <= 1e-9 * p.max_abs() {
                    continue;
                }
                let cfg = stars_from_poly(&d).unwrap();
                assert_eq!(cfg.stars.len(), k - 1);
                for s in &cfg.stars {
                    let dev = chordal_distance(s, &star);
                    assert!(dev <= 1e-7, "k={k}: derivative star moved by {dev:.3e}");
                }
            }
        }
    }

    #[test]
    fn sym_vector_round_trip() {
        let mut rng = rng_from_seed(3);
        let v = crate::random::random_sym_vector(&mut rng, 6, BasisFlavor::Tilde);
        let p = HomogeneousPoly::from_sym(&v);
        let back = p.to_sym(BasisFlavor::Tilde);
        let worst = v
            .coeffs
            .iter()
            .zip(&back.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        assert!(worst <= 1e-15);
    }

    #[test]
    fn tilde_ops_explicit_actions() {
        let n_max = 5;
        let (d, x) = tilde_ops(n_max).unwrap();
        let basis = OccupationBasis::new(FockCutoff::new(2, n_max).unwrap());
        // D̃|2,2⟩ = 2|1,1⟩ and D̃|0,5⟩ = 0.
        assert_eq!(
            d.get(basis.index_of(&[1, 1]), basis.index_of(&[2, 2])),
            re(2.0)
        );
        let col = basis.index_of(&[0, 5]);
        assert!((0..basis.dim()).all(|r| d.get(r, col) == ZERO));
        // X̃|1,3⟩ = |2,4⟩ with unit weight; X̃ kills anything at the rim.
        assert_eq!(
            x.get(basis.index_of(&[2, 4]), basis.index_of(&[1, 3])),
            re(1.0)
        );
        let rim = basis.index_of(&[3, 5]);
        assert!((0..basis.dim()).all(|r| x.get(r, rim) == ZERO));
    }

    #[test]
    fn tilde_ops_restrict_to_derivative_and_multiplication() {
        let n_max = 6;
        let (d_t, x_t) = tilde_ops(n_max).unwrap();
        let diag = diagonal_subspace_indices(n_max);
        let (x, d) = position_derivative_rep(n_max).unwrap();
        // On |n,n⟩ ↦ xⁿ the restrictions are exactly D and X.
        assert_eq!(
            d_t.restrict(&diag, &diag).max_abs_diff(&d).unwrap(),
            0.0
        );
        assert_eq!(
            x_t.restrict(&diag, &diag).max_abs_diff(&x).unwrap(),
            0.0
        );
        // Hence the restricted commutator is 1 on the interior.
        let comm = commutator(&d_t, &x_t).unwrap().restrict(&diag, &diag);
        for n in 0..n_max {
            assert!((comm.get(n, n) - re(1.0)).norm() <= 1e-12);
        }
        assert!((comm.get(n_max, n_max) - re(-(n_max as f64))).norm() <= 1e-12);
    }

    #[test]
    fn lower_raise_adjoint_pair_counts_double_occupation() {
        // [D̃, D̃†] |n,n⟩ = ((n+1)² − n²) |n,n⟩ = (2n+1) |n,n⟩ below the rim.
        let n_max = 6;
        let (d_t, _) = tilde_ops(n_max).unwrap();
        let comm = commutator(&d_t, &d_t.adjoint()).unwrap();
        let diag = diagonal_subspace_indices(n_max);
        for n in 0..n_max {
            let got = comm.get(diag[n], diag[n]);
            assert!(
                (got - re(2.0 * n as f64 + 1.0)).norm() <= 1e-12,
                "n={n}: got {got}"
            );
        }
    }

    #[test]
    fn tilde_ops_budget_guard() {
        assert!(matches!(
            tilde_ops_with(50, Budget::new(10)),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn star_configuration_serializes_to_schema() {
        let cfg = stars_from_poly(&poly(&[re(1.0), ZERO, re(-1.0)])).unwrap();
        let json = serde_json::to_value(&cfg).unwrap();
        assert_eq!(json["k"], 2);
        assert!(json["scale_re"].is_number());
        assert!(json["scale_im"].is_number());
        assert_eq!(json["stars"].as_array().unwrap().len(), 2);
        let star = &json["stars"][0];
        assert_eq!(star["alpha"].as_array().unwrap().len(), 2);
        assert_eq!(star["beta"].as_array().unwrap().len(), 2);
    }

    #[test]
    fn star_configuration_json_round_trips() {
        let cfg = stars_from_poly(&poly(&[
            Complex64::new(1.0, -0.5),
            ZERO,
            re(2.0),
            Complex64::new(0.0, 0.25),
        ]))
        .unwrap();
        let text = serde_json::to_string(&cfg).unwrap();
        let back: StarConfiguration = serde_json::from_str(&text).unwrap();
        assert_eq!(back, cfg);

        // Star count must match k.
        let bad = r#"{"k": 2, "scale_re": 1.0, "scale_im": 0.0,
                      "stars": [{"alpha": [1.0, 0.0], "beta": [0.0, 0.0]}]}"#;
        assert!(serde_json::from_str::<StarConfiguration>(bad).is_err());
        // A (0, 0) star direction is rejected.
        let bad = r#"{"k": 1, "scale_re": 1.0, "scale_im": 0.0,
                      "stars": [{"alpha": [0.0, 0.0], "beta": [0.0, 0.0]}]}"#;
        assert!(serde_json::from_str::<StarConfiguration>(bad).is_err());
    }

    proptest! {
        #[test]
        fn prop_derivative_is_linear(
            k in 1usize..8,
            seed in proptest::num::u64::ANY,
        ) {
            let mut rng = rng_from_seed(seed);
            let p = poly(&random_state(&mut rng, k + 1));
            let q = poly(&random_state(&mut rng, k + 1));
            let (a, b) = (
                crate::random::complex_gaussian(&mut rng),
                crate::random::complex_gaussian(&mut rng),
            );
            let v = (
                crate::random::complex_gaussian(&mut rng),
                crate::random::complex_gaussian(&mut rng),
            );
            let combined = HomogeneousPoly {
                k,
                coeffs: p.coeffs.iter().zip(&q.coeffs).map(|(&x, &y)| a * x + b * y).collect(),
            };
            let left = directional_derivative(&combined, v).unwrap();
            let dp = directional_derivative(&p, v).unwrap();
            let dq = directional_derivative(&q, v).unwrap();
            // Linear up to floating-point reassociation.
            let scale = left.max_abs().max(1.0);
            for m in 0..k {
                let right = a * dp.coeffs[m] + b * dq.coeffs[m];
                prop_assert!((left.coeffs[m] - right).norm() <= 1e-12 * scale);
            }
        }

        #[test]
        fn prop_degree_bookkeeping(
            k in 1usize..10,
            seed in proptest::num::u64::ANY,
        ) {
            let mut rng = rng_from_seed(seed);
            let p = poly(&random_state(&mut rng, k + 1));
            let d = directional_derivative(&p, (re(1.0), re(0.5))).unwrap();
            prop_assert_eq!(d.k, k - 1);
            prop_assert_eq!(d.coeffs.len(), k);
        }
    }
}
