//! Dense complex helpers: rank by row reduction, unitarity deviation,
//! balancing, and eigenvalues of upper-Hessenberg matrices via shifted QR.
//!
//! Deliberately small. The only dense eigenproblem in this crate is the
//! companion matrix of a polynomial, which is upper Hessenberg by
//! construction, so no general reduction step (Householder) is carried.
//! Matrices here are tiny (dimension ≤ a few hundred for rank checks,
//! ≤ ~20 for eigenvalues), so clarity wins over blocking tricks.

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Numerical rank by Gaussian elimination with partial pivoting.
///
/// A pivot counts when its magnitude exceeds `rel_tol` times the largest
/// entry magnitude of the input.
pub fn rank(mat: &Array2<Complex64>, rel_tol: f64) -> usize {
    let mut a = mat.clone();
    let (m, n) = a.dim();
    let scale = a.iter().map(|v| v.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return 0;
    }
    let thresh = rel_tol * scale;
    let mut rank = 0;
    let mut row = 0;
    for col in 0..n {
        if row >= m {
            break;
        }
        let (pr, pv) = (row..m)
            .map(|r| (r, a[(r, col)].norm()))
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .expect("row range nonempty");
        if pv <= thresh {
            continue;
        }
        if pr != row {
            for j in 0..n {
                let tmp = a[(row, j)];
                a[(row, j)] = a[(pr, j)];
                a[(pr, j)] = tmp;
            }
        }
        let pivot = a[(row, col)];
        for r in (row + 1)..m {
            let f = a[(r, col)] / pivot;
            if f == ZERO {
                continue;
            }
            for j in col..n {
                let v = a[(row, j)] * f;
                a[(r, j)] -= v;
            }
        }
        rank += 1;
        row += 1;
    }
    rank
}

/// Largest entrywise deviation of `U·U†` from the identity.
///
/// Returns infinity for non-square input.
pub fn unitary_deviation(u: &Array2<Complex64>) -> f64 {
    let (m, n) = u.dim();
    if m != n {
        return f64::INFINITY;
    }
    let uh = u.mapv(|v| v.conj());
    let prod = u.dot(&uh.t());
    let mut worst = 0.0f64;
    for r in 0..n {
        for c in 0..n {
            let expect = if r == c { 1.0 } else { 0.0 };
            worst = worst.max((prod[(r, c)] - Complex64::new(expect, 0.0)).norm());
        }
    }
    worst
}

/// Parlett–Reinsch balancing: a diagonal similarity with powers of two that
/// equalizes row and column norms. Preserves eigenvalues exactly (powers of
/// two) and the Hessenberg zero pattern.
pub fn balance(mat: &Array2<Complex64>) -> Array2<Complex64> {
    let mut a = mat.clone();
    let n = a.nrows();
    let radix = 2.0f64;
    let mut done = false;
    while !done {
        done = true;
        for i in 0..n {
            let mut r: f64 = (0..n).filter(|&j| j != i).map(|j| a[(i, j)].norm()).sum();
            let mut c: f64 = (0..n).filter(|&j| j != i).map(|j| a[(j, i)].norm()).sum();
            if r == 0.0 || c == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            while c < r / radix {
                c *= radix;
                r /= radix;
                f *= radix;
            }
            while c >= r * radix {
                c /= radix;
                r *= radix;
                f /= radix;
            }
            if c + r < 0.95 * s {
                done = false;
                for j in 0..n {
                    a[(i, j)] /= f;
                }
                for j in 0..n {
                    a[(j, i)] *= f;
                }
            }
        }
    }
    a
}

/// Complex Givens rotation: returns (c, s, r) with c real in [0,1],
/// c² + |s|² = 1, and [c s; -s̄ c]·[f; g] = [r; 0].
fn givens(f: Complex64, g: Complex64) -> (f64, Complex64, Complex64) {
    if g == ZERO {
        return (1.0, ZERO, f);
    }
    if f == ZERO {
        let ga = g.norm();
        return (0.0, g.conj() / ga, Complex64::new(ga, 0.0));
    }
    let fa = f.norm();
    let d = fa.hypot(g.norm());
    let phase = f / fa;
    (fa / d, phase * g.conj() / d, phase * d)
}

/// Eigenvalues of the 2×2 matrix [[a, b], [c, d]], Vieta-stabilized.
fn eig2(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> (Complex64, Complex64) {
    let t = (a + d) / 2.0;
    let det = a * d - b * c;
    let q = ((a - d) / 2.0 * ((a - d) / 2.0) + b * c).sqrt();
    // Pick the sign that avoids cancellation in t ± q.
    let l1 = if (t.conj() * q).re >= 0.0 { t + q } else { t - q };
    let l2 = if l1 == ZERO { t } else { det / l1 };
    (l1, l2)
}

/// One explicit shifted QR sweep on the active block `lo..hi`.
fn qr_step(a: &mut Array2<Complex64>, lo: usize, hi: usize, mu: Complex64) {
    for i in lo..hi {
        a[(i, i)] -= mu;
    }
    let mut rots = Vec::with_capacity(hi - lo - 1);
    for i in lo..hi - 1 {
        let (c, s, r) = givens(a[(i, i)], a[(i + 1, i)]);
        rots.push((c, s));
        a[(i, i)] = r;
        a[(i + 1, i)] = ZERO;
        for j in (i + 1)..hi {
            let x = a[(i, j)];
            let y = a[(i + 1, j)];
            a[(i, j)] = c * x + s * y;
            a[(i + 1, j)] = -s.conj() * x + c * y;
        }
    }
    for (idx, &(c, s)) in rots.iter().enumerate() {
        let i = lo + idx;
        for r in lo..(i + 2).min(hi) {
            let x = a[(r, i)];
            let y = a[(r, i + 1)];
            a[(r, i)] = c * x + s.conj() * y;
            a[(r, i + 1)] = -s * x + c * y;
        }
    }
    for i in lo..hi {
        a[(i, i)] += mu;
    }
}

/// Eigenvalues of an upper-Hessenberg complex matrix by the shifted QR
/// iteration with Wilkinson shifts, 2×2 closed-form deflation, and
/// occasional exceptional shifts.
///
/// Entries below the first subdiagonal are ignored. The returned order is
/// the deflation order (no sorting).
pub fn hessenberg_eigenvalues(h: &Array2<Complex64>) -> Result<Vec<Complex64>> {
    let n = h.nrows();
    assert_eq!(h.ncols(), n, "eigenvalues of non-square matrix");
    let mut a = h.clone();
    let anorm = a.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let mut eigs = Vec::with_capacity(n);
    let mut hi = n;
    let mut since_deflation = 0usize;
    let mut total = 0usize;
    let eps = f64::EPSILON;
    while hi > 0 {
        if hi == 1 {
            eigs.push(a[(0, 0)]);
            break;
        }
        for i in 0..hi - 1 {
            let s = a[(i, i)].norm() + a[(i + 1, i + 1)].norm();
            let s = if s > 0.0 { s } else { anorm };
            if a[(i + 1, i)].norm() <= eps * s {
                a[(i + 1, i)] = ZERO;
            }
        }
        let mut lo = hi - 1;
        while lo > 0 && a[(lo, lo - 1)] != ZERO {
            lo -= 1;
        }
        if lo == hi - 1 {
            eigs.push(a[(lo, lo)]);
            hi -= 1;
            since_deflation = 0;
            continue;
        }
        if lo == hi - 2 {
            let (e1, e2) = eig2(a[(lo, lo)], a[(lo, lo + 1)], a[(lo + 1, lo)], a[(lo + 1, lo + 1)]);
            eigs.push(e1);
            eigs.push(e2);
            hi -= 2;
            since_deflation = 0;
            continue;
        }
        total += 1;
        since_deflation += 1;
        if total > 500 * n {
            return Err(Error::InvalidArgument(
                "eigenvalue iteration did not converge".into(),
            ));
        }
        let mu = if since_deflation % 12 == 0 {
            // Exceptional shift to break rare shift cycles.
            a[(hi - 1, hi - 1)] + Complex64::new(1.5 * a[(hi - 1, hi - 2)].norm(), 0.0)
        } else {
            let (e1, e2) = eig2(
                a[(hi - 2, hi - 2)],
                a[(hi - 2, hi - 1)],
                a[(hi - 1, hi - 2)],
                a[(hi - 1, hi - 1)],
            );
            let corner = a[(hi - 1, hi - 1)];
            if (e1 - corner).norm() <= (e2 - corner).norm() {
                e1
            } else {
                e2
            }
        };
        qr_step(&mut a, lo, hi, mu);
    }
    Ok(eigs)
}
