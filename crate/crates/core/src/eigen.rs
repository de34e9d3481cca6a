//! Smallest-eigenvalue solver for symmetric matrices, generic over the
//! scalar kernel: Householder tridiagonalization followed by Sturm-count
//! bisection. A cyclic Jacobi decomposition (f64 only) provides eigenvector
//! witnesses and an internal cross-check.

use crate::error::{Error, Result};
use crate::scalar::{rmax, rmin, Real, ScalarMode, RAT_TRANSCENDENTAL_BITS};

/// Maximum dimension accepted by the solvers.
pub const MAX_EIGEN_N: usize = 64;

/// Dense symmetric matrix, full row-major storage.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMat<T: Real> {
    n: usize,
    data: Vec<T>,
}

impl<T: Real> SymMat<T> {
    pub fn zeros(n: usize) -> Self {
        SymMat {
            n,
            data: vec![T::zero(); n * n],
        }
    }

    /// Builds from rows, requiring |a_pq − a_qp| ≤ tol·max|a| (tol in units
    /// of the matrix scale). The stored matrix is exactly symmetrized.
    pub fn from_rows(rows: Vec<Vec<T>>, tol: f64) -> Result<Self> {
        let n = rows.len();
        if n == 0 || n > MAX_EIGEN_N {
            return Err(Error::invalid_input(format!(
                "matrix dimension {n} outside 1..={MAX_EIGEN_N}"
            )));
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::invalid_input("matrix is not square"));
        }
        let mut m = SymMat::zeros(n);
        for (p, row) in rows.iter().enumerate() {
            for (q, v) in row.iter().enumerate() {
                if !v.is_finite() {
                    return Err(Error::NonFinite(format!("matrix entry ({p},{q})")));
                }
                m.data[p * n + q] = v.clone();
            }
        }
        let scale = m.norm_max();
        let bound = T::from_f64(tol) * scale;
        for p in 0..n {
            for q in (p + 1)..n {
                let diff = (m.get(p, q).clone() - m.get(q, p).clone()).abs();
                if diff > bound {
                    return Err(Error::invalid_input(format!(
                        "matrix not symmetric at ({p},{q}): skew {diff}"
                    )));
                }
                let avg = (m.get(p, q).clone() + m.get(q, p).clone()) * T::from_ratio(1, 2);
                m.set(p, q, avg.clone());
                m.set(q, p, avg);
            }
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, p: usize, q: usize) -> &T {
        &self.data[p * self.n + q]
    }

    pub fn set(&mut self, p: usize, q: usize, v: T) {
        self.data[p * self.n + q] = v;
    }

    /// Sets both (p,q) and (q,p).
    pub fn set_sym(&mut self, p: usize, q: usize, v: T) {
        self.data[p * self.n + q] = v.clone();
        self.data[q * self.n + p] = v;
    }

    /// Max absolute entry; the norm used by all relative tolerances here.
    pub fn norm_max(&self) -> T {
        let mut m = T::zero();
        for v in &self.data {
            m = rmax(m, v.abs());
        }
        m
    }

    pub fn to_f64(&self) -> SymMat<f64> {
        SymMat {
            n: self.n,
            data: self.data.iter().map(|v| v.approx_f64()).collect(),
        }
    }

    pub fn quad_form(&self, xi: &[T]) -> T {
        let mut acc = T::zero();
        for p in 0..self.n {
            for q in 0..self.n {
                acc = acc + self.get(p, q).clone() * xi[p].clone() * xi[q].clone();
            }
        }
        acc
    }
}

/// Householder reduction to symmetric tridiagonal form.
/// Returns (diagonal d[0..n], off-diagonal e[0..n−1]).
fn tridiagonalize<T: Real>(a: &SymMat<T>) -> (Vec<T>, Vec<T>) {
    let n = a.n();
    let mut a = a.clone();
    for j in 0..n.saturating_sub(2) {
        // Reflect column j below the subdiagonal onto e_1.
        let mut norm2 = T::zero();
        for i in (j + 1)..n {
            norm2 = norm2 + a.get(i, j).clone() * a.get(i, j).clone();
        }
        if norm2.is_zero() {
            continue;
        }
        let norm = norm2.sqrt();
        let x0 = a.get(j + 1, j).clone();
        let alpha = if x0.is_neg() { norm } else { -norm };
        // v = x − α e_1, vᵀv = 2(norm² − α x0).
        let mut v = vec![T::zero(); n];
        v[j + 1] = x0.clone() - alpha.clone();
        for i in (j + 2)..n {
            v[i] = a.get(i, j).clone();
        }
        let vtv = (norm2.clone() - alpha.clone() * x0) * T::from_i64(2);
        if vtv.is_zero() {
            continue;
        }
        let beta = T::from_i64(2) / vtv;
        // p = β A v ; w = p − (β/2)(pᵀv) v ; A ← A − v wᵀ − w vᵀ
        let mut p = vec![T::zero(); n];
        for r in 0..n {
            let mut acc = T::zero();
            for c in (j + 1)..n {
                acc = acc + a.get(r, c).clone() * v[c].clone();
            }
            p[r] = beta.clone() * acc;
        }
        let mut ptv = T::zero();
        for r in (j + 1)..n {
            ptv = ptv + p[r].clone() * v[r].clone();
        }
        let half_beta_ptv = beta.clone() * ptv * T::from_ratio(1, 2);
        let mut w = vec![T::zero(); n];
        for r in 0..n {
            w[r] = p[r].clone() - half_beta_ptv.clone() * v[r].clone();
        }
        for r in 0..n {
            for c in r..n {
                let upd = a.get(r, c).clone()
                    - v[r].clone() * w[c].clone()
                    - w[r].clone() * v[c].clone();
                a.set_sym(r, c, upd);
            }
        }
    }
    let d: Vec<T> = (0..n).map(|i| a.get(i, i).clone()).collect();
    let e: Vec<T> = (0..n.saturating_sub(1))
        .map(|i| a.get(i + 1, i).clone())
        .collect();
    (d, e)
}

/// Number of eigenvalues of the tridiagonal (d, e) strictly below `x`,
/// by the Sturm/LDLᵀ pivot count.
fn sturm_count<T: Real>(d: &[T], e: &[T], x: &T, pivot_floor: &T) -> usize {
    let mut count = 0;
    let mut q = d[0].clone() - x.clone();
    if q.is_neg() {
        count += 1;
    }
    for i in 1..d.len() {
        if q.is_zero() {
            q = -pivot_floor.clone();
        }
        q = d[i].clone() - x.clone() - e[i - 1].clone() * e[i - 1].clone() / q;
        if q.is_neg() {
            count += 1;
        }
    }
    count
}

fn bisection_steps<T: Real>() -> u32 {
    match T::mode() {
        ScalarMode::Float64 => 110,
        ScalarMode::Extended { bits } => bits + 16,
        ScalarMode::Rational => RAT_TRANSCENDENTAL_BITS + 16,
    }
}

/// Smallest eigenvalue of a symmetric matrix (n ≤ 64).
///
/// PSD test: the quadratic form is positive semidefinite iff the returned
/// value is ≥ 0 (up to the mode's roundoff against `norm_max`).
pub fn min_eigenvalue<T: Real>(a: &SymMat<T>) -> Result<T> {
    let n = a.n();
    if n == 0 || n > MAX_EIGEN_N {
        return Err(Error::invalid_input(format!(
            "dimension {n} outside 1..={MAX_EIGEN_N}"
        )));
    }
    if n == 1 {
        return Ok(a.get(0, 0).clone());
    }
    let (d, e) = tridiagonalize(a);
    // Gershgorin bounds for the tridiagonal.
    let mut lo = d[0].clone() - e[0].abs();
    let mut hi = d[0].clone() + e[0].abs();
    for i in 1..n {
        let mut r = if i < n - 1 { e[i].abs() } else { T::zero() };
        r = r + e[i - 1].abs();
        lo = rmin(lo, d[i].clone() - r.clone());
        hi = rmax(hi, d[i].clone() + r);
    }
    let scale = rmax(a.norm_max(), T::one());
    let pivot_floor = scale * T::from_f64(f64::MIN_POSITIVE);
    let half = T::from_ratio(1, 2);
    for _ in 0..bisection_steps::<T>() {
        let mid = (lo.clone() + hi.clone()) * half.clone();
        if mid <= lo || mid >= hi {
            break; // interval no longer splits in this precision
        }
        if sturm_count(&d, &e, &mid, &pivot_floor) >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok((lo + hi) * half)
}

/// Full eigen decomposition by cyclic Jacobi rotations (f64).
/// Returns eigenvalues ascending with matching unit eigenvectors.
pub fn jacobi_eigen_f64(a: &SymMat<f64>) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    let n = a.n();
    if n == 0 || n > MAX_EIGEN_N {
        return Err(Error::invalid_input(format!(
            "dimension {n} outside 1..={MAX_EIGEN_N}"
        )));
    }
    let mut a = a.clone();
    let mut v = SymMat::<f64>::zeros(n);
    for i in 0..n {
        v.set(i, i, 1.0);
    }
    let scale = a.norm_max().max(f64::MIN_POSITIVE);
    let tol = 1e-14 * scale;
    for _sweep in 0..64 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off = off.max(a.get(p, q).abs());
            }
        }
        if off <= tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = *a.get(p, q);
                if apq.abs() <= tol * 1e-2 {
                    continue;
                }
                let app = *a.get(p, p);
                let aqq = *a.get(q, q);
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for r in 0..n {
                    let arp = *a.get(r, p);
                    let arq = *a.get(r, q);
                    a.set(r, p, c * arp - s * arq);
                    a.set(r, q, s * arp + c * arq);
                }
                for r in 0..n {
                    let apr = *a.get(p, r);
                    let aqr = *a.get(q, r);
                    a.set(p, r, c * apr - s * aqr);
                    a.set(q, r, s * apr + c * aqr);
                }
                for r in 0..n {
                    let vrp = *v.get(r, p);
                    let vrq = *v.get(r, q);
                    v.set(r, p, c * vrp - s * vrq);
                    v.set(r, q, s * vrp + c * vrq);
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a.get(i, i).partial_cmp(a.get(j, j)).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| *a.get(i, i)).collect();
    let vectors: Vec<Vec<f64>> = order
        .iter()
        .map(|&i| (0..n).map(|r| *v.get(r, i)).collect())
        .collect();
    Ok((values, vectors))
}

/// Smallest eigenvalue with its (unit) eigenvector, f64.
pub fn min_eigenpair_f64(a: &SymMat<f64>) -> Result<(f64, Vec<f64>)> {
    let (vals, vecs) = jacobi_eigen_f64(a)?;
    Ok((vals[0], vecs.into_iter().next().expect("n >= 1")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{with_ext_bits, Ext};
    use rand::{RngExt, SeedableRng};

    fn sym_from(rows: &[&[f64]]) -> SymMat<f64> {
        SymMat::from_rows(rows.iter().map(|r| r.to_vec()).collect(), 1e-12).unwrap()
    }

    #[test]
    fn trivial_spectra() {
        let id = sym_from(&[&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.0, 0.0, 1.0]]);
        assert!((min_eigenvalue(&id).unwrap() - 1.0).abs() < 1e-12);
        let d = sym_from(&[&[2.0, 0.0, 0.0], &[0.0, 19.0, 0.0], &[0.0, 0.0, 82.0]]);
        assert!((min_eigenvalue(&d).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_asymmetric_and_oversized() {
        let r = SymMat::from_rows(vec![vec![1.0, 2.0], vec![0.0, 1.0]], 1e-12);
        assert!(matches!(r, Err(Error::InvalidInput(_))));
        let big = SymMat::<f64>::zeros(65);
        assert!(min_eigenvalue(&big).is_err());
    }

    /// Oracle: bisection on the characteristic cubic at 256 bits for the
    /// 3×3 example (diag 2,19,82 / off 3,12,27): p(λ) = λ³ − 103λ² + 878λ − 128.
    #[test]
    fn example_matrix_against_charpoly_oracle() {
        let q = sym_from(&[&[2.0, 3.0, 12.0], &[3.0, 19.0, 27.0], &[12.0, 27.0, 82.0]]);
        let got = min_eigenvalue(&q).unwrap();
        let oracle = with_ext_bits(256, || {
            let p = |x: &Ext| {
                let x2 = x.clone() * x.clone();
                let x3 = x2.clone() * x.clone();
                x3 - Ext::from_i64(103) * x2 + Ext::from_i64(878) * x.clone()
                    - Ext::from_i64(128)
            };
            let mut lo = Ext::from_i64(0);
            let mut hi = Ext::from_i64(1);
            assert!(p(&lo).is_neg() != p(&hi).is_neg());
            for _ in 0..300 {
                let mid = (lo.clone() + hi.clone()) * Ext::from_ratio(1, 2);
                if p(&mid).is_neg() == p(&lo).is_neg() {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            lo.approx_f64()
        });
        assert!(
            (got - oracle).abs() <= 1e-13 * 82.0,
            "min_eig {got} vs charpoly oracle {oracle}"
        );
        // frozen regression anchor for the oracle itself
        assert!(
            (oracle - 0.14710437764177987).abs() < 1e-13,
            "oracle drift: {oracle}"
        );
    }

    #[test]
    fn agrees_with_jacobi_on_random_matrices() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for trial in 0..60 {
            let n = rng.random_range(2..=8usize);
            let mut m = SymMat::<f64>::zeros(n);
            for p in 0..n {
                for q in p..n {
                    let v: f64 = rng.random_range(-5.0..5.0);
                    m.set_sym(p, q, v);
                }
            }
            let a = min_eigenvalue(&m).unwrap();
            let (b, vec) = min_eigenpair_f64(&m).unwrap();
            let scale = m.norm_max().max(1.0);
            assert!(
                (a - b).abs() < 1e-10 * scale,
                "trial {trial}: sturm {a} vs jacobi {b}"
            );
            let mut res = 0.0f64;
            for r in 0..n {
                let mut acc = 0.0;
                for c in 0..n {
                    acc += m.get(r, c) * vec[c];
                }
                res = res.max((acc - b * vec[r]).abs());
            }
            assert!(res < 1e-9 * scale, "eigvec residual {res}");
        }
    }

    #[test]
    fn extended_mode_min_eig() {
        with_ext_bits(128, || {
            let rows = vec![
                vec![Ext::from_i64(2), Ext::from_i64(3), Ext::from_i64(12)],
                vec![Ext::from_i64(3), Ext::from_i64(19), Ext::from_i64(27)],
                vec![Ext::from_i64(12), Ext::from_i64(27), Ext::from_i64(82)],
            ];
            let q = SymMat::from_rows(rows, 0.0).unwrap();
            let got = min_eigenvalue(&q).unwrap().approx_f64();
            assert!((got - 0.14710437764177987).abs() < 1e-13);
        });
    }
}
