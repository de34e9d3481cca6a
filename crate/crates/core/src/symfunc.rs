//! Elementary symmetric polynomials σ_m, their minors σ_m(κ|ab…), and the
//! first/second partial derivatives σ_k^{pp}, σ_k^{pp,qq}.
//!
//! Conventions: σ_0 = 1 and σ_m = 0 for m < 0 or m > n. These make the
//! recursion identities and all boundary orders (σ_{k−3} with k ≤ 2, …)
//! well defined.
//!
//! Minors are always recomputed on the deleted sub-vector with the
//! division-free one-pass recurrence `e_m ← e_m + κ_j·e_{m−1}`; no root
//! division, so zeros and near-cancellations in κ are harmless.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// A vector of n ≥ 2 finite curvature values; the universal input.
#[derive(Clone, Debug, PartialEq)]
pub struct KappaVector<T: Real> {
    entries: Vec<T>,
}

impl<T: Real> KappaVector<T> {
    pub fn new(entries: Vec<T>) -> Result<Self> {
        if entries.len() < 2 {
            return Err(Error::invalid_input("kappa needs n >= 2 entries"));
        }
        if let Some(bad) = entries.iter().position(|e| !e.is_finite()) {
            return Err(Error::NonFinite(format!("kappa entry {bad}")));
        }
        Ok(KappaVector { entries })
    }

    pub fn from_f64s(vals: &[f64]) -> Result<Self> {
        if let Some(bad) = vals.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(format!("kappa entry {bad}")));
        }
        Self::new(vals.iter().map(|&v| T::from_f64(v)).collect())
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> &T {
        &self.entries[i]
    }

    pub fn to_f64s(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.approx_f64()).collect()
    }

    pub fn is_sorted_desc(&self) -> bool {
        self.entries.windows(2).all(|w| w[0] >= w[1])
    }

    /// Descending copy plus the permutation `perm` with
    /// `sorted[j] = self[perm[j]]` (stable, so ties keep input order).
    pub fn sorted_desc(&self) -> (Self, Vec<usize>) {
        let mut idx: Vec<usize> = (0..self.n()).collect();
        idx.sort_by(|&a, &b| {
            self.entries[b]
                .partial_cmp(&self.entries[a])
                .unwrap_or(std::cmp::Ordering::Equal)
                .then(a.cmp(&b))
        });
        let sorted = KappaVector {
            entries: idx.iter().map(|&j| self.entries[j].clone()).collect(),
        };
        (sorted, idx)
    }

    /// Largest entry (the paper's κ_1).
    pub fn max_entry(&self) -> T {
        let mut m = self.entries[0].clone();
        for e in &self.entries[1..] {
            if *e > m {
                m = e.clone();
            }
        }
        m
    }
}

/// All of e_0 … e_{m_max} of `v` in one pass, O(n·m_max).
pub(crate) fn elem_sym_all<T: Real>(v: &[T], m_max: usize) -> Vec<T> {
    let mut e = vec![T::zero(); m_max + 1];
    e[0] = T::one();
    for (j, x) in v.iter().enumerate() {
        let hi = (j + 1).min(m_max);
        for m in (1..=hi).rev() {
            e[m] = e[m].clone() + x.clone() * e[m - 1].clone();
        }
    }
    e
}

/// σ_m of a raw slice, applying the order conventions.
pub(crate) fn elem_sym_slice<T: Real>(v: &[T], m: i64) -> T {
    if m < 0 || m as usize > v.len() {
        return T::zero();
    }
    if m == 0 {
        return T::one();
    }
    let m = m as usize;
    elem_sym_all(v, m).pop().expect("m <= len")
}

/// σ_m(κ). Any integer `m` is allowed; out-of-range orders follow the
/// conventions σ_0 = 1, σ_m = 0 otherwise.
pub fn elem_sym<T: Real>(kappa: &KappaVector<T>, m: i64) -> T {
    elem_sym_slice(kappa.entries(), m)
}

/// σ_m(κ|excluded): σ_m of the sub-vector with the given indices removed.
/// Indices are zero-based, must be in range and pairwise distinct.
pub fn elem_sym_excl<T: Real>(kappa: &KappaVector<T>, m: i64, excluded: &[usize]) -> Result<T> {
    let n = kappa.n();
    for (pos, &i) in excluded.iter().enumerate() {
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, n });
        }
        if excluded[..pos].contains(&i) {
            return Err(Error::invalid_input(format!("duplicate excluded index {i}")));
        }
    }
    Ok(elem_sym_excl_unchecked(kappa.entries(), m, excluded))
}

pub(crate) fn elem_sym_excl_unchecked<T: Real>(v: &[T], m: i64, excluded: &[usize]) -> T {
    let sub: Vec<T> = v
        .iter()
        .enumerate()
        .filter(|(i, _)| !excluded.contains(i))
        .map(|(_, x)| x.clone())
        .collect();
    elem_sym_slice(&sub, m)
}

/// First or second partial of σ_k at a diagonal point:
/// order 1 → σ_k^{pp} = σ_{k−1}(κ|p); order 2 → σ_k^{pp,qq} = σ_{k−2}(κ|pq)
/// for p ≠ q and exactly 0 for p = q.
pub fn sigma_partial<T: Real>(
    kappa: &KappaVector<T>,
    k: usize,
    order: u8,
    p: usize,
    q: Option<usize>,
) -> Result<T> {
    let n = kappa.n();
    if k < 1 || k > n {
        return Err(Error::invalid_input(format!("k = {k} outside 1..={n}")));
    }
    if p >= n {
        return Err(Error::IndexOutOfRange { index: p, n });
    }
    match order {
        1 => elem_sym_excl(kappa, k as i64 - 1, &[p]),
        2 => {
            let q = q.ok_or_else(|| Error::invalid_input("order 2 requires q"))?;
            if q >= n {
                return Err(Error::IndexOutOfRange { index: q, n });
            }
            if p == q {
                Ok(T::zero())
            } else {
                elem_sym_excl(kappa, k as i64 - 2, &[p, q])
            }
        }
        other => Err(Error::invalid_input(format!("order must be 1 or 2, got {other}"))),
    }
}

/// C(n, k) as an exact u64 (n ≤ 64).
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rat;

    /// Independent oracle: brute-force enumeration of all m-subsets.
    pub(crate) fn elem_sym_bruteforce<T: Real>(v: &[T], m: i64) -> T {
        if m < 0 || m as usize > v.len() {
            return T::zero();
        }
        if m == 0 {
            return T::one();
        }
        let m = m as usize;
        let n = v.len();
        let mut total = T::zero();
        let mut idx: Vec<usize> = (0..m).collect();
        loop {
            let mut prod = T::one();
            for &i in &idx {
                prod = prod * v[i].clone();
            }
            total = total + prod;
            // next combination
            let mut j = m;
            loop {
                if j == 0 {
                    return total;
                }
                j -= 1;
                if idx[j] != j + n - m {
                    break;
                }
            }
            idx[j] += 1;
            for t in j + 1..m {
                idx[t] = idx[t - 1] + 1;
            }
        }
    }

    fn kv(vals: &[f64]) -> KappaVector<f64> {
        KappaVector::from_f64s(vals).unwrap()
    }

    #[test]
    fn spec_examples() {
        assert_eq!(elem_sym(&kv(&[1.0, 1.0, 1.0]), 2), 3.0);
        assert_eq!(elem_sym(&kv(&[3.0, 2.0, -1.0]), 2), 1.0); // 6 - 3 - 2
        assert_eq!(elem_sym(&kv(&[3.0, 2.0, -1.0]), 4), 0.0); // m > n
        assert_eq!(elem_sym(&kv(&[3.0, 2.0, -1.0]), 0), 1.0);
        assert_eq!(elem_sym(&kv(&[3.0, 2.0, -1.0]), -1), 0.0);

        let k = kv(&[3.0, 2.0, -1.0]);
        assert_eq!(elem_sym_excl(&k, 1, &[0]).unwrap(), 1.0); // 2 + (-1)
        assert_eq!(elem_sym_excl(&k, 0, &[0, 1]).unwrap(), 1.0);
        let ones = kv(&[1.0; 5]);
        assert_eq!(elem_sym_excl(&ones, 2, &[2]).unwrap(), 6.0); // C(4,2)

        assert_eq!(sigma_partial(&k, 2, 1, 0, None).unwrap(), 1.0); // σ_1(2,-1)
        assert_eq!(sigma_partial(&k, 2, 2, 0, Some(1)).unwrap(), 1.0); // σ_0
        assert_eq!(sigma_partial(&k, 2, 2, 1, Some(1)).unwrap(), 0.0); // p = q
    }

    #[test]
    fn error_paths() {
        let k = kv(&[3.0, 2.0, -1.0]);
        assert!(matches!(
            elem_sym_excl(&k, 1, &[3]),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(elem_sym_excl(&k, 1, &[1, 1]).is_err());
        assert!(sigma_partial(&k, 0, 1, 0, None).is_err());
        assert!(sigma_partial(&k, 4, 1, 0, None).is_err());
        assert!(sigma_partial(&k, 2, 2, 0, None).is_err());
        assert!(KappaVector::<f64>::from_f64s(&[1.0, f64::NAN]).is_err());
        assert!(KappaVector::<f64>::from_f64s(&[1.0]).is_err());
    }

    #[test]
    fn matches_bruteforce_exactly_in_rational_mode() {
        use rand::{RngExt, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.random_range(2..=9usize);
            let v: Vec<Rat> = (0..n)
                .map(|_| Rat::from_ratio(rng.random_range(-50..=50), rng.random_range(1..=20)))
                .collect();
            let kappa = KappaVector::new(v.clone()).unwrap();
            for m in -1..=(n as i64 + 1) {
                assert_eq!(elem_sym(&kappa, m), elem_sym_bruteforce(&v, m), "n={n} m={m}");
            }
        }
    }

    #[test]
    fn identities_iii_iv_exact() {
        use rand::{RngExt, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let n = rng.random_range(2..=8usize);
            let v: Vec<Rat> = (0..n)
                .map(|_| Rat::from_ratio(rng.random_range(-30..=30), rng.random_range(1..=12)))
                .collect();
            let kappa = KappaVector::new(v).unwrap();
            for k in 1..=n {
                let sk = elem_sym(&kappa, k as i64);
                // (iv): Σ κ_i σ_{k-1}(κ|i) = k σ_k
                let mut acc = Rat::zero();
                for i in 0..n {
                    let minor = elem_sym_excl(&kappa, k as i64 - 1, &[i]).unwrap();
                    // (iii): σ_k = κ_i σ_{k-1}(κ|i) + σ_k(κ|i)
                    let tail = elem_sym_excl(&kappa, k as i64, &[i]).unwrap();
                    assert_eq!(sk, kappa.get(i).clone() * minor.clone() + tail);
                    acc = acc + kappa.get(i).clone() * minor;
                }
                assert_eq!(acc, Rat::from_u64(k as u64) * sk);
            }
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(8, 3), 56);
        assert_eq!(binomial(5, 0), 1);
        assert_eq!(binomial(5, 6), 0);
        assert_eq!(binomial(64, 32), 1832624140942590534);
    }
}
