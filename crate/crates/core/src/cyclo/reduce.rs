//! Reduction of exponent-indexed sums modulo the N-th cyclotomic polynomial.
//!
//! Writing `N = s * R` with `R = rad(N)`, we have `Phi_N(x) = Phi_R(x^s)`. A
//! monomial `x^e` with `e = r + s*j` (`r < s`) therefore only interacts with
//! monomials in the same residue class `r`, and each class reduces as a
//! polynomial in `y = x^s` modulo `Phi_R(y)`. The canonical basis index of
//! `y^i` in class `r` is `r + s*i`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, Zero};

use crate::arith::{divisors, euler_phi, moebius, radical};

/// Coefficient types the reduction kernel can run on. Machine integers report
/// overflow through `None`; `BigInt` never does.
pub(crate) trait Coeff:
    Clone + Zero + PartialEq + CheckedAdd + CheckedSub + CheckedMul + From<i64>
{
}

impl Coeff for i128 {}
impl Coeff for BigInt {}

/// Precomputed data for one level `N`.
#[derive(Debug)]
pub(crate) struct Reducer {
    pub level: u64,
    pub stride: u64,
    pub radical: u64,
    pub phi_radical: u64,
    /// Nonzero coefficients of `Phi_R` below the leading term, as `(degree, coeff)`.
    tail: Vec<(u64, i64)>,
}

impl Reducer {
    fn new(level: u64) -> Self {
        let radical = radical(level);
        let stride = level / radical;
        let poly = squarefree_cyclotomic(radical);
        let phi_radical = (poly.len() - 1) as u64;
        let tail = poly[..poly.len() - 1]
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(i, c)| (i as u64, *c))
            .collect();
        Reducer {
            level,
            stride,
            radical,
            phi_radical,
            tail,
        }
    }

    /// Shared reducer for `level`, built on first use.
    pub fn shared(level: u64) -> Arc<Reducer> {
        static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Reducer>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(r) = cache.lock().unwrap().get(&level) {
            return Arc::clone(r);
        }
        let built = Arc::new(Reducer::new(level));
        let mut guard = cache.lock().unwrap();
        Arc::clone(guard.entry(level).or_insert(built))
    }

    /// Reduces one residue class in place: `v` holds coefficients of `y^0..y^(len-1)`.
    fn reduce_class<T: Coeff>(&self, v: &mut [T]) -> Option<()> {
        let deg = self.phi_radical as usize;
        for top in (deg..v.len()).rev() {
            if v[top].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut v[top], T::zero());
            let base = top - deg;
            for &(i, phi_i) in &self.tail {
                let idx = base + i as usize;
                let delta = c.checked_mul(&T::from(phi_i))?;
                v[idx] = v[idx].checked_sub(&delta)?;
            }
        }
        Some(())
    }

    /// Reduces a dense vector of length `N` (coefficients of `x^0..x^(N-1)`).
    pub fn reduce_dense<T: Coeff>(&self, dense: &[T]) -> Option<Vec<(u64, T)>> {
        debug_assert_eq!(dense.len() as u64, self.level);
        let s = self.stride as usize;
        let r_len = self.radical as usize;
        let mut out = Vec::new();
        let mut class: Vec<T> = vec![T::zero(); r_len];
        for r in 0..s {
            let mut any = false;
            for (j, slot) in class.iter_mut().enumerate() {
                let c = &dense[r + s * j];
                if !c.is_zero() {
                    any = true;
                }
                *slot = c.clone();
            }
            if !any {
                continue;
            }
            self.reduce_class(&mut class)?;
            for (i, c) in class.iter().take(self.phi_radical as usize).enumerate() {
                if !c.is_zero() {
                    out.push((r as u64 + self.stride * i as u64, c.clone()));
                }
            }
        }
        out.sort_unstable_by_key(|(i, _)| *i);
        Some(out)
    }

    /// Reduces a sparse list of `(exponent, coeff)` pairs; exponents are taken
    /// mod `N` and duplicates are summed.
    pub fn reduce_sparse<T: Coeff>(&self, terms: Vec<(u64, T)>) -> Option<Vec<(u64, T)>> {
        let s = self.stride;
        let mut keyed: Vec<(u64, u64, T)> = terms
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| {
                let e = e % self.level;
                (e % s, e / s, c)
            })
            .collect();
        keyed.sort_unstable_by_key(|a| (a.0, a.1));

        let mut out = Vec::new();
        let mut start = 0;
        while start < keyed.len() {
            let r = keyed[start].0;
            let mut end = start;
            while end < keyed.len() && keyed[end].0 == r {
                end += 1;
            }
            let max_j = keyed[end - 1].1 as usize;
            let len = (max_j + 1).max(self.phi_radical as usize);
            let mut class: Vec<T> = vec![T::zero(); len];
            for (_, j, c) in keyed[start..end].iter() {
                let j = *j as usize;
                class[j] = class[j].checked_add(c)?;
            }
            self.reduce_class(&mut class)?;
            for (i, c) in class
                .into_iter()
                .take(self.phi_radical as usize)
                .enumerate()
            {
                if !c.is_zero() {
                    out.push((r + s * i as u64, c));
                }
            }
            start = end;
        }
        out.sort_unstable_by_key(|(i, _)| *i);
        Some(out)
    }
}

/// Coefficients (ascending degree) of `Phi_R` for squarefree `R`, computed as
/// the truncated power series `prod_{d | R} (1 - y^d)^{mu(R/d)}`.
fn squarefree_cyclotomic(r: u64) -> Vec<i64> {
    if r == 1 {
        return vec![-1, 1];
    }
    let deg = euler_phi(r) as usize;
    let mut series = vec![0i128; deg + 1];
    series[0] = 1;
    let mut divs = divisors(r);
    divs.sort_unstable();
    // Multiply first: the product of binomials stays a polynomial, so
    // intermediate coefficients remain small.
    let (mul, div): (Vec<u64>, Vec<u64>) = divs
        .into_iter()
        .filter(|d| moebius(r / d) != 0)
        .partition(|d| moebius(r / d) == 1);
    for d in mul {
        let d = d as usize;
        for k in (d..=deg).rev() {
            series[k] = series[k]
                .checked_sub(series[k - d])
                .expect("cyclotomic coefficient overflow");
        }
    }
    for d in div {
        let d = d as usize;
        for k in d..=deg {
            series[k] = series[k]
                .checked_add(series[k - d])
                .expect("cyclotomic coefficient overflow");
        }
    }
    series
        .into_iter()
        .map(|c| i64::try_from(c).expect("cyclotomic coefficient overflow"))
        .collect()
}

/// Coefficients (ascending degree) of the `n`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    assert!(n >= 1, "cyclotomic polynomial index must be positive");
    let r = radical(n);
    let s = (n / r) as usize;
    let base = squarefree_cyclotomic(r);
    let mut out = vec![0i64; (base.len() - 1) * s + 1];
    for (i, c) in base.into_iter().enumerate() {
        out[i * s] = c;
    }
    out
}
