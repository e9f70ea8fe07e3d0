//! Dense degree-truncated integer polynomials used by the Φ-expansion.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

/// Integer coefficient with overflow reporting.
pub(crate) trait Int: Clone + Send + Sync {
    fn zero() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    /// self += a * b
    fn mul_add(&mut self, a: &Self, b: &Self) -> Option<()>;
    fn to_big(&self) -> BigInt;
}

impl Int for i128 {
    fn zero() -> Self {
        0
    }
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn mul_add(&mut self, a: &Self, b: &Self) -> Option<()> {
        *self = self.checked_add(a.checked_mul(*b)?)?;
        Some(())
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Int for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul_add(&mut self, a: &Self, b: &Self) -> Option<()> {
        *self += a * b;
        Some(())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

const MAX_MONOMIALS: usize = 4_000_000;
const MAX_PAIRS: usize = 8_000_000;

/// All monomials of total degree ≤ cap in `nvars` variables.
pub(crate) struct MonoSpace {
    pub cap: u32,
    pub exps: Vec<Vec<u16>>,
    deg: Vec<u32>,
    index: HashMap<Vec<u16>, u32>,
    up: Vec<Vec<u32>>,
    pairs: Option<Vec<Vec<(u32, u32)>>>,
}

fn binom(n: usize, k: usize) -> Option<usize> {
    let mut r: usize = 1;
    for i in 0..k {
        r = r.checked_mul(n - i)? / (i + 1);
    }
    Some(r)
}

impl MonoSpace {
    pub fn new(nvars: usize, cap: u32) -> Option<Self> {
        if binom(nvars + cap as usize, cap as usize)? > MAX_MONOMIALS {
            return None;
        }
        let mut exps = vec![vec![0u16; nvars]];
        let mut frontier = exps.clone();
        for _ in 0..cap {
            let mut next = Vec::new();
            for e in &frontier {
                let last = e.iter().rposition(|&k| k > 0).unwrap_or(0);
                for v in last..nvars {
                    let mut e2 = e.clone();
                    e2[v] += 1;
                    next.push(e2);
                }
            }
            exps.extend(next.iter().cloned());
            frontier = next;
        }
        let deg: Vec<u32> = exps
            .iter()
            .map(|e| e.iter().map(|&k| k as u32).sum())
            .collect();
        let index: HashMap<Vec<u16>, u32> = exps
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i as u32))
            .collect();
        let none = u32::MAX;
        let up: Vec<Vec<u32>> = (0..nvars)
            .map(|v| {
                exps.iter()
                    .zip(&deg)
                    .map(|(e, &d)| {
                        if d >= cap {
                            return none;
                        }
                        let mut e2 = e.clone();
                        e2[v] += 1;
                        index[&e2]
                    })
                    .collect()
            })
            .collect();
        let mut space = MonoSpace {
            cap,
            exps,
            deg,
            index,
            up,
            pairs: None,
        };
        if binom(2 * nvars + cap as usize, cap as usize).is_some_and(|p| p <= MAX_PAIRS) {
            let pairs = (0..space.exps.len())
                .map(|i| {
                    (0..space.exps.len())
                        .filter(|&j| space.deg[i] + space.deg[j] <= cap)
                        .map(|j| (j as u32, space.product_index(i, j)))
                        .collect()
                })
                .collect();
            space.pairs = Some(pairs);
        }
        Some(space)
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    fn product_index(&self, i: usize, j: usize) -> u32 {
        let e: Vec<u16> = self.exps[i]
            .iter()
            .zip(&self.exps[j])
            .map(|(a, b)| a + b)
            .collect();
        self.index[&e]
    }

    pub fn one<T: Int>(&self) -> Vec<T> {
        let mut v = vec![T::zero(); self.len()];
        v[0] = T::from_i64(1);
        v
    }

    /// (1 + c·x_var) · a, truncated.
    pub fn mul_linear<T: Int>(&self, a: &[T], var: usize, c: i64) -> Option<Vec<T>> {
        let mut out = a.to_vec();
        let ct = T::from_i64(c);
        for (k, ak) in a.iter().enumerate() {
            if ak.is_zero() {
                continue;
            }
            let u = self.up[var][k];
            if u != u32::MAX {
                out[u as usize].mul_add(ak, &ct)?;
            }
        }
        Some(out)
    }

    pub fn mul<T: Int>(&self, a: &[T], b: &[T]) -> Option<Vec<T>> {
        let mut out = vec![T::zero(); self.len()];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            match &self.pairs {
                Some(pairs) => {
                    for &(j, k) in &pairs[i] {
                        let bj = &b[j as usize];
                        if !bj.is_zero() {
                            out[k as usize].mul_add(ai, bj)?;
                        }
                    }
                }
                None => {
                    for (j, bj) in b.iter().enumerate() {
                        if !bj.is_zero() && self.deg[i] + self.deg[j] <= self.cap {
                            out[self.product_index(i, j) as usize].mul_add(ai, bj)?;
                        }
                    }
                }
            }
        }
        Some(out)
    }

    pub fn add_scaled<T: Int>(&self, acc: &mut [T], a: &[T], k: &T) -> Option<()> {
        for (x, y) in acc.iter_mut().zip(a) {
            if !y.is_zero() {
                x.mul_add(y, k)?;
            }
        }
        Some(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_powers_match_binomials() {
        let s = MonoSpace::new(2, 4).unwrap();
        assert_eq!(s.len(), 15);
        let mut p: Vec<i128> = s.one();
        for _ in 0..6 {
            p = s.mul_linear(&p, 0, 3).unwrap();
        }
        let idx = |e: [u16; 2]| s.index[&e.to_vec()] as usize;
        assert_eq!(p[idx([2, 0])], 15 * 9);
        assert_eq!(p[idx([4, 0])], 15 * 81);
        let q = s
            .mul(&p, &s.mul_linear(&s.one::<i128>(), 1, -1).unwrap())
            .unwrap();
        assert_eq!(q[idx([1, 1])], -18);
    }

    #[test]
    fn overflow_is_reported() {
        let s = MonoSpace::new(1, 3).unwrap();
        let mut p: Vec<i128> = s.one();
        let mut ok = true;
        for _ in 0..80 {
            match s.mul_linear(&p, 0, i64::MAX) {
                Some(q) => p = q,
                None => {
                    ok = false;
                    break;
                }
            }
        }
        assert!(!ok);
    }
}
