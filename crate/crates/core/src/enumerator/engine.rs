//! Weight-class histograms over a Pauli group and their Φ-expansion.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;

use super::trunc::{Int, MonoSpace};
use super::EnumError;

/// Positions sharing (homogenizing variable, active variable, unit size).
#[derive(Clone, Debug)]
pub(crate) struct Class {
    /// Index of the active variable in the output table.
    pub var: usize,
    /// Index of the homogenizing variable in the homogeneous table.
    pub hw: usize,
    /// Index of the active variable in the homogeneous table.
    pub ha: usize,
    /// Qubits per local unit: 1 for per-qubit counts, r for a trigger on r qubits.
    pub unit: u32,
    pub trig: Vec<u64>,
    pub count: Vec<u64>,
    pub slots: u32,
}

impl Class {
    #[inline]
    fn active(&self, supp: u64) -> u32 {
        let mut a = 0;
        for &m in &self.trig {
            a += (supp & m != 0) as u32;
        }
        for &m in &self.count {
            a += (supp & m).count_ones();
        }
        a
    }
}

const DENSE_LIMIT: u128 = 1 << 18;
const MIN_CHUNK: u64 = 1 << 12;

/// (per-class active counts, signed multiplicity)
pub(crate) type Histogram = Vec<(Vec<u32>, i64)>;

enum Acc {
    Dense(Vec<i64>),
    Sparse(HashMap<u128, i64>),
}

impl Acc {
    fn new(size: u128) -> Acc {
        if size <= DENSE_LIMIT {
            Acc::Dense(vec![0; size as usize])
        } else {
            Acc::Sparse(HashMap::new())
        }
    }

    #[inline]
    fn add(&mut self, key: u128, v: i64) {
        match self {
            Acc::Dense(d) => d[key as usize] += v,
            Acc::Sparse(m) => *m.entry(key).or_insert(0) += v,
        }
    }

    fn merge(mut self, o: Acc) -> Acc {
        match (&mut self, o) {
            (Acc::Dense(a), Acc::Dense(b)) => a.iter_mut().zip(b).for_each(|(x, y)| *x += y),
            (Acc::Sparse(a), Acc::Sparse(b)) => {
                for (k, v) in b {
                    *a.entry(k).or_insert(0) += v;
                }
            }
            _ => unreachable!("accumulators share a layout"),
        }
        self
    }

    fn into_pairs(self) -> Vec<(u128, i64)> {
        match self {
            Acc::Dense(d) => d
                .into_iter()
                .enumerate()
                .filter(|(_, v)| *v != 0)
                .map(|(k, v)| (k as u128, v))
                .collect(),
            Acc::Sparse(m) => m.into_iter().filter(|(_, v)| *v != 0).collect(),
        }
    }
}

/// Histogram of class activity over the group generated by `gens` (x, z words).
/// With `twist = Some(L)`, each element D is counted with sign ω(D, L).
pub(crate) fn histogram(
    gens: &[(u64, u64)],
    classes: &[Class],
    twist: Option<(u64, u64)>,
) -> Result<Histogram, EnumError> {
    let mut strides = Vec::with_capacity(classes.len());
    let mut size: u128 = 1;
    for c in classes {
        strides.push(size);
        size = size
            .checked_mul(c.slots as u128 + 1)
            .ok_or(EnumError::TooLarge("weight-class key space"))?;
    }
    let g = gens.len();
    let total: u64 = 1 << g;
    let threads = rayon::current_num_threads() as u64;
    let chunks = (total / MIN_CHUNK).clamp(1, threads * 16);
    let per = total.div_ceil(chunks);
    let acc = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let start = c * per;
            let end = ((c + 1) * per).min(total);
            let mut acc = Acc::new(size);
            if start >= end {
                return acc;
            }
            let gray = start ^ (start >> 1);
            let (mut x, mut z) = (0u64, 0u64);
            for (j, (gx, gz)) in gens.iter().enumerate() {
                if gray >> j & 1 == 1 {
                    x ^= gx;
                    z ^= gz;
                }
            }
            let mut i = start;
            loop {
                let supp = x | z;
                let mut key: u128 = 0;
                for (cl, s) in classes.iter().zip(&strides) {
                    key += cl.active(supp) as u128 * s;
                }
                let sign = match twist {
                    Some((lx, lz)) if ((x & lz) ^ (z & lx)).count_ones() & 1 == 1 => -1,
                    _ => 1,
                };
                acc.add(key, sign);
                i += 1;
                if i >= end {
                    break;
                }
                let j = i.trailing_zeros() as usize;
                x ^= gens[j].0;
                z ^= gens[j].1;
            }
            acc
        })
        .reduce_with(Acc::merge)
        .expect("at least one chunk");
    let mut out: Histogram = acc
        .into_pairs()
        .into_iter()
        .map(|(key, v)| {
            let digits = classes
                .iter()
                .zip(&strides)
                .map(|(c, s)| ((key / s) % (c.slots as u128 + 1)) as u32)
                .collect();
            (digits, v)
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Σ_key mult · ∏_class F0^{slots−a} F1^{a}, with F0 = 1 + (4^unit − 1)x, F1 = 1 − x,
/// over the monomials of `space`.
fn expand_with<T: Int>(space: &MonoSpace, classes: &[Class], hist: &Histogram) -> Option<Vec<T>> {
    let mut combined: Vec<HashMap<u32, Vec<T>>> = vec![HashMap::new(); classes.len()];
    for (ci, c) in classes.iter().enumerate() {
        let mut needed: Vec<u32> = hist.iter().map(|(k, _)| k[ci]).collect();
        needed.sort_unstable();
        needed.dedup();
        let f0 = (1i64 << (2 * c.unit)) - 1;
        let mut pow0 = vec![space.one::<T>()];
        let mut pow1 = vec![space.one::<T>()];
        let max_a = *needed.last().unwrap_or(&0);
        let max_b = c.slots - needed.first().copied().unwrap_or(0);
        for _ in 0..max_b {
            let next = space.mul_linear(pow0.last().unwrap(), c.var, f0)?;
            pow0.push(next);
        }
        for _ in 0..max_a {
            let next = space.mul_linear(pow1.last().unwrap(), c.var, -1)?;
            pow1.push(next);
        }
        for a in needed {
            let p = space.mul(&pow0[(c.slots - a) as usize], &pow1[a as usize])?;
            combined[ci].insert(a, p);
        }
    }
    let mut total = vec![T::zero(); space.len()];
    for (key, mult) in hist {
        let mut prod = space.one::<T>();
        for ci in 0..classes.len() {
            prod = space.mul(&prod, &combined[ci][&key[ci]])?;
        }
        space.add_scaled(&mut total, &prod, &T::from_i64(*mult))?;
    }
    Some(total)
}

pub(crate) fn expand(
    nvars: usize,
    cap: u32,
    classes: &[Class],
    hist: &Histogram,
    shift: u32,
) -> Result<Vec<(Vec<u16>, BigInt)>, EnumError> {
    let space =
        MonoSpace::new(nvars, cap).ok_or(EnumError::TooLarge("monomials below the degree cap"))?;
    let raw: Vec<BigInt> = match expand_with::<i128>(&space, classes, hist) {
        Some(v) => v.iter().map(Int::to_big).collect(),
        None => expand_with::<BigInt>(&space, classes, hist).expect("big integers do not overflow"),
    };
    finish(&space, raw, shift)
}

fn finish(
    space: &MonoSpace,
    raw: Vec<BigInt>,
    shift: u32,
) -> Result<Vec<(Vec<u16>, BigInt)>, EnumError> {
    let den = BigInt::from(1) << shift;
    let mut out = Vec::new();
    for (e, v) in space.exps.iter().zip(raw) {
        if v == BigInt::from(0) {
            continue;
        }
        let (q, r) = v.div_rem(&den);
        if r != BigInt::from(0) {
            return Err(EnumError::Indivisible {
                value: v.to_string(),
                shift,
            });
        }
        out.push((e.clone(), q));
    }
    Ok(out)
}
