//! Pauli strings in symplectic form, exact phases, and stabilizer codes.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use thiserror::Error;

/// Default cap on the number of generators accepted by [`iter_group`].
pub const DEFAULT_GROUP_CAP: usize = 30;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PauliError {
    #[error("length mismatch: {0} vs {1} qubits")]
    LengthMismatch(usize, usize),
    #[error("invalid Pauli character {0:?}")]
    BadChar(char),
    #[error("group has {got} generators, cap is {cap}")]
    CapExceeded { got: usize, cap: usize },
    #[error("generators {0} and {1} do not commute")]
    NonCommuting(usize, usize),
    #[error("generator {0} is dependent on the preceding generators")]
    Dependent(usize),
    #[error("generator {0} has a non-real phase")]
    ComplexPhase(usize),
    #[error("code has more generators ({gens}) than qubits ({n})")]
    TooManyGenerators { gens: usize, n: usize },
    #[error("operator {0} is not in the normalizer")]
    NotInNormalizer(String),
}

/// Single-qubit Pauli with the encoding (x, z): I=(0,0), X=(1,0), Y=(1,1), Z=(0,1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli1 {
    I,
    X,
    Y,
    Z,
}

impl Pauli1 {
    pub const ALL: [Pauli1; 4] = [Pauli1::I, Pauli1::X, Pauli1::Y, Pauli1::Z];

    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli1::I => (false, false),
            Pauli1::X => (true, false),
            Pauli1::Y => (true, true),
            Pauli1::Z => (false, true),
        }
    }

    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli1::I,
            (true, false) => Pauli1::X,
            (true, true) => Pauli1::Y,
            (false, true) => Pauli1::Z,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Pauli1::I => 'I',
            Pauli1::X => 'X',
            Pauli1::Y => 'Y',
            Pauli1::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Result<Self, PauliError> {
        match c {
            'I' | '_' => Ok(Pauli1::I),
            'X' => Ok(Pauli1::X),
            'Y' => Ok(Pauli1::Y),
            'Z' => Ok(Pauli1::Z),
            other => Err(PauliError::BadChar(other)),
        }
    }
}

/// A power of i.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn from_exponent(e: i64) -> Self {
        Phase(e.rem_euclid(4) as u8)
    }

    pub fn exponent(self) -> u8 {
        self.0
    }

    pub fn mul(self, other: Phase) -> Phase {
        Phase((self.0 + other.0) & 3)
    }

    pub fn conj(self) -> Phase {
        Phase((4 - self.0) & 3)
    }

    pub fn is_real(self) -> bool {
        self.0 & 1 == 0
    }

    /// +1 or -1 for real phases.
    pub fn sign(self) -> Option<i32> {
        match self.0 {
            0 => Some(1),
            2 => Some(-1),
            _ => None,
        }
    }

    pub fn from_sign(negative: bool) -> Self {
        if negative {
            Phase::MINUS_ONE
        } else {
            Phase::ONE
        }
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.0 {
            0 => "+",
            1 => "+i",
            2 => "-",
            _ => "-i",
        })
    }
}

/// Element of the positive Pauli basis on `n` qubits. Qubit `i` lives in bit `i % 64`
/// of word `i / 64`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString {
    n: usize,
    x: Vec<u64>,
    z: Vec<u64>,
}

fn words(n: usize) -> usize {
    n.div_ceil(64)
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        PauliString {
            n,
            x: vec![0; words(n)],
            z: vec![0; words(n)],
        }
    }

    pub fn from_words(n: usize, x: Vec<u64>, z: Vec<u64>) -> Self {
        assert_eq!(x.len(), words(n));
        assert_eq!(z.len(), words(n));
        let mut p = PauliString { n, x, z };
        p.mask_tail();
        p
    }

    /// Single-word constructor for `n <= 64`.
    pub fn from_u64(n: usize, x: u64, z: u64) -> Self {
        assert!(n <= 64);
        let w = words(n);
        let mut p = PauliString {
            n,
            x: vec![x; w],
            z: vec![z; w],
        };
        p.mask_tail();
        p
    }

    pub fn single(n: usize, qubit: usize, p: Pauli1) -> Self {
        let mut s = PauliString::identity(n);
        s.set(qubit, p);
        s
    }

    fn mask_tail(&mut self) {
        let r = self.n % 64;
        if r != 0 {
            let m = (1u64 << r) - 1;
            if let Some(last) = self.x.last_mut() {
                *last &= m;
            }
            if let Some(last) = self.z.last_mut() {
                *last &= m;
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn xwords(&self) -> &[u64] {
        &self.x
    }

    pub fn zwords(&self) -> &[u64] {
        &self.z
    }

    /// X and Z words for `n <= 64`.
    pub fn as_u64(&self) -> (u64, u64) {
        assert!(self.n <= 64);
        (
            self.x.first().copied().unwrap_or(0),
            self.z.first().copied().unwrap_or(0),
        )
    }

    pub fn get(&self, i: usize) -> Pauli1 {
        assert!(i < self.n);
        let (w, b) = (i / 64, i % 64);
        Pauli1::from_bits(self.x[w] >> b & 1 == 1, self.z[w] >> b & 1 == 1)
    }

    pub fn set(&mut self, i: usize, p: Pauli1) {
        assert!(i < self.n);
        let (w, b) = (i / 64, i % 64);
        let (px, pz) = p.bits();
        self.x[w] = (self.x[w] & !(1 << b)) | ((px as u64) << b);
        self.z[w] = (self.z[w] & !(1 << b)) | ((pz as u64) << b);
    }

    pub fn weight(&self) -> usize {
        self.x
            .iter()
            .zip(&self.z)
            .map(|(x, z)| (x | z).count_ones() as usize)
            .sum()
    }

    pub fn is_identity(&self) -> bool {
        self.x.iter().chain(&self.z).all(|&w| w == 0)
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| self.get(i) != Pauli1::I).collect()
    }

    /// Restriction to the listed qubits, in that order.
    pub fn restrict(&self, qubits: &[usize]) -> PauliString {
        let mut out = PauliString::identity(qubits.len());
        for (j, &q) in qubits.iter().enumerate() {
            out.set(j, self.get(q));
        }
        out
    }

    /// Tensor product `self ⊗ other`.
    pub fn concat(&self, other: &PauliString) -> PauliString {
        let mut out = PauliString::identity(self.n + other.n);
        for i in 0..self.n {
            out.set(i, self.get(i));
        }
        for i in 0..other.n {
            out.set(self.n + i, other.get(i));
        }
        out
    }

    fn check_len(&self, other: &PauliString) -> Result<(), PauliError> {
        if self.n != other.n {
            return Err(PauliError::LengthMismatch(self.n, other.n));
        }
        Ok(())
    }

    /// Product ignoring phase.
    pub fn xor(&self, other: &PauliString) -> Result<PauliString, PauliError> {
        self.check_len(other)?;
        let mut out = self.clone();
        out.xor_assign(other);
        Ok(out)
    }

    pub fn xor_assign(&mut self, other: &PauliString) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.x.iter_mut().zip(&other.x) {
            *a ^= b;
        }
        for (a, b) in self.z.iter_mut().zip(&other.z) {
            *a ^= b;
        }
    }

    /// Symplectic form ⟨a.x,b.z⟩ + ⟨a.z,b.x⟩ mod 2.
    pub fn symplectic(&self, other: &PauliString) -> bool {
        let mut acc = 0u32;
        for i in 0..self.x.len() {
            acc ^= (self.x[i] & other.z[i]).count_ones() ^ (self.z[i] & other.x[i]).count_ones();
        }
        acc & 1 == 1
    }

    pub fn commutes(&self, other: &PauliString) -> bool {
        !self.symplectic(other)
    }

    /// Phase exponent e (mod 4) such that self·other = i^e (self ⊕ other).
    fn product_exponent(&self, other: &PauliString) -> i64 {
        let mut e: i64 = 0;
        for i in 0..self.x.len() {
            let (x1, z1, x2, z2) = (self.x[i], self.z[i], other.x[i], other.z[i]);
            e += (x1 & z1).count_ones() as i64;
            e += (x2 & z2).count_ones() as i64;
            e += 2 * (z1 & x2).count_ones() as i64;
            e -= ((x1 ^ x2) & (z1 ^ z2)).count_ones() as i64;
        }
        e
    }

    /// 2n-bit symplectic vector (x bits then z bits).
    pub(crate) fn to_bitvec(&self) -> BitVec {
        let mut v = BitVec::zeros(2 * self.n);
        for i in 0..self.n {
            let (x, z) = self.get(i).bits();
            v.set(i, x);
            v.set(self.n + i, z);
        }
        v
    }

    pub(crate) fn from_bitvec(n: usize, v: &BitVec) -> PauliString {
        let mut p = PauliString::identity(n);
        for i in 0..n {
            p.set(i, Pauli1::from_bits(v.get(i), v.get(n + i)));
        }
        p
    }

    /// All 4^n basis elements in lexicographic order with qubit 0 most significant.
    pub fn all(n: usize) -> impl Iterator<Item = PauliString> {
        assert!(n <= 16);
        (0..1u64 << (2 * n)).map(move |idx| PauliString::from_index(n, idx))
    }

    /// Base-4 index with digits I=0, X=1, Y=2, Z=3 and qubit 0 most significant.
    pub fn from_index(n: usize, idx: u64) -> PauliString {
        let mut p = PauliString::identity(n);
        for q in 0..n {
            let d = (idx >> (2 * (n - 1 - q))) & 3;
            p.set(q, Pauli1::ALL[d as usize]);
        }
        p
    }

    pub fn index(&self) -> u64 {
        let mut idx = 0u64;
        for q in 0..self.n {
            idx = idx * 4 + Pauli1::ALL.iter().position(|&p| p == self.get(q)).unwrap() as u64;
        }
        idx
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            write!(f, "{}", self.get(i).to_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliString({self})")
    }
}

impl FromStr for PauliString {
    type Err = PauliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let chars: Vec<char> = s.trim().chars().collect();
        let mut p = PauliString::identity(chars.len());
        for (i, c) in chars.into_iter().enumerate() {
            p.set(i, Pauli1::from_char(c)?);
        }
        Ok(p)
    }
}

/// A phase times a positive basis element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedPauli {
    pub phase: Phase,
    pub pauli: PauliString,
}

impl SignedPauli {
    pub fn new(phase: Phase, pauli: PauliString) -> Self {
        SignedPauli { phase, pauli }
    }

    pub fn positive(pauli: PauliString) -> Self {
        SignedPauli {
            phase: Phase::ONE,
            pauli,
        }
    }

    pub fn identity(n: usize) -> Self {
        SignedPauli::positive(PauliString::identity(n))
    }

    pub fn n(&self) -> usize {
        self.pauli.n()
    }

    /// μ(P): the scalar with P = μ(P)·Q, Q in the positive basis.
    pub fn mu(&self) -> Phase {
        self.phase
    }

    pub fn mul(&self, other: &SignedPauli) -> Result<SignedPauli, PauliError> {
        mul(self, other)
    }
}

impl fmt::Display for SignedPauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.phase, self.pauli)
    }
}

impl FromStr for SignedPauli {
    type Err = PauliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (phase, rest) = if let Some(r) = s.strip_prefix("+i") {
            (Phase::I, r)
        } else if let Some(r) = s.strip_prefix("-i") {
            (Phase::MINUS_I, r)
        } else if let Some(r) = s.strip_prefix('+') {
            (Phase::ONE, r)
        } else if let Some(r) = s.strip_prefix('-') {
            (Phase::MINUS_ONE, r)
        } else {
            (Phase::ONE, s)
        };
        Ok(SignedPauli {
            phase,
            pauli: rest.parse()?,
        })
    }
}

pub fn mul(a: &SignedPauli, b: &SignedPauli) -> Result<SignedPauli, PauliError> {
    a.pauli.check_len(&b.pauli)?;
    let e = a.pauli.product_exponent(&b.pauli);
    let phase = a.phase.mul(b.phase).mul(Phase::from_exponent(e));
    let mut pauli = a.pauli.clone();
    pauli.xor_assign(&b.pauli);
    Ok(SignedPauli { phase, pauli })
}

pub fn omega(a: &PauliString, b: &PauliString) -> Result<Phase, PauliError> {
    a.check_len(b)?;
    Ok(Phase::from_sign(a.symplectic(b)))
}

/// Enumerates all subset products of the generators in Gray-code order.
pub fn iter_group(gens: &[SignedPauli]) -> Result<GroupIter, PauliError> {
    iter_group_capped(gens, DEFAULT_GROUP_CAP)
}

pub fn iter_group_capped(gens: &[SignedPauli], cap: usize) -> Result<GroupIter, PauliError> {
    if gens.len() > cap {
        return Err(PauliError::CapExceeded {
            got: gens.len(),
            cap,
        });
    }
    let n = gens.first().map_or(0, |g| g.n());
    for g in gens {
        if g.n() != n {
            return Err(PauliError::LengthMismatch(n, g.n()));
        }
    }
    Ok(GroupIter::range(gens.to_vec(), n, 0..1u64 << gens.len()))
}

/// Gray-code walk over a range of subset indices. Index `i` corresponds to the subset
/// `i ^ (i >> 1)`, so disjoint index ranges may be walked independently.
pub struct GroupIter {
    gens: Vec<SignedPauli>,
    current: SignedPauli,
    next: u64,
    end: u64,
}

impl GroupIter {
    pub fn range(gens: Vec<SignedPauli>, n: usize, range: Range<u64>) -> Self {
        let mut current = SignedPauli::identity(n);
        let gray = range.start ^ (range.start >> 1);
        for (j, g) in gens.iter().enumerate() {
            if gray >> j & 1 == 1 {
                current = mul(&current, g).expect("checked lengths");
            }
        }
        GroupIter {
            gens,
            current,
            next: range.start,
            end: range.end,
        }
    }
}

impl Iterator for GroupIter {
    type Item = SignedPauli;

    fn next(&mut self) -> Option<SignedPauli> {
        if self.next >= self.end {
            return None;
        }
        let out = self.current.clone();
        self.next += 1;
        if self.next < self.end {
            let j = self.next.trailing_zeros() as usize;
            self.current = mul(&self.current, &self.gens[j]).expect("checked lengths");
            if (self.next ^ (self.next >> 1)) >> j & 1 == 0 {
                let sq = mul(&self.gens[j], &self.gens[j]).expect("checked lengths");
                self.current.phase = self.current.phase.mul(sq.phase.conj());
            }
        }
        Some(out)
    }
}

/// Dense GF(2) vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct BitVec {
    len: usize,
    w: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            w: vec![0; words(len)],
        }
    }

    pub fn get(&self, i: usize) -> bool {
        self.w[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, v: bool) {
        let b = 1u64 << (i % 64);
        if v {
            self.w[i / 64] |= b;
        } else {
            self.w[i / 64] &= !b;
        }
    }

    pub fn xor_assign(&mut self, o: &BitVec) {
        for (a, b) in self.w.iter_mut().zip(&o.w) {
            *a ^= b;
        }
    }
}

/// Row-reduces in place; returns pivot columns in row order.
fn rref(rows: &mut [BitVec], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i].get(c)) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row.get(c) {
                row.xor_assign(&pivot);
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

/// Basis of {v : row·v = 0 for all rows}.
fn kernel(rows: &[BitVec], ncols: usize) -> Vec<BitVec> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, ncols);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for f in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = BitVec::zeros(ncols);
        v.set(f, true);
        for (row, &p) in m.iter().zip(&pivots) {
            if row.get(f) {
                v.set(p, true);
            }
        }
        basis.push(v);
    }
    basis
}

fn rank(rows: &[BitVec], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, ncols).len()
}

/// Stabilizer code given by signed, commuting, independent generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerCode {
    n: usize,
    generators: Vec<SignedPauli>,
    normalizer: Vec<PauliString>,
    logical_x: Vec<PauliString>,
    logical_z: Vec<PauliString>,
}

impl StabilizerCode {
    pub fn new(n: usize, generators: Vec<SignedPauli>) -> Result<Self, PauliError> {
        if generators.len() > n {
            return Err(PauliError::TooManyGenerators {
                gens: generators.len(),
                n,
            });
        }
        for (i, g) in generators.iter().enumerate() {
            if g.n() != n {
                return Err(PauliError::LengthMismatch(n, g.n()));
            }
            if !g.phase.is_real() {
                return Err(PauliError::ComplexPhase(i));
            }
        }
        for i in 0..generators.len() {
            for j in i + 1..generators.len() {
                if generators[i].pauli.symplectic(&generators[j].pauli) {
                    return Err(PauliError::NonCommuting(i, j));
                }
            }
        }
        let mut rows: Vec<BitVec> = Vec::new();
        for (i, g) in generators.iter().enumerate() {
            rows.push(g.pauli.to_bitvec());
            if rank(&rows, 2 * n) < rows.len() {
                return Err(PauliError::Dependent(i));
            }
        }
        let mut code = StabilizerCode {
            n,
            generators,
            normalizer: vec![],
            logical_x: vec![],
            logical_z: vec![],
        };
        code.normalizer = code.compute_normalizer();
        let (lx, lz) = code.compute_logicals();
        code.logical_x = lx;
        code.logical_z = lz;
        Ok(code)
    }

    pub fn from_strs(gens: &[&str]) -> Result<Self, PauliError> {
        let gens = gens
            .iter()
            .map(|s| s.parse())
            .collect::<Result<Vec<SignedPauli>, _>>()?;
        let n = gens.first().map_or(0, |g| g.n());
        StabilizerCode::new(n, gens)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.n - self.generators.len()
    }

    pub fn generators(&self) -> &[SignedPauli] {
        &self.generators
    }

    pub fn stabilizer_paulis(&self) -> Vec<PauliString> {
        self.generators.iter().map(|g| g.pauli.clone()).collect()
    }

    /// Rows of the check map P ↦ (ω(P, S_j))_j, as 2n-bit vectors over (x, z).
    pub fn check_matrix(&self) -> Vec<Vec<bool>> {
        self.generators
            .iter()
            .map(|g| {
                let (gx, gz): (Vec<bool>, Vec<bool>) =
                    (0..self.n).map(|i| g.pauli.get(i).bits()).unzip();
                gz.into_iter().chain(gx).collect()
            })
            .collect()
    }

    fn check_rows(&self) -> Vec<BitVec> {
        self.generators
            .iter()
            .map(|g| {
                let mut v = BitVec::zeros(2 * self.n);
                for i in 0..self.n {
                    let (x, z) = g.pauli.get(i).bits();
                    v.set(i, z);
                    v.set(self.n + i, x);
                }
                v
            })
            .collect()
    }

    fn compute_normalizer(&self) -> Vec<PauliString> {
        kernel(&self.check_rows(), 2 * self.n)
            .iter()
            .map(|v| PauliString::from_bitvec(self.n, v))
            .collect()
    }

    fn compute_logicals(&self) -> (Vec<PauliString>, Vec<PauliString>) {
        let n = self.n;
        // X-type and Z-type normalizer elements go first so CSS-like codes get
        // pure-X and pure-Z logical representatives.
        let hz: Vec<BitVec> = self
            .generators
            .iter()
            .map(|g| {
                let mut v = BitVec::zeros(n);
                for i in 0..n {
                    v.set(i, g.pauli.get(i).bits().1);
                }
                v
            })
            .collect();
        let hx: Vec<BitVec> = self
            .generators
            .iter()
            .map(|g| {
                let mut v = BitVec::zeros(n);
                for i in 0..n {
                    v.set(i, g.pauli.get(i).bits().0);
                }
                v
            })
            .collect();
        let mut pool: Vec<PauliString> = Vec::new();
        for v in kernel(&hz, n) {
            let mut p = PauliString::identity(n);
            for i in (0..n).filter(|&i| v.get(i)) {
                p.set(i, Pauli1::X);
            }
            pool.push(p);
        }
        for v in kernel(&hx, n) {
            let mut p = PauliString::identity(n);
            for i in (0..n).filter(|&i| v.get(i)) {
                p.set(i, Pauli1::Z);
            }
            pool.push(p);
        }
        pool.extend(self.normalizer.iter().cloned());

        let mut lx = Vec::new();
        let mut lz = Vec::new();
        while !pool.is_empty() {
            let a = pool.remove(0);
            let Some(bi) = pool.iter().position(|b| a.symplectic(b)) else {
                continue;
            };
            let b = pool.remove(bi);
            for v in pool.iter_mut() {
                let with_b = v.symplectic(&b);
                let with_a = v.symplectic(&a);
                if with_b {
                    v.xor_assign(&a);
                }
                if with_a {
                    v.xor_assign(&b);
                }
            }
            lx.push(a);
            lz.push(b);
        }
        debug_assert_eq!(lx.len(), self.k());
        (lx, lz)
    }

    pub fn syndrome(&self, e: &PauliString) -> Result<Vec<bool>, PauliError> {
        if e.n() != self.n {
            return Err(PauliError::LengthMismatch(self.n, e.n()));
        }
        Ok(self
            .generators
            .iter()
            .map(|g| e.symplectic(&g.pauli))
            .collect())
    }

    pub fn in_normalizer(&self, e: &PauliString) -> bool {
        self.generators.iter().all(|g| e.commutes(&g.pauli))
    }

    /// Whether `e` lies in the stabilizer group up to sign.
    pub fn in_stabilizer(&self, e: &PauliString) -> bool {
        self.in_normalizer(e)
            && self
                .logical_x
                .iter()
                .chain(&self.logical_z)
                .all(|l| e.commutes(l))
    }

    /// Generators of the normalizer as positive basis elements; n + k of them.
    pub fn normalizer_basis(&self) -> &[PauliString] {
        &self.normalizer
    }

    pub fn logical_x(&self) -> &[PauliString] {
        &self.logical_x
    }

    pub fn logical_z(&self) -> &[PauliString] {
        &self.logical_z
    }

    /// Logical operator components (x-part, z-part) of a normalizer element, read off
    /// from its commutation with the chosen logical representatives.
    pub fn logical_class(&self, e: &PauliString) -> (Vec<bool>, Vec<bool>) {
        let xs = self.logical_z.iter().map(|l| e.symplectic(l)).collect();
        let zs = self.logical_x.iter().map(|l| e.symplectic(l)).collect();
        (xs, zs)
    }

    /// Text in the code file format.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for g in &self.generators {
            s.push(if g.phase == Phase::MINUS_ONE {
                '-'
            } else {
                '+'
            });
            s.push_str(&g.pauli.to_string());
            s.push('\n');
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sp(s: &str) -> SignedPauli {
        s.parse().unwrap()
    }

    fn perfect() -> StabilizerCode {
        StabilizerCode::from_strs(&["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"]).unwrap()
    }

    #[test]
    fn single_qubit_products() {
        assert_eq!(mul(&sp("X"), &sp("Z")).unwrap(), sp("-iY"));
        assert_eq!(mul(&sp("Z"), &sp("X")).unwrap(), sp("+iY"));
        assert_eq!(mul(&sp("X"), &sp("Y")).unwrap(), sp("+iZ"));
        assert_eq!(mul(&sp("Y"), &sp("Y")).unwrap(), sp("I"));
        assert_eq!(mul(&sp("III"), &sp("XYZ")).unwrap(), sp("XYZ"));
    }

    #[test]
    fn perfect_generator_product() {
        assert_eq!(mul(&sp("XZZXI"), &sp("IXZZX")).unwrap(), sp("XYIYX"));
        assert_eq!(
            omega(&"XZZXI".parse().unwrap(), &"IXZZX".parse().unwrap()).unwrap(),
            Phase::ONE
        );
        assert_eq!(
            omega(&"X".parse().unwrap(), &"Z".parse().unwrap()).unwrap(),
            Phase::MINUS_ONE
        );
    }

    #[test]
    fn length_mismatch() {
        assert!(matches!(
            mul(&sp("X"), &sp("XX")),
            Err(PauliError::LengthMismatch(1, 2))
        ));
    }

    #[test]
    fn perfect_code_data() {
        let c = perfect();
        assert_eq!((c.n(), c.k()), (5, 1));
        assert_eq!(
            c.syndrome(&"IIIII".parse().unwrap()).unwrap(),
            vec![false; 4]
        );
        assert_eq!(
            c.syndrome(&"XIIII".parse().unwrap()).unwrap(),
            vec![false, false, false, true]
        );
        assert_eq!(c.normalizer_basis().len(), 6);
        assert_eq!(c.logical_x()[0].to_string(), "XXXXX");
        assert_eq!(c.logical_z()[0].to_string(), "ZZZZZ");
        let els: Vec<_> = iter_group(c.generators()).unwrap().collect();
        assert_eq!(els.len(), 16);
        assert!(els.iter().all(|e| matches!(e.pauli.weight(), 0 | 4)));
    }

    #[test]
    fn group_walk_matches_subset_products() {
        let c = perfect();
        let gens = c.generators();
        let mut walked: Vec<SignedPauli> = iter_group(gens).unwrap().collect();
        let mut direct = Vec::new();
        for s in 0u64..16 {
            let mut acc = SignedPauli::identity(5);
            for (j, g) in gens.iter().enumerate() {
                if s >> j & 1 == 1 {
                    acc = mul(&acc, g).unwrap();
                }
            }
            direct.push(acc);
        }
        let key = |p: &SignedPauli| (p.pauli.clone(), p.phase.exponent());
        walked.sort_by_key(key);
        direct.sort_by_key(key);
        assert_eq!(walked, direct);
    }

    #[test]
    fn signed_walk_with_non_hermitian_generator() {
        let gens = vec![sp("+iXX"), sp("ZZ")];
        let mut got: Vec<_> = iter_group(&gens).unwrap().map(|p| p.to_string()).collect();
        got.sort();
        let mut want = vec!["+II", "+iXX", "+ZZ", "-iYY"];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn empty_group_and_cap() {
        assert_eq!(iter_group(&[]).unwrap().count(), 1);
        let gens = vec![sp("X"); 3];
        assert!(matches!(
            iter_group_capped(&gens, 2),
            Err(PauliError::CapExceeded { got: 3, cap: 2 })
        ));
    }

    #[test]
    fn validation_errors() {
        assert_eq!(
            StabilizerCode::from_strs(&["XIIII", "ZIIII"]),
            Err(PauliError::NonCommuting(0, 1))
        );
        assert_eq!(
            StabilizerCode::from_strs(&["XZZXI", "XZZXI"]),
            Err(PauliError::Dependent(1))
        );
        assert_eq!(
            StabilizerCode::from_strs(&["+iXX"]),
            Err(PauliError::ComplexPhase(0))
        );
    }

    #[test]
    fn duality_sums_on_perfect_code() {
        let c = perfect();
        let stab: Vec<_> = iter_group(c.generators())
            .unwrap()
            .map(|s| s.pauli)
            .collect();
        let norm: Vec<_> = iter_group(
            &c.normalizer_basis()
                .iter()
                .cloned()
                .map(SignedPauli::positive)
                .collect::<Vec<_>>(),
        )
        .unwrap()
        .map(|s| s.pauli)
        .collect();
        assert_eq!(norm.len(), 64);
        for e in PauliString::all(5) {
            let s: i64 = stab
                .iter()
                .map(|d| if d.symplectic(&e) { -1 } else { 1 })
                .sum();
            let nsum: i64 = norm
                .iter()
                .map(|d| if d.symplectic(&e) { -1 } else { 1 })
                .sum();
            assert_eq!(s, if c.in_normalizer(&e) { 16 } else { 0 });
            assert_eq!(nsum, if stab.contains(&e) { 64 } else { 0 });
            assert_eq!(c.in_stabilizer(&e), stab.contains(&e));
        }
        assert!(norm
            .iter()
            .all(|e| c.syndrome(e).unwrap().iter().all(|b| !b)));
    }

    fn arb_signed(n: usize) -> impl Strategy<Value = SignedPauli> {
        (0u8..4, proptest::collection::vec(0usize..4, n)).prop_map(move |(ph, ds)| {
            let mut p = PauliString::identity(ds.len());
            for (i, d) in ds.into_iter().enumerate() {
                p.set(i, Pauli1::ALL[d]);
            }
            SignedPauli::new(Phase::from_exponent(ph as i64), p)
        })
    }

    proptest! {
        #[test]
        fn mul_associative(a in arb_signed(70), b in arb_signed(70), c in arb_signed(70)) {
            let l = mul(&mul(&a, &b).unwrap(), &c).unwrap();
            let r = mul(&a, &mul(&b, &c).unwrap()).unwrap();
            prop_assert_eq!(l, r);
        }

        #[test]
        fn omega_bicharacter(a in arb_signed(7), b in arb_signed(7), c in arb_signed(7)) {
            let (a, b, c) = (a.pauli, b.pauli, c.pauli);
            let ab = omega(&a, &b).unwrap();
            prop_assert_eq!(ab.mul(omega(&b, &a).unwrap()), Phase::ONE);
            let bc = b.xor(&c).unwrap();
            prop_assert_eq!(omega(&a, &bc).unwrap(), ab.mul(omega(&a, &c).unwrap()));
        }

        #[test]
        fn commutator_phase_matches_omega(a in arb_signed(9), b in arb_signed(9)) {
            let ab = mul(&a, &b).unwrap();
            let ba = mul(&b, &a).unwrap();
            prop_assert_eq!(ab.pauli, ba.pauli.clone());
            let ratio = ab.phase.mul(ba.phase.conj());
            prop_assert_eq!(ratio, omega(&a.pauli, &b.pauli).unwrap());
        }

        #[test]
        fn index_round_trip(idx in 0u64..4096) {
            prop_assert_eq!(PauliString::from_index(6, idx).index(), idx);
        }
    }
}
