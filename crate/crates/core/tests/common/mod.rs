//! Dense complex-matrix oracles and random channels shared by the integration tests.
#![allow(dead_code)]

use num_complex::Complex64 as C;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qect_core::enumerator::{coefficient_map, NoiseModel};
use qect_core::oracle::{collect, PathClass, PathCounts};
use qect_core::pauli::{mul, omega, PauliString, SignedPauli, StabilizerCode};
use qect_core::poly::{Coefficient, Polynomial, Ring};
use qect_core::tensor::dense::Matrix;
use qect_core::tensor::{tensor_from_kraus, tensor_from_operators, CircuitTensor, Signature};

/// Row-major square complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Dense {
    pub d: usize,
    pub a: Vec<C>,
}

impl Dense {
    pub fn zeros(d: usize) -> Self {
        Dense {
            d,
            a: vec![C::new(0.0, 0.0); d * d],
        }
    }

    pub fn identity(d: usize) -> Self {
        let mut m = Dense::zeros(d);
        for i in 0..d {
            m.a[i * d + i] = C::new(1.0, 0.0);
        }
        m
    }

    pub fn at(&self, r: usize, c: usize) -> C {
        self.a[r * self.d + c]
    }

    pub fn mul(&self, o: &Dense) -> Dense {
        let d = self.d;
        let mut m = Dense::zeros(d);
        for r in 0..d {
            for k in 0..d {
                let x = self.at(r, k);
                for c in 0..d {
                    m.a[r * d + c] += x * o.at(k, c);
                }
            }
        }
        m
    }

    pub fn add(&self, o: &Dense) -> Dense {
        Dense {
            d: self.d,
            a: self.a.iter().zip(&o.a).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn scale(&self, k: C) -> Dense {
        Dense {
            d: self.d,
            a: self.a.iter().map(|x| x * k).collect(),
        }
    }

    pub fn adjoint(&self) -> Dense {
        let d = self.d;
        let mut m = Dense::zeros(d);
        for r in 0..d {
            for c in 0..d {
                m.a[c * d + r] = self.at(r, c).conj();
            }
        }
        m
    }

    pub fn kron(&self, o: &Dense) -> Dense {
        let d = self.d * o.d;
        let mut m = Dense::zeros(d);
        for r in 0..d {
            for c in 0..d {
                m.a[r * d + c] = self.at(r / o.d, c / o.d) * o.at(r % o.d, c % o.d);
            }
        }
        m
    }

    pub fn trace(&self) -> C {
        (0..self.d).map(|i| self.at(i, i)).sum()
    }

    pub fn close(&self, o: &Dense, tol: f64) -> bool {
        self.a.iter().zip(&o.a).all(|(x, y)| (x - y).norm() <= tol)
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_complex(self.d, self.d, &self.a)
    }
}

pub fn pauli1(c: char) -> Dense {
    let (o, z, i) = (C::new(1.0, 0.0), C::new(0.0, 0.0), C::new(0.0, 1.0));
    let a = match c {
        'I' => vec![o, z, z, o],
        'X' => vec![z, o, o, z],
        'Y' => vec![z, -i, i, z],
        'Z' => vec![o, z, z, -o],
        _ => panic!("not a Pauli: {c}"),
    };
    Dense { d: 2, a }
}

/// Operator of a Pauli string, qubit 0 leftmost.
pub fn pauli_dense(p: &PauliString) -> Dense {
    p.to_string()
        .chars()
        .fold(Dense::identity(1), |m, c| m.kron(&pauli1(c)))
}

pub fn phase_value(e: u8) -> C {
    [
        C::new(1.0, 0.0),
        C::new(0.0, 1.0),
        C::new(-1.0, 0.0),
        C::new(0.0, -1.0),
    ][e as usize & 3]
}

/// Circuit tensor of a channel on n qubits straight from the trace formula:
/// entry (E, E′) = (1/d) Σ_j Tr(E† A_j† E′ A_j).
pub fn oracle_tensor(kraus: &[Dense], n: usize) -> Vec<(String, String, C)> {
    let d = (1usize << n) as f64;
    let paulis: Vec<(String, Dense)> = PauliString::all(n)
        .map(|p| (p.to_string(), pauli_dense(&p)))
        .collect();
    let mut out = Vec::new();
    for (si, ei) in &paulis {
        for (so, eo) in &paulis {
            let v: C = kraus
                .iter()
                .map(|a| ei.adjoint().mul(&a.adjoint()).mul(eo).mul(a).trace())
                .sum();
            out.push((si.clone(), so.clone(), v / d));
        }
    }
    out
}

/// Largest deviation between a constant tensor and oracle entries (missing entries read as 0).
pub fn deviation(t: &CircuitTensor, oracle: &[(String, String, C)]) -> f64 {
    let mut worst: f64 = 0.0;
    let mut seen = 0usize;
    for (i, o, v) in oracle {
        let got = match t.entry(i, o).expect("labels") {
            Some(p) => {
                seen += 1;
                p.constant_term().to_complex()
            }
            None => C::new(0.0, 0.0),
        };
        worst = worst.max((got - v).norm());
    }
    if seen != t.len() {
        return f64::INFINITY;
    }
    worst
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_complex(r: &mut ChaCha8Rng) -> C {
    C::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0))
}

pub fn random_dense(r: &mut ChaCha8Rng, d: usize) -> Dense {
    Dense {
        d,
        a: (0..d * d).map(|_| random_complex(r)).collect(),
    }
}

/// Columns of a random (rows × cols) matrix made orthonormal by Gram-Schmidt.
fn random_isometry(r: &mut ChaCha8Rng, rows: usize, cols: usize) -> Vec<Vec<C>> {
    let mut basis: Vec<Vec<C>> = Vec::new();
    while basis.len() < cols {
        let mut v: Vec<C> = (0..rows).map(|_| random_complex(r)).collect();
        for b in &basis {
            let p: C = b.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi -= p * bi;
            }
        }
        let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            basis.push(v.into_iter().map(|x| x / norm).collect());
        }
    }
    basis
}

/// Kraus operators A_0..A_{k-1} of a random channel: blocks of a random isometry C^d → C^{kd}.
pub fn random_kraus(r: &mut ChaCha8Rng, d: usize, k: usize) -> Vec<Dense> {
    let cols = random_isometry(r, k * d, d);
    (0..k)
        .map(|j| {
            let mut m = Dense::zeros(d);
            for row in 0..d {
                for (c, col) in cols.iter().enumerate() {
                    m.a[row * d + c] = col[j * d + row];
                }
            }
            m
        })
        .collect()
}

pub fn random_unitary(r: &mut ChaCha8Rng, d: usize) -> Dense {
    let cols = random_isometry(r, d, d);
    let mut m = Dense::zeros(d);
    for (c, col) in cols.iter().enumerate() {
        for (row, v) in col.iter().enumerate() {
            m.a[row * d + c] = *v;
        }
    }
    m
}

pub fn kraus_tensor(kraus: &[Dense], n: usize) -> CircuitTensor {
    let ms: Vec<Matrix> = kraus.iter().map(Dense::to_matrix).collect();
    tensor_from_kraus(&ms, &Signature::qubits(n), &Signature::qubits(n)).expect("trace preserving")
}

pub fn operator_tensor(a: &Dense, n: usize) -> CircuitTensor {
    tensor_from_operators(
        &[a.to_matrix()],
        &Signature::qubits(n),
        &Signature::qubits(n),
    )
    .expect("square operator")
}

/// Pauli product and commutation phase agree with the matrices, and multiplication is associative.
pub fn pauli_algebra(a: &SignedPauli, b: &SignedPauli, c: &SignedPauli) -> Result<(), String> {
    let dense = |p: &SignedPauli| pauli_dense(&p.pauli).scale(phase_value(p.phase.exponent()));
    let ab = mul(a, b).map_err(|e| e.to_string())?;
    if !dense(&ab).close(&dense(a).mul(&dense(b)), 1e-12) {
        return Err(format!(
            "{a} * {b} = {ab} disagrees with the matrix product"
        ));
    }
    let left = mul(&ab, c).map_err(|e| e.to_string())?;
    let right = mul(a, &mul(b, c).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    if left != right {
        return Err(format!(
            "({a} {b}) {c} = {left} but {a} ({b} {c}) = {right}"
        ));
    }
    let w = omega(&a.pauli, &b.pauli).map_err(|e| e.to_string())?;
    let ba = dense(b).mul(&dense(a)).scale(phase_value(w.exponent()));
    if !dense(a).mul(&dense(b)).close(&ba, 1e-12) {
        return Err(format!("PQ = ω(P,Q) QP fails for {a}, {b}"));
    }
    Ok(())
}

/// ω(PQ, R) = ω(P, R) ω(Q, R), symmetry, and ω(P, P) = 1.
pub fn bicharacter(p: &PauliString, q: &PauliString, r: &PauliString) -> Result<(), String> {
    let w = |a: &PauliString, b: &PauliString| omega(a, b).expect("same length");
    let pq = p.xor(q).expect("same length");
    if w(&pq, r) != w(p, r).mul(w(q, r)) {
        return Err(format!("ω({p}{q}, {r}) is not multiplicative"));
    }
    if w(p, q) != w(q, p) || w(p, p).exponent() != 0 {
        return Err(format!(
            "ω not symmetric or not trivial on the diagonal for {p}, {q}"
        ));
    }
    Ok(())
}

/// Σ_{S∈𝒮} ω(E,S) = 2^{n−k}·[E ∈ 𝒩] and Σ_{N∈𝒩} ω(E,N) = 2^{n+k}·[E ∈ 𝒮], with both groups
/// generated here by brute force from the check matrix.
pub fn duality_sums(
    code: &StabilizerCode,
    stab: &[PauliString],
    norm: &[PauliString],
    e: &PauliString,
) -> Result<(), String> {
    let sum =
        |g: &[PauliString]| -> i64 { g.iter().map(|s| if e.symplectic(s) { -1 } else { 1 }).sum() };
    let (n, k) = (code.n() as u32, code.k() as u32);
    let in_n = stab.iter().all(|s| !e.symplectic(s));
    let in_s = stab.contains(e);
    let want_s = if in_n { 1i64 << (n - k) } else { 0 };
    let want_n = if in_s { 1i64 << (n + k) } else { 0 };
    if sum(stab) != want_s || sum(norm) != want_n {
        return Err(format!(
            "duality sums fail at {e}: {} / {}",
            sum(stab),
            sum(norm)
        ));
    }
    if in_n != code.in_normalizer(e) || in_s != code.in_stabilizer(e) {
        return Err(format!("membership disagrees at {e}"));
    }
    Ok(())
}

/// Stabilizer group and normalizer of a small code by exhaustive search.
pub fn brute_force_groups(code: &StabilizerCode) -> (Vec<PauliString>, Vec<PauliString>) {
    let gens: Vec<PauliString> = code.generators().iter().map(|g| g.pauli.clone()).collect();
    let mut stab = Vec::new();
    for mask in 0u32..1 << gens.len() {
        let mut p = PauliString::identity(code.n());
        for (j, g) in gens.iter().enumerate() {
            if mask >> j & 1 == 1 {
                p.xor_assign(g);
            }
        }
        stab.push(p);
    }
    let norm = PauliString::all(code.n())
        .filter(|e| gens.iter().all(|g| !e.symplectic(g)))
        .collect();
    (stab, norm)
}

/// Two Kraus decompositions related by a unitary mixing give the same tensor.
pub fn kraus_independence(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let n = r.gen_range(1..=2usize);
    let d = 1 << n;
    let k = r.gen_range(2..=3usize);
    let kraus = random_kraus(&mut r, d, k);
    let u = random_unitary(&mut r, k);
    let mixed: Vec<Dense> = (0..k)
        .map(|i| {
            (0..k).fold(Dense::zeros(d), |acc, j| {
                acc.add(&kraus[j].scale(u.at(i, j)))
            })
        })
        .collect();
    let (t1, t2) = (kraus_tensor(&kraus, n), kraus_tensor(&mixed, n));
    if !t1.approx_eq(&t2, 1e-9) {
        return Err(format!(
            "seed {seed}: tensors differ between Kraus decompositions"
        ));
    }
    Ok(())
}

/// ⟦BA⟧ = ⟦A⟧⟦B⟧ for random operators, checked against the trace-formula oracle.
pub fn composition(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let n = r.gen_range(1..=2usize);
    let d = 1 << n;
    let (a, b) = (random_dense(&mut r, d), random_dense(&mut r, d));
    let composed = operator_tensor(&a, n)
        .compose(&operator_tensor(&b, n))
        .map_err(|e| e.to_string())?;
    let dev = deviation(&composed, &oracle_tensor(&[b.mul(&a)], n));
    if dev > 1e-9 {
        return Err(format!(
            "seed {seed}: composition deviates from the oracle by {dev:e}"
        ));
    }
    Ok(())
}

/// Exact equality of two polynomials over possibly different variable tables.
pub fn same_poly(got: &Polynomial, want: &Polynomial) -> Result<(), String> {
    let (g, w) = (coefficient_map(got), coefficient_map(want));
    if g == w {
        return Ok(());
    }
    let mut diffs = Vec::new();
    for key in g
        .keys()
        .chain(w.keys())
        .collect::<std::collections::BTreeSet<_>>()
    {
        let zero = Coefficient::zero(Ring::Exact);
        let (a, b) = (g.get(key).unwrap_or(&zero), w.get(key).unwrap_or(&zero));
        if a != b {
            diffs.push(format!("{} got {a} want {b}", monomial_name(key)));
        }
    }
    Err(diffs.join("; "))
}

pub fn monomial_name(key: &[(String, u16)]) -> String {
    if key.is_empty() {
        return "1".into();
    }
    key.iter()
        .map(|(v, e)| {
            if *e == 1 {
                v.clone()
            } else {
                format!("{v}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Bounded oracle counts on the model's variables, keyed like [`coefficient_map`].
pub fn oracle_counts(
    counts: &PathCounts,
    model: &NoiseModel,
    pred: impl Fn(&PathClass) -> bool,
) -> std::collections::BTreeMap<Vec<(String, u16)>, u64> {
    let vars = model.variables();
    collect(counts, pred)
        .into_iter()
        .map(|(e, c)| {
            let mut key: Vec<(String, u16)> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| (vars.names()[i].clone(), x))
                .collect();
            key.sort();
            (key, c)
        })
        .collect()
}
