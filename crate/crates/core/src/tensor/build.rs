//! Constructors for circuit tensors of states, gates, measurements, classical logic and noise.

use std::sync::Arc;

use num_complex::Complex64;

use super::dense::{clock_matrix, pauli_matrix, zeta, Matrix};
use super::{
    empty_vars, label_pauli, pauli_label, CircuitTensor, Label, Signature, TensorError, Wire,
};
use crate::pauli::{iter_group, mul, Pauli1, PauliString, Phase, SignedPauli, StabilizerCode};
use crate::poly::{Coefficient, Polynomial, Ring, VarTable, FLOAT_TOL};

fn konst(c: Coefficient) -> Polynomial {
    Polynomial::constant(&empty_vars(), c)
}

fn one() -> Coefficient {
    Coefficient::one(Ring::Exact)
}

pub fn identity_tensor(sig: &Signature) -> CircuitTensor {
    let mut t = CircuitTensor::new(sig.clone(), sig.clone(), Ring::Exact);
    for l in sig.all_labels() {
        t.entries.insert((l.clone(), l), konst(one()));
    }
    t
}

/// Operator on the wire space for a label: ⊗ of Paulis and clock operators.
pub fn basis_matrix(sig: &Signature, label: &[u8]) -> Matrix {
    let mut m = Matrix::identity(Ring::Exact, 1);
    for (w, &a) in sig.wires().iter().zip(label) {
        let f = match w {
            Wire::Quantum => pauli_matrix(Pauli1::ALL[a as usize]),
            Wire::Classical(k) | Wire::Noise { arity: k, .. } => clock_matrix(*k, a as u32),
        };
        m = m.kron(&f);
    }
    m
}

/// Entry (E, E') = (1/dim in) Σ_j Tr(E† A_j† E' A_j), for arbitrary operators A_j.
pub fn tensor_from_operators(
    ops: &[Matrix],
    ins: &Signature,
    outs: &Signature,
) -> Result<CircuitTensor, TensorError> {
    let (din, dout) = (ins.dim(), outs.dim());
    for a in ops {
        if a.rows() != dout || a.cols() != din {
            return Err(TensorError::Dimension {
                got: a.rows() * a.cols(),
                want: din * dout,
            });
        }
    }
    let ring = if ops.iter().any(|a| a.ring() == Ring::Float)
        || ins
            .wires()
            .iter()
            .chain(outs.wires())
            .any(|w| w.arity().is_some_and(|m| !matches!(m, 2 | 4)))
    {
        Ring::Float
    } else {
        Ring::Exact
    };
    let inv = Coefficient::from_ratio(ring, 1, din as i64);
    let in_basis: Vec<(Label, Matrix)> = ins
        .all_labels()
        .into_iter()
        .map(|l| {
            let m = basis_matrix(ins, &l);
            (l, m)
        })
        .collect();
    let adj: Vec<Matrix> = ops.iter().map(Matrix::adjoint).collect();
    let mut t = CircuitTensor::new(ins.clone(), outs.clone(), ring);
    for lo in outs.all_labels() {
        let eo = basis_matrix(outs, &lo);
        let mut m = Matrix::zeros(ring, din, din);
        for (a, ad) in ops.iter().zip(&adj) {
            m = m.add(&ad.mul(&eo).mul(a));
        }
        for (li, ei) in &in_basis {
            let c = ei.inner(&m).mul(&inv).to_ring(ring);
            if !c.is_zero() {
                t.add_const(li.clone(), lo.clone(), c)?;
            }
        }
    }
    Ok(t)
}

pub fn tensor_from_kraus(
    kraus: &[Matrix],
    ins: &Signature,
    outs: &Signature,
) -> Result<CircuitTensor, TensorError> {
    let din = ins.dim();
    let mut sum = Matrix::zeros(Ring::Exact, din, din);
    for a in kraus {
        if a.cols() != din {
            return Err(TensorError::Dimension {
                got: a.cols(),
                want: din,
            });
        }
        sum = sum.add(&a.adjoint().mul(a));
    }
    if !sum.is_identity() {
        return Err(TensorError::NotTracePreserving);
    }
    tensor_from_operators(kraus, ins, outs)
}

fn qubit_count(d: usize) -> Option<usize> {
    d.is_power_of_two().then(|| d.trailing_zeros() as usize)
}

pub fn tensor_from_unitary(u: &Matrix) -> Result<CircuitTensor, TensorError> {
    if u.rows() != u.cols() {
        return Err(TensorError::NotSquare);
    }
    let n = qubit_count(u.rows()).ok_or(TensorError::Dimension {
        got: u.rows(),
        want: 2,
    })?;
    if !u.adjoint().mul(u).is_identity() {
        return Err(TensorError::NotUnitary);
    }
    tensor_from_operators(
        std::slice::from_ref(u),
        &Signature::qubits(n),
        &Signature::qubits(n),
    )
}

/// Images of X_i and Z_i under conjugation by a Clifford unitary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliffordTable {
    pub x_images: Vec<SignedPauli>,
    pub z_images: Vec<SignedPauli>,
}

impl CliffordTable {
    pub fn identity(n: usize) -> Self {
        CliffordTable {
            x_images: (0..n)
                .map(|i| SignedPauli::positive(PauliString::single(n, i, Pauli1::X)))
                .collect(),
            z_images: (0..n)
                .map(|i| SignedPauli::positive(PauliString::single(n, i, Pauli1::Z)))
                .collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.x_images.len()
    }

    /// Table from strings like `["+ZI", "+XX"]` for X images and Z images.
    pub fn from_strs(xs: &[&str], zs: &[&str]) -> Result<Self, TensorError> {
        let p = |v: &[&str]| {
            v.iter()
                .map(|s| s.parse::<SignedPauli>())
                .collect::<Result<Vec<_>, _>>()
        };
        Ok(CliffordTable {
            x_images: p(xs)?,
            z_images: p(zs)?,
        })
    }

    pub fn validate(&self) -> Result<(), TensorError> {
        let n = self.n();
        if self.z_images.len() != n {
            return Err(TensorError::BadClifford("image count".into()));
        }
        let all: Vec<&SignedPauli> = self.x_images.iter().chain(&self.z_images).collect();
        for (i, a) in all.iter().enumerate() {
            if a.n() != n {
                return Err(TensorError::BadClifford(format!(
                    "image {a} has wrong length"
                )));
            }
            if !a.phase.is_real() {
                return Err(TensorError::BadClifford(format!(
                    "image {a} is not hermitian"
                )));
            }
            for (j, b) in all.iter().enumerate() {
                let anti = i != j && (i % n == j % n) && (i / n != j / n);
                if a.pauli.symplectic(&b.pauli) != anti {
                    return Err(TensorError::BadClifford(format!(
                        "{a} and {b} have the wrong commutation"
                    )));
                }
            }
        }
        Ok(())
    }

    /// G P G† for a positive basis element P.
    pub fn conjugate(&self, p: &PauliString) -> SignedPauli {
        let n = self.n();
        let mut acc = SignedPauli::identity(n);
        let mut xz = 0i64;
        for i in 0..n {
            let (x, _) = p.get(i).bits();
            if x {
                acc = mul(&acc, &self.x_images[i]).expect("validated");
            }
        }
        for i in 0..n {
            let (x, z) = p.get(i).bits();
            if z {
                acc = mul(&acc, &self.z_images[i]).expect("validated");
                if x {
                    xz += 1;
                }
            }
        }
        acc.phase = acc.phase.mul(Phase::from_exponent(xz));
        acc
    }
}

pub fn tensor_from_clifford(table: &CliffordTable) -> Result<CircuitTensor, TensorError> {
    table.validate()?;
    let n = table.n();
    let sig = Signature::qubits(n);
    let mut t = CircuitTensor::new(sig.clone(), sig, Ring::Exact);
    for p in PauliString::all(n) {
        let img = table.conjugate(&p);
        let sign = img
            .phase
            .sign()
            .ok_or_else(|| TensorError::BadClifford(format!("image of {p} is {img}")))?;
        t.add_const(
            pauli_label(&p),
            pauli_label(&img.pauli),
            Coefficient::from_int(Ring::Exact, sign as i64),
        )?;
    }
    Ok(t)
}

/// Conjugation table of a named Clifford gate.
pub fn clifford_table(name: &str) -> Option<CliffordTable> {
    let t = |x: &[&str], z: &[&str]| CliffordTable::from_strs(x, z).ok();
    match name.to_ascii_uppercase().as_str() {
        "I" | "ID" => t(&["X"], &["Z"]),
        "H" => t(&["Z"], &["X"]),
        "S" => t(&["Y"], &["Z"]),
        "SDG" | "S†" => t(&["-Y"], &["Z"]),
        "X" => t(&["X"], &["-Z"]),
        "Y" => t(&["-X"], &["-Z"]),
        "Z" => t(&["-X"], &["Z"]),
        "SX" | "SQRTX" => t(&["X"], &["-Y"]),
        "CX" | "CNOT" => t(&["XX", "IX"], &["ZI", "ZZ"]),
        "CZ" => t(&["XZ", "ZX"], &["ZI", "IZ"]),
        "SWAP" => t(&["IX", "XI"], &["IZ", "ZI"]),
        _ => None,
    }
}

pub fn t_gate_matrix(dagger: bool) -> Matrix {
    let s = if dagger { -1.0 } else { 1.0 };
    let w = Complex64::from_polar(1.0, s * std::f64::consts::FRAC_PI_4);
    let (o, z) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
    Matrix::from_complex(2, 2, &[o, z, z, w])
}

/// Tensor of a named gate: Cliffords exactly, T and T† in floating point.
pub fn named_gate(name: &str) -> Option<CircuitTensor> {
    if let Some(t) = clifford_table(name) {
        return tensor_from_clifford(&t).ok();
    }
    match name.to_ascii_uppercase().as_str() {
        "T" => tensor_from_unitary(&t_gate_matrix(false)).ok(),
        "TDG" | "T†" => tensor_from_unitary(&t_gate_matrix(true)).ok(),
        _ => None,
    }
}

/// ⟦P⟧ = Σ_E ω(E, P) e^E_E.
pub fn pauli_tensor(p: &PauliString) -> CircuitTensor {
    let sig = Signature::qubits(p.n());
    let mut t = CircuitTensor::new(sig.clone(), sig, Ring::Exact);
    for e in PauliString::all(p.n()) {
        let s = if e.symplectic(p) { -1 } else { 1 };
        t.entries.insert(
            (pauli_label(&e), pauli_label(&e)),
            konst(Coefficient::from_int(Ring::Exact, s)),
        );
    }
    t
}

/// Stabilizer state given by n independent commuting generators with phases ±1.
pub fn tensor_state_prep(gens: &[SignedPauli]) -> Result<CircuitTensor, TensorError> {
    let n = gens.first().map_or(0, SignedPauli::n);
    let code = StabilizerCode::new(n, gens.to_vec())
        .map_err(|e| TensorError::BadStabilizerState(e.to_string()))?;
    if code.k() != 0 {
        return Err(TensorError::BadStabilizerState(format!(
            "{} generators on {n} qubits",
            gens.len()
        )));
    }
    let mut t = CircuitTensor::new(Signature::empty(), Signature::qubits(n), Ring::Exact);
    for s in iter_group(gens)? {
        let sign = s.phase.sign().ok_or(TensorError::ComplexPhase)?;
        t.add_const(
            vec![],
            pauli_label(&s.pauli),
            Coefficient::from_int(Ring::Exact, sign as i64),
        )?;
    }
    Ok(t)
}

/// Named single- and two-qubit stabilizer preparations.
pub fn named_prep(name: &str) -> Option<CircuitTensor> {
    let gens: &[&str] = match name {
        "0" => &["Z"],
        "1" => &["-Z"],
        "+" => &["X"],
        "-" => &["-X"],
        "+i" => &["Y"],
        "-i" => &["-Y"],
        "bell" => &["XX", "ZZ"],
        _ => return None,
    };
    let gens: Vec<SignedPauli> = gens.iter().map(|s| s.parse().unwrap()).collect();
    tensor_state_prep(&gens).ok()
}

fn unit_vector(v: &[Coefficient]) -> Result<Matrix, TensorError> {
    let norm = v.iter().fold(Coefficient::zero(Ring::Exact), |acc, c| {
        acc.add(&c.conj().mul(c))
    });
    if norm.is_zero() {
        return Err(TensorError::ZeroVector);
    }
    let m = Matrix::column(v.to_vec());
    if norm.is_one() {
        Ok(m)
    } else {
        let s = 1.0 / norm.to_complex().re.sqrt();
        Ok(m.to_float()
            .scale(&Coefficient::Float(Complex64::new(s, 0.0))))
    }
}

/// Preparation of an arbitrary pure state, normalized if needed.
pub fn tensor_state_prep_dense(psi: &[Coefficient]) -> Result<CircuitTensor, TensorError> {
    let n = qubit_count(psi.len()).ok_or(TensorError::Dimension {
        got: psi.len(),
        want: 2,
    })?;
    let v = unit_vector(psi)?;
    tensor_from_operators(&[v], &Signature::empty(), &Signature::qubits(n))
}

/// Projection onto ⟨ψ|: entries (1/2^m) ⟨ψ|E†|ψ⟩.
pub fn tensor_effect_dense(psi: &[Coefficient]) -> Result<CircuitTensor, TensorError> {
    let n = qubit_count(psi.len()).ok_or(TensorError::Dimension {
        got: psi.len(),
        want: 2,
    })?;
    let v = unit_vector(psi)?;
    tensor_from_operators(&[v.adjoint()], &Signature::qubits(n), &Signature::empty())
}

/// 𝓜𝓓_P = e^I_I + e^P_Z.
pub fn tensor_destructive_meas(p: Pauli1) -> Result<CircuitTensor, TensorError> {
    if p == Pauli1::I {
        return Err(TensorError::IdentityMeasurement);
    }
    let mut t = CircuitTensor::new(
        Signature::qubits(1),
        Signature(vec![Wire::Classical(2)]),
        Ring::Exact,
    );
    t.add_const(vec![0], vec![0], one())?;
    t.add_const(vec![p as u8], vec![1], one())?;
    Ok(t)
}

/// Destructive measurement in an orthonormal basis {|φ_j⟩}, outcome j on a classical wire.
pub fn tensor_destructive_meas_basis(
    basis: &[Vec<Coefficient>],
) -> Result<CircuitTensor, TensorError> {
    let d = basis.len();
    let n = qubit_count(d).ok_or(TensorError::Dimension { got: d, want: 2 })?;
    let mut kraus = Vec::new();
    for (j, phi) in basis.iter().enumerate() {
        let mut ket = Matrix::zeros(Ring::Exact, d, 1);
        ket.set(j, 0, one());
        kraus.push(ket.mul(&unit_vector(phi)?.adjoint()));
    }
    tensor_from_kraus(
        &kraus,
        &Signature::qubits(n),
        &Signature(vec![Wire::Classical(d as u32)]),
    )
}

/// 𝓜𝓟_S: outputs (classical bit, measured qubits).
pub fn tensor_projective_meas(s: &SignedPauli) -> Result<CircuitTensor, TensorError> {
    if !s.phase.is_real() {
        return Err(TensorError::ComplexPhase);
    }
    let n = s.n();
    let outs = Signature(
        std::iter::once(Wire::Classical(2))
            .chain(vec![Wire::Quantum; n])
            .collect(),
    );
    let mut t = CircuitTensor::new(Signature::qubits(n), outs, Ring::Exact);
    for p in PauliString::all(n) {
        if !p.commutes(&s.pauli) {
            continue;
        }
        let l = pauli_label(&p);
        t.add_const(l.clone(), [vec![0], l.clone()].concat(), one())?;
        let ps = mul(&SignedPauli::positive(p), s)?;
        let sign = ps.phase.sign().expect("commuting hermitian product") as i64;
        t.add_const(
            l,
            [vec![1], pauli_label(&ps.pauli)].concat(),
            Coefficient::from_int(Ring::Exact, sign),
        )?;
    }
    Ok(t)
}

fn mixed_radix(arities: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for &a in arities {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..a).map(move |x| {
                    let mut v2 = v.clone();
                    v2.push(x);
                    v2
                })
            })
            .collect();
    }
    out
}

/// (1/∏N_i) Σ_x ∏ζ^{−α_i x_i} ∏ζ^{β_j f_j(x)}. `table[x]` lists the outputs for input
/// tuple x, enumerated with the first input most significant.
pub fn tensor_classical_fn(
    table: &[Vec<u32>],
    in_arities: &[u32],
    out_arities: &[u32],
) -> Result<CircuitTensor, TensorError> {
    let xs = mixed_radix(in_arities);
    if table.len() != xs.len() || table.iter().any(|r| r.len() != out_arities.len()) {
        return Err(TensorError::TableSize {
            got: table.len(),
            want: xs.len(),
        });
    }
    let exact = in_arities
        .iter()
        .chain(out_arities)
        .all(|a| matches!(a, 2 | 4));
    let ring = if exact { Ring::Exact } else { Ring::Float };
    let ins = Signature(in_arities.iter().map(|&a| Wire::Classical(a)).collect());
    let outs = Signature(out_arities.iter().map(|&a| Wire::Classical(a)).collect());
    let inv = Coefficient::from_ratio(ring, 1, xs.len() as i64);
    let mut t = CircuitTensor::new(ins, outs, ring);
    for alpha in mixed_radix(in_arities) {
        for beta in mixed_radix(out_arities) {
            let mut acc = Coefficient::zero(ring);
            for (x, fx) in xs.iter().zip(table) {
                let mut c = Coefficient::one(Ring::Exact);
                for ((&a, &xi), &m) in alpha.iter().zip(x).zip(in_arities) {
                    c = c.mul(&zeta(m, -(a as i64) * xi as i64));
                }
                for ((&b, &y), &m) in beta.iter().zip(fx).zip(out_arities) {
                    c = c.mul(&zeta(m, b as i64 * y as i64));
                }
                acc = acc.add(&c.to_ring(ring));
            }
            let v = acc.mul(&inv);
            if !v.is_zero() {
                let l = |v: &[u32]| v.iter().map(|&a| a as u8).collect::<Label>();
                t.add_const(l(&alpha), l(&beta), v)?;
            }
        }
    }
    Ok(t)
}

/// Built-in boolean functions: xor, and, or, not, mux (s, x1, x2), copy, discard.
pub fn named_classical_fn(name: &str) -> Option<CircuitTensor> {
    let two = |f: fn(u32, u32) -> u32| {
        (0..4)
            .map(move |x| vec![f(x >> 1, x & 1)])
            .collect::<Vec<_>>()
    };
    let (table, ins, outs): (Vec<Vec<u32>>, Vec<u32>, Vec<u32>) = match name {
        "xor" => (two(|a, b| a ^ b), vec![2, 2], vec![2]),
        "and" => (two(|a, b| a & b), vec![2, 2], vec![2]),
        "or" => (two(|a, b| a | b), vec![2, 2], vec![2]),
        "not" => (vec![vec![1], vec![0]], vec![2], vec![2]),
        "copy" => (vec![vec![0, 0], vec![1, 1]], vec![2], vec![2, 2]),
        "discard" => (vec![vec![], vec![]], vec![2], vec![]),
        "mux" => (
            (0..8u32)
                .map(|x| vec![if x >> 2 == 0 { x >> 1 & 1 } else { x & 1 }])
                .collect(),
            vec![2, 2, 2],
            vec![2],
        ),
        _ => return None,
    };
    tensor_classical_fn(&table, &ins, &outs).ok()
}

/// Selects channel m according to the joint mode of the new leading `wires`:
/// (1/M) Σ_m ∏ζ^{−α_i m_i} ⟦Ũ(m)⟧^E_{E′} e^{Z^α⊗E}_{E′}.
pub fn tensor_selector(
    channels: &[CircuitTensor],
    wires: Vec<Wire>,
) -> Result<CircuitTensor, TensorError> {
    let arities: Vec<u32> = wires
        .iter()
        .map(|w| {
            w.arity().ok_or(TensorError::SignatureMismatch(
                "quantum".into(),
                "selector".into(),
            ))
        })
        .collect::<Result<_, _>>()?;
    let modes = mixed_radix(&arities);
    if modes.len() != channels.len() || channels.is_empty() {
        return Err(TensorError::SignatureMismatch(
            format!("{} channels", channels.len()),
            format!("{} modes", modes.len()),
        ));
    }
    let (ins, outs) = (channels[0].ins().clone(), channels[0].outs().clone());
    for c in channels {
        if *c.ins() != ins || *c.outs() != outs {
            return Err(TensorError::SignatureMismatch(
                c.ins().to_string(),
                ins.to_string(),
            ));
        }
    }
    let float = channels.iter().any(|c| c.ring() == Ring::Float)
        || arities.iter().any(|a| !matches!(a, 2 | 4));
    let ring = if float { Ring::Float } else { Ring::Exact };
    let inv = Coefficient::from_ratio(ring, 1, modes.len() as i64);
    let mut t = CircuitTensor::new(Signature(wires).concat(&ins), outs, ring);
    for alpha in &modes {
        for (m, ch) in modes.iter().zip(channels) {
            let mut c = inv.clone();
            for ((&a, &mi), &ar) in alpha.iter().zip(m).zip(&arities) {
                c = c.mul(&zeta(ar, -(a as i64) * mi as i64));
            }
            let c = c.to_ring(ring);
            for ((i, o), v) in ch.entries() {
                let li: Label = alpha
                    .iter()
                    .map(|&a| a as u8)
                    .chain(i.iter().copied())
                    .collect();
                t.add_entry(li, o.clone(), v.scale(&c))?;
            }
        }
    }
    Ok(t)
}

/// Σ_{ω(E,P)=1} e^{I⊗E}_E + Σ_{ω(E,P)=−1} e^{Z⊗E}_E.
pub fn tensor_controlled_pauli(p: &PauliString) -> Result<CircuitTensor, TensorError> {
    let id = identity_tensor(&Signature::qubits(p.n()));
    tensor_selector(&[id, pauli_tensor(p)], vec![Wire::Classical(2)])
}

/// Pauli on the given n qubits for joint mode `m` of 2n binary wires: qubit i takes
/// X^{m_{2i}} Z^{m_{2i+1}}.
pub fn pauli_for_mode(n: usize, m: usize) -> PauliString {
    let mut p = PauliString::identity(n);
    for q in 0..n {
        let bits = (m >> (2 * (n - 1 - q))) & 3;
        p.set(q, Pauli1::from_bits(bits >> 1 == 1, bits & 1 == 1));
    }
    p
}

/// 4^n-mode Pauli selector on 2n binary noise wires of one group.
pub fn pauli_selector(n: usize, group: &str) -> Result<CircuitTensor, TensorError> {
    let channels: Vec<CircuitTensor> = (0..1usize << (2 * n))
        .map(|m| pauli_tensor(&pauli_for_mode(n, m)))
        .collect();
    tensor_selector(
        &channels,
        vec![
            Wire::Noise {
                arity: 2,
                group: group.to_string()
            };
            2 * n
        ],
    )
}

/// Pre-traced uniform Pauli channel: ∏ per-qubit (w+3z) on I and (w−z) otherwise.
pub fn uniform_pauli_noise(
    vars: &Arc<VarTable>,
    n: usize,
    w: &str,
    z: &str,
) -> Result<CircuitTensor, TensorError> {
    let (wv, zv) = (
        Polynomial::var(vars, Ring::Exact, w)?,
        Polynomial::var(vars, Ring::Exact, z)?,
    );
    let ident = wv.add(&zv.scale(&Coefficient::from_int(Ring::Exact, 3)))?;
    let other = wv.sub(&zv)?;
    let sig = Signature::qubits(n);
    let mut t = CircuitTensor::new(sig.clone(), sig, Ring::Exact);
    for e in PauliString::all(n) {
        let mut v = Polynomial::one(vars, Ring::Exact);
        for q in 0..n {
            v = v.mul(if e.get(q) == Pauli1::I {
                &ident
            } else {
                &other
            })?;
        }
        t.add_entry(pauli_label(&e), pauli_label(&e), v)?;
    }
    Ok(t)
}

/// Diagonal n-qubit tensor to Pauli-channel probabilities p_P = 4^{-n} Σ_Q ω(P,Q) u_Q.
pub fn diagonal_to_pauli_probs(
    t: &CircuitTensor,
) -> Result<Vec<(PauliString, Polynomial)>, TensorError> {
    if !t.is_diagonal() || !t.ins().is_all_quantum() {
        return Err(TensorError::NotDiagonal);
    }
    let n = t.ins().len();
    let inv = Coefficient::from_ratio(t.ring(), 1, 1 << (2 * n));
    let mut out = Vec::new();
    for p in PauliString::all(n) {
        let mut acc = Polynomial::zero(&empty_vars(), t.ring());
        for ((q, _), u) in t.entries() {
            let term = if p.symplectic(&label_pauli(q)) {
                u.neg()
            } else {
                u.clone()
            };
            acc = acc.add(&term)?;
        }
        out.push((p, acc.scale(&inv)));
    }
    Ok(out)
}

/// Relative tolerance helper for FLOAT unitary checks.
pub fn is_unitary(u: &Matrix) -> bool {
    u.rows() == u.cols()
        && u.adjoint()
            .mul(u)
            .approx_eq(&Matrix::identity(Ring::Exact, u.rows()), FLOAT_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Ring;

    fn exact(t: &CircuitTensor, expect: &[(&str, &str, i64, i64)]) {
        let mut want = CircuitTensor::new(t.ins().clone(), t.outs().clone(), Ring::Exact);
        for &(i, o, n, d) in expect {
            want.add_const(
                t.ins().parse_label(i).unwrap(),
                t.outs().parse_label(o).unwrap(),
                Coefficient::from_ratio(Ring::Exact, n, d),
            )
            .unwrap();
        }
        assert_eq!(t, &want, "\n{t}");
    }

    #[test]
    fn identity_forms() {
        exact(
            &identity_tensor(&Signature::qubits(1)),
            &[
                ("I", "I", 1, 1),
                ("X", "X", 1, 1),
                ("Y", "Y", 1, 1),
                ("Z", "Z", 1, 1),
            ],
        );
        exact(
            &identity_tensor(&Signature(vec![Wire::Classical(2)])),
            &[("Z^0", "Z^0", 1, 1), ("Z^1", "Z^1", 1, 1)],
        );
        assert_eq!(identity_tensor(&Signature::empty()).len(), 1);
    }

    #[test]
    fn clifford_matches_unitary_route() {
        let h = Matrix::from_complex(
            2,
            2,
            &[1.0, 1.0, 1.0, -1.0].map(|v| Complex64::new(v / 2f64.sqrt(), 0.0)),
        );
        let from_u = tensor_from_unitary(&h).unwrap();
        let from_c = named_gate("H").unwrap();
        assert!(from_u.approx_eq(&from_c, 1e-12));
        exact(
            &from_c,
            &[
                ("I", "I", 1, 1),
                ("X", "Z", 1, 1),
                ("Z", "X", 1, 1),
                ("Y", "Y", -1, 1),
            ],
        );
        exact(
            &named_gate("S").unwrap(),
            &[
                ("I", "I", 1, 1),
                ("X", "Y", 1, 1),
                ("Z", "Z", 1, 1),
                ("Y", "X", -1, 1),
            ],
        );
    }

    #[test]
    fn bad_clifford_rejected() {
        let t = CliffordTable::from_strs(&["X"], &["X"]).unwrap();
        assert!(matches!(
            tensor_from_clifford(&t),
            Err(TensorError::BadClifford(_))
        ));
    }

    #[test]
    fn projective_z_and_x() {
        exact(
            &tensor_projective_meas(&"Z".parse().unwrap()).unwrap(),
            &[
                ("I", "Z^0 I", 1, 1),
                ("Z", "Z^1 I", 1, 1),
                ("I", "Z^1 Z", 1, 1),
                ("Z", "Z^0 Z", 1, 1),
            ],
        );
        exact(
            &tensor_projective_meas(&"X".parse().unwrap()).unwrap(),
            &[
                ("I", "Z^0 I", 1, 1),
                ("X", "Z^1 I", 1, 1),
                ("I", "Z^1 X", 1, 1),
                ("X", "Z^0 X", 1, 1),
            ],
        );
        assert!(tensor_projective_meas(&"+iZ".parse().unwrap()).is_err());
    }

    #[test]
    fn projective_matches_kraus() {
        let half = Coefficient::from_ratio(Ring::Exact, 1, 2);
        let id = Matrix::identity(Ring::Exact, 2);
        let z = pauli_matrix(Pauli1::Z);
        let p0 = id.add(&z).scale(&half);
        let p1 = id
            .add(&z.scale(&Coefficient::from_int(Ring::Exact, -1)))
            .scale(&half);
        let k0 = Matrix::column(vec![one(), Coefficient::zero(Ring::Exact)]).kron(&p0);
        let k1 = Matrix::column(vec![Coefficient::zero(Ring::Exact), one()]).kron(&p1);
        let outs = Signature(vec![Wire::Classical(2), Wire::Quantum]);
        let via_kraus = tensor_from_kraus(&[k0, k1], &Signature::qubits(1), &outs).unwrap();
        assert_eq!(
            via_kraus,
            tensor_projective_meas(&"Z".parse().unwrap()).unwrap()
        );
    }

    #[test]
    fn destructive_from_basis() {
        let r = Coefficient::Float(Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0));
        let plus = vec![r.clone(), r.clone()];
        let minus = vec![r.clone(), r.neg()];
        let t = tensor_destructive_meas_basis(&[plus, minus]).unwrap();
        assert!(t.approx_eq(&tensor_destructive_meas(Pauli1::X).unwrap(), 1e-12));
        assert!(tensor_destructive_meas(Pauli1::I).is_err());
    }

    #[test]
    fn classical_tables() {
        exact(
            &named_classical_fn("xor").unwrap(),
            &[("Z^0 Z^0", "Z^0", 1, 1), ("Z^1 Z^1", "Z^1", 1, 1)],
        );
        exact(
            &named_classical_fn("not").unwrap(),
            &[("Z^0", "Z^0", 1, 1), ("Z^1", "Z^1", -1, 1)],
        );
        exact(
            &named_classical_fn("mux").unwrap(),
            &[
                ("Z^0 Z^0 Z^0", "Z^0", 1, 1),
                ("Z^0 Z^0 Z^1", "Z^1", 1, 2),
                ("Z^0 Z^1 Z^0", "Z^1", 1, 2),
                ("Z^1 Z^0 Z^1", "Z^1", -1, 2),
                ("Z^1 Z^1 Z^0", "Z^1", 1, 2),
            ],
        );
        assert!(matches!(
            tensor_classical_fn(&[vec![0]], &[2], &[2]),
            Err(TensorError::TableSize { .. })
        ));
    }

    #[test]
    fn selector_identical_channels_cancel() {
        let id = identity_tensor(&Signature::qubits(1));
        let t = tensor_selector(&[id.clone(), id], vec![Wire::Classical(2)]).unwrap();
        assert!(t.entries().all(|((i, _), _)| i[0] == 0));
    }

    #[test]
    fn pauli_selector_support() {
        let t = pauli_selector(1, "g").unwrap();
        for ((i, o), v) in t.entries() {
            assert_eq!(i[2..], o[..]);
            let p = label_pauli(o);
            let (x, z) = p.get(0).bits();
            assert_eq!((i[0], i[1]), (z as u8, x as u8));
            assert!(v.constant_term().is_one());
        }
        assert_eq!(t.len(), 4);
    }

    #[test]
    fn probs_of_pure_y() {
        let t = pauli_tensor(&"Y".parse().unwrap());
        let p = diagonal_to_pauli_probs(&t).unwrap();
        let vals: Vec<bool> = p.iter().map(|(_, v)| v.constant_term().is_one()).collect();
        assert_eq!(vals, vec![false, false, true, false]);
    }
}
