//! Slow reference computations used to cross-check the fast paths.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::enumerator::{NoiseModel, Side, WeightKind};
use crate::pauli::{PauliString, StabilizerCode};
use crate::poly::{Coefficient, Monomial, Polynomial, Ring};
use crate::tensor::dense::{pauli_matrix, Matrix};
use crate::tensor::{label_pauli, CircuitTensor, TensorError};

pub const DENSE_MAX_QUBITS: usize = 3;

/// Where the product of an error tuple lands.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PathClass {
    Stabilizer,
    /// Nontrivial logical class, as (x bits, z bits) against the code's logical basis.
    Logical(Vec<bool>, Vec<bool>),
    Detected,
}

/// Counts indexed by (class, exponent vector over `model.variables()`).
pub type PathCounts = BTreeMap<(PathClass, Vec<u16>), u64>;

struct Unit {
    var: usize,
    qubits: Vec<usize>,
}

fn units(model: &NoiseModel) -> Vec<Unit> {
    let vars = model.variables();
    let mut out = Vec::new();
    for p in model.positions() {
        let var = vars.index_of(&p.active_name).expect("own variable");
        match p.kind {
            WeightKind::SupportTrigger => out.push(Unit {
                var,
                qubits: p.qubits.clone(),
            }),
            _ => out.extend(p.qubits.iter().map(|&q| Unit {
                var,
                qubits: vec![q],
            })),
        }
    }
    out
}

fn classify(code: &StabilizerCode, e: &PauliString) -> PathClass {
    if !code.in_normalizer(e) {
        return PathClass::Detected;
    }
    let (xs, zs) = code.logical_class(e);
    if xs.iter().chain(&zs).any(|&b| b) {
        PathClass::Logical(xs, zs)
    } else {
        PathClass::Stabilizer
    }
}

/// Enumerates every tuple with at most `max_events` non-identity positions: a trigger
/// unit takes any of its 4^r − 1 non-identity Paulis, a per-qubit unit any of X, Y, Z.
pub fn bounded_path_count(
    code: &StabilizerCode,
    model: &NoiseModel,
    max_events: usize,
) -> PathCounts {
    let us = units(model);
    let nvars = model.variables().len();
    let n = code.n();
    let mut out = PathCounts::new();
    let mut exps = vec![0u16; nvars];
    rec(
        code,
        &us,
        0,
        max_events,
        &PauliString::identity(n),
        &mut exps,
        &mut out,
    );
    out
}

fn rec(
    code: &StabilizerCode,
    us: &[Unit],
    start: usize,
    left: usize,
    acc: &PauliString,
    exps: &mut Vec<u16>,
    out: &mut PathCounts,
) {
    *out.entry((classify(code, acc), exps.clone())).or_insert(0) += 1;
    if left == 0 {
        return;
    }
    for (i, u) in us.iter().enumerate().skip(start) {
        let r = u.qubits.len();
        exps[u.var] += 1;
        for local in PauliString::all(r).skip(1) {
            let mut e = acc.clone();
            for (k, &q) in u.qubits.iter().enumerate() {
                let (x1, z1) = acc.get(q).bits();
                let (x2, z2) = local.get(k).bits();
                e.set(q, crate::pauli::Pauli1::from_bits(x1 ^ x2, z1 ^ z2));
            }
            rec(code, us, i + 1, left - 1, &e, exps, out);
        }
        exps[u.var] -= 1;
    }
}

/// Sums bounded counts over a predicate on the class, keyed by exponent vector.
pub fn collect(counts: &PathCounts, pred: impl Fn(&PathClass) -> bool) -> BTreeMap<Vec<u16>, u64> {
    let mut out = BTreeMap::new();
    for ((c, e), v) in counts {
        if pred(c) {
            *out.entry(e.clone()).or_insert(0) += v;
        }
    }
    out
}

fn pauli_operator(p: &PauliString) -> Matrix {
    (0..p.n()).fold(Matrix::identity(Ring::Float, 1), |m, q| {
        m.kron(&pauli_matrix(p.get(q)).to_float())
    })
}

/// Dense superoperator S (column-stacked vec(ρ) ↦ vec(𝓜(ρ))) from a quantum-only tensor,
/// via 𝓜(ρ) = Σ_{E,E′} e^E_{E′} · (1/d) Tr(E† ρ) · E′ up to the tensor's conventions.
/// Float only, at most [`DENSE_MAX_QUBITS`] qubits.
pub fn dense_superoperator(t: &CircuitTensor) -> Result<Matrix, TensorError> {
    if !t.ins().is_all_quantum() || !t.outs().is_all_quantum() {
        return Err(TensorError::NotSquare);
    }
    let (ni, no) = (t.ins().len(), t.outs().len());
    if ni.max(no) > DENSE_MAX_QUBITS {
        return Err(TensorError::Dimension {
            got: ni.max(no),
            want: DENSE_MAX_QUBITS,
        });
    }
    let (di, d_o) = (1usize << ni, 1usize << no);
    let mut s = Matrix::zeros(Ring::Float, d_o * d_o, di * di);
    let inv = Coefficient::float(Complex64::new(1.0 / di as f64, 0.0));
    for ((i, o), v) in t.entries() {
        let c = v.constant_term().to_float();
        if !v.is_constant() {
            return Err(TensorError::Unassigned(v.to_string()));
        }
        let e_in = pauli_operator(&label_pauli(i));
        let e_out = pauli_operator(&label_pauli(o));
        // vec(E_out) vec(E_in)^† scaled by the entry
        for r in 0..d_o * d_o {
            let a = e_out.get(r % d_o, r / d_o);
            if a.is_zero() {
                continue;
            }
            for col in 0..di * di {
                let b = e_in.get(col % di, col / di);
                if b.is_zero() {
                    continue;
                }
                let cur = s.get(r, col).clone();
                s.set(r, col, cur.add(&a.mul(&b.conj()).mul(&c).mul(&inv)));
            }
        }
    }
    Ok(s)
}

/// Dense superoperator of a Kraus channel, same layout as [`dense_superoperator`].
pub fn kraus_superoperator(kraus: &[Matrix]) -> Matrix {
    let di = kraus[0].cols();
    let d_o = kraus[0].rows();
    let mut s = Matrix::zeros(Ring::Float, d_o * d_o, di * di);
    for a in kraus {
        let a = a.to_float();
        for r in 0..d_o * d_o {
            for col in 0..di * di {
                let v = a
                    .get(r % d_o, col % di)
                    .mul(&a.get(r / d_o, col / di).conj());
                if !v.is_zero() {
                    let cur = s.get(r, col).clone();
                    s.set(r, col, cur.add(&v));
                }
            }
        }
    }
    s
}

pub const POISSON_MAX_QUBITS: usize = 5;

/// Paulis supported on `qubits`, embedded in n qubits.
fn local_paulis(n: usize, qubits: &[usize]) -> Vec<PauliString> {
    PauliString::all(qubits.len())
        .map(|local| {
            let mut e = PauliString::identity(n);
            for (k, &q) in qubits.iter().enumerate() {
                e.set(q, local.get(k));
            }
            e
        })
        .collect()
}

/// Σ over error pairs (E1, E2), each supported on its position's qubits, with E1·E2 in
/// `target`, of u1^{wt1(E1)} u2^{wt2(E2)}, for a model with exactly two positions.
/// Exhaustive over all pairs.
pub fn poisson_rhs(
    code: &StabilizerCode,
    target: Side,
    model: &NoiseModel,
) -> Result<Polynomial, TensorError> {
    let n = code.n();
    if n > POISSON_MAX_QUBITS || model.positions().len() != 2 || model.n() != n {
        return Err(TensorError::Dimension {
            got: n,
            want: POISSON_MAX_QUBITS,
        });
    }
    let hvars = model.homogeneous_variables();
    let weighted = |p: &crate::enumerator::WeightFunction| -> Vec<(PauliString, Vec<u16>)> {
        local_paulis(n, &p.qubits)
            .into_iter()
            .map(|e| {
                let mut v = vec![0u16; hvars.len()];
                let (w0, w1) = p.eval(&e);
                v[hvars.index_of(&p.w_name).expect("own variable")] += w0 as u16;
                v[hvars.index_of(&p.active_name).expect("own variable")] += w1 as u16;
                (e, v)
            })
            .collect()
    };
    let first = weighted(&model.positions()[0]);
    let second = weighted(&model.positions()[1]);
    let member: Vec<bool> = PauliString::all(n)
        .map(|e| match target {
            Side::Stabilizer => code.in_stabilizer(&e),
            Side::Normalizer => code.in_normalizer(&e),
        })
        .collect();
    let mut counts: BTreeMap<Vec<u16>, i64> = BTreeMap::new();
    for (a, wa) in &first {
        for (b, wb) in &second {
            let prod = a.xor(b).expect("same length");
            if member[prod.index() as usize] {
                let e: Vec<u16> = wa.iter().zip(wb).map(|(x, y)| x + y).collect();
                *counts.entry(e).or_insert(0) += 1;
            }
        }
    }
    let mut out = Polynomial::zero(&hvars, Ring::Exact);
    for (e, c) in counts {
        out.add_term(Monomial(e), Coefficient::from_int(Ring::Exact, c));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::perfect_code;
    use crate::enumerator::MergeMode;

    #[test]
    fn bounded_counts_single_events() {
        let code = perfect_code();
        let model = NoiseModel::syndrome_extraction(&code, true, MergeMode::All);
        let c = bounded_path_count(&code, &model, 1);
        let total: u64 = c.values().sum();
        let stab: u64 = collect(&c, |k| *k == PathClass::Stabilizer).values().sum();
        let logical: u64 = collect(&c, |k| matches!(k, PathClass::Logical(..)))
            .values()
            .sum();
        assert_eq!(stab, 1 + 12);
        assert_eq!(logical, 48);
        assert_eq!(total, 1 + 15 + 4 * 255 + 4 * 3);
    }

    #[test]
    fn poisson_small_model() {
        use crate::enumerator::{transformed_sum, WeightFunction};
        let code = crate::pauli::StabilizerCode::from_strs(&["XX", "ZZ"]).unwrap();
        let model = NoiseModel::new(
            2,
            vec![
                WeightFunction::global(2, "z"),
                WeightFunction::support_trigger(vec![0, 1], "m"),
            ],
        )
        .unwrap();
        // n = 2, k = 0, Σn_j = 4
        let lhs = transformed_sum(&code, Side::Normalizer, &model).unwrap();
        let rhs = poisson_rhs(&code, Side::Stabilizer, &model).unwrap();
        assert_eq!(lhs.scale(&Coefficient::from_int(Ring::Exact, 4)), rhs);
    }
}
