//! Circuit tensors: sparse maps from (input label, output label) to polynomials.

mod build;
pub mod dense;
mod process;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::pauli::{Pauli1, PauliError, PauliString};
use crate::poly::{Coefficient, PolyError, PolyJson, Polynomial, Ring, VarTable};

pub use build::*;
pub use process::*;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TensorError {
    #[error("signature mismatch: {0} vs {1}")]
    SignatureMismatch(String, String),
    #[error("wire index {0} out of range")]
    WireOutOfRange(usize),
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix is not unitary")]
    NotUnitary,
    #[error("kraus operators are not trace preserving")]
    NotTracePreserving,
    #[error("dimension {got} does not match signature dimension {want}")]
    Dimension { got: usize, want: usize },
    #[error("inconsistent clifford table: {0}")]
    BadClifford(String),
    #[error("invalid stabilizer state: {0}")]
    BadStabilizerState(String),
    #[error("measured operator must have phase +1 or -1")]
    ComplexPhase,
    #[error("destructive measurement of the identity")]
    IdentityMeasurement,
    #[error("function table has {got} rows, expected {want}")]
    TableSize { got: usize, want: usize },
    #[error("noise group {0:?} has no weight assignment")]
    Unassigned(String),
    #[error("noise group {group:?} expects {want} weights, got {got}")]
    WeightCount {
        group: String,
        want: usize,
        got: usize,
    },
    #[error("tensor is not diagonal")]
    NotDiagonal,
    #[error("process matrix is not hermitian")]
    NotHermitian,
    #[error("zero vector")]
    ZeroVector,
    #[error("dimension cap exceeded")]
    Cap,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Pauli(#[from] PauliError),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Wire {
    Quantum,
    Classical(u32),
    /// Noise-mode selector wire belonging to a named group; groups may span several wires.
    Noise {
        arity: u32,
        group: String,
    },
}

impl Wire {
    /// Number of labels on the wire.
    pub fn labels(&self) -> u32 {
        match self {
            Wire::Quantum => 4,
            Wire::Classical(m) | Wire::Noise { arity: m, .. } => *m,
        }
    }

    /// Hilbert-space dimension.
    pub fn dim(&self) -> usize {
        match self {
            Wire::Quantum => 2,
            Wire::Classical(m) | Wire::Noise { arity: m, .. } => *m as usize,
        }
    }

    pub fn arity(&self) -> Option<u32> {
        match self {
            Wire::Quantum => None,
            Wire::Classical(m) | Wire::Noise { arity: m, .. } => Some(*m),
        }
    }

    fn label_string(&self, l: u8) -> String {
        match self {
            Wire::Quantum => Pauli1::ALL[l as usize].to_char().to_string(),
            _ => format!("Z^{l}"),
        }
    }
}

impl fmt::Display for Wire {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Wire::Quantum => f.write_str("q"),
            Wire::Classical(m) => write!(f, "c{m}"),
            Wire::Noise { arity, group } => write!(f, "n{arity}:{group}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Signature(pub Vec<Wire>);

impl Signature {
    pub fn empty() -> Self {
        Signature(vec![])
    }

    pub fn qubits(n: usize) -> Self {
        Signature(vec![Wire::Quantum; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn wires(&self) -> &[Wire] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.iter().map(Wire::dim).product()
    }

    pub fn concat(&self, o: &Signature) -> Signature {
        Signature(self.0.iter().chain(&o.0).cloned().collect())
    }

    pub fn is_all_quantum(&self) -> bool {
        self.0.iter().all(|w| *w == Wire::Quantum)
    }

    /// Every label of the signature, first wire most significant.
    pub fn all_labels(&self) -> Vec<Label> {
        let mut out = vec![vec![]];
        for w in &self.0 {
            let mut next = Vec::with_capacity(out.len() * w.labels() as usize);
            for l in &out {
                for a in 0..w.labels() as u8 {
                    let mut l2 = l.clone();
                    l2.push(a);
                    next.push(l2);
                }
            }
            out = next;
        }
        out
    }

    pub fn label_string(&self, l: &[u8]) -> String {
        let toks: Vec<String> = self
            .0
            .iter()
            .zip(l)
            .map(|(w, &a)| w.label_string(a))
            .collect();
        if self.is_all_quantum() {
            toks.concat()
        } else {
            toks.join(" ")
        }
    }

    pub fn parse_label(&self, s: &str) -> Result<Label, TensorError> {
        let bad = || TensorError::SignatureMismatch(s.to_string(), self.to_string());
        let toks: Vec<String> = if self.is_all_quantum() && !s.contains(' ') {
            s.chars().map(|c| c.to_string()).collect()
        } else {
            s.split_whitespace().map(str::to_string).collect()
        };
        if toks.len() != self.len() {
            return Err(bad());
        }
        let mut out = Vec::new();
        for (w, t) in self.0.iter().zip(&toks) {
            match w {
                Wire::Quantum => {
                    let c = t.chars().next().ok_or_else(bad)?;
                    out.push(Pauli1::from_char(c)? as u8);
                }
                _ => {
                    let a: u32 = t
                        .strip_prefix("Z^")
                        .and_then(|v| v.parse().ok())
                        .ok_or_else(bad)?;
                    if a >= w.labels() {
                        return Err(bad());
                    }
                    out.push(a as u8);
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|w| w.to_string()).collect();
        write!(f, "[{}]", s.join(", "))
    }
}

/// One label per wire: Pauli index (I=0, X=1, Y=2, Z=3) or clock exponent.
pub type Label = Vec<u8>;

pub fn pauli_label(p: &PauliString) -> Label {
    (0..p.n()).map(|i| p.get(i) as u8).collect()
}

pub fn label_pauli(l: &[u8]) -> PauliString {
    let mut p = PauliString::identity(l.len());
    for (i, &a) in l.iter().enumerate() {
        p.set(i, Pauli1::ALL[a as usize]);
    }
    p
}

#[derive(Clone, Debug)]
pub struct CircuitTensor {
    ins: Signature,
    outs: Signature,
    ring: Ring,
    entries: BTreeMap<(Label, Label), Polynomial>,
}

impl PartialEq for CircuitTensor {
    fn eq(&self, o: &Self) -> bool {
        self.ins == o.ins && self.outs == o.outs && self.entries == o.entries
    }
}

impl CircuitTensor {
    pub fn new(ins: Signature, outs: Signature, ring: Ring) -> Self {
        CircuitTensor {
            ins,
            outs,
            ring,
            entries: BTreeMap::new(),
        }
    }

    pub fn ins(&self) -> &Signature {
        &self.ins
    }

    pub fn outs(&self) -> &Signature {
        &self.outs
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(Label, Label), &Polynomial)> {
        self.entries.iter()
    }

    pub fn get(&self, i: &[u8], o: &[u8]) -> Option<&Polynomial> {
        self.entries.get(&(i.to_vec(), o.to_vec()))
    }

    /// Entry by label strings; zero entries read as `None`.
    pub fn entry(&self, i: &str, o: &str) -> Result<Option<&Polynomial>, TensorError> {
        let (li, lo) = (self.ins.parse_label(i)?, self.outs.parse_label(o)?);
        Ok(self.entries.get(&(li, lo)))
    }

    pub fn add_entry(&mut self, i: Label, o: Label, v: Polynomial) -> Result<(), TensorError> {
        debug_assert_eq!(i.len(), self.ins.len());
        debug_assert_eq!(o.len(), self.outs.len());
        if v.is_zero() {
            return Ok(());
        }
        let v = if self.ring == Ring::Float {
            v.to_float()
        } else {
            v
        };
        if v.ring() == Ring::Float && self.ring == Ring::Exact {
            *self = self.to_float();
        }
        let key = (i, o);
        match self.entries.get(&key) {
            Some(old) => {
                let s = old.add(&v)?;
                if s.is_zero() {
                    self.entries.remove(&key);
                } else {
                    self.entries.insert(key, s);
                }
            }
            None => {
                self.entries.insert(key, v);
            }
        }
        Ok(())
    }

    pub fn add_const(&mut self, i: Label, o: Label, c: Coefficient) -> Result<(), TensorError> {
        self.add_entry(i, o, Polynomial::constant(&VarTable::empty(), c))
    }

    pub fn to_float(&self) -> CircuitTensor {
        CircuitTensor {
            ins: self.ins.clone(),
            outs: self.outs.clone(),
            ring: Ring::Float,
            entries: self
                .entries
                .iter()
                .map(|(k, v)| (k.clone(), v.to_float()))
                .collect(),
        }
    }

    fn common_ring(&self, o: &CircuitTensor) -> (CircuitTensor, CircuitTensor, Ring) {
        if self.ring == o.ring {
            (self.clone(), o.clone(), self.ring)
        } else {
            (self.to_float(), o.to_float(), Ring::Float)
        }
    }

    /// ⟦b ∘ a⟧ = ⟦a⟧⟦b⟧: `self` acts first.
    pub fn compose(&self, b: &CircuitTensor) -> Result<CircuitTensor, TensorError> {
        if self.outs != b.ins {
            return Err(TensorError::SignatureMismatch(
                self.outs.to_string(),
                b.ins.to_string(),
            ));
        }
        let (a, b, ring) = self.common_ring(b);
        let mut by_in: HashMap<&Label, Vec<(&Label, &Polynomial)>> = HashMap::new();
        for ((i, o), v) in &b.entries {
            by_in.entry(i).or_default().push((o, v));
        }
        let mut out = CircuitTensor::new(a.ins.clone(), b.outs.clone(), ring);
        for ((i, f), va) in &a.entries {
            if let Some(row) = by_in.get(f) {
                for (o, vb) in row {
                    out.add_entry(i.clone(), (*o).clone(), va.mul(vb)?)?;
                }
            }
        }
        Ok(out)
    }

    pub fn kron(&self, b: &CircuitTensor) -> Result<CircuitTensor, TensorError> {
        let (a, b, ring) = self.common_ring(b);
        let mut out = CircuitTensor::new(a.ins.concat(&b.ins), a.outs.concat(&b.outs), ring);
        for ((i1, o1), v1) in &a.entries {
            for ((i2, o2), v2) in &b.entries {
                let i = i1.iter().chain(i2).copied().collect();
                let o = o1.iter().chain(o2).copied().collect();
                out.add_entry(i, o, v1.mul(v2)?)?;
            }
        }
        Ok(out)
    }

    /// Applies `gate` to the output wires at `wires` (in gate-input order); the gate's
    /// outputs take the place of the first listed wire, or are appended if `wires` is empty.
    pub fn apply(
        &self,
        gate: &CircuitTensor,
        wires: &[usize],
    ) -> Result<CircuitTensor, TensorError> {
        if wires.len() != gate.ins.len() {
            return Err(TensorError::SignatureMismatch(
                format!("{wires:?}"),
                gate.ins.to_string(),
            ));
        }
        for (k, &w) in wires.iter().enumerate() {
            let wire = self.outs.0.get(w).ok_or(TensorError::WireOutOfRange(w))?;
            if *wire != gate.ins.0[k] || wires[..k].contains(&w) {
                return Err(TensorError::SignatureMismatch(
                    self.outs.to_string(),
                    gate.ins.to_string(),
                ));
            }
        }
        let (a, g, ring) = self.common_ring(gate);
        let rest: Vec<usize> = (0..a.outs.len()).filter(|i| !wires.contains(i)).collect();
        let insert_at = wires
            .first()
            .map_or(rest.len(), |&w| rest.iter().filter(|&&r| r < w).count());
        let mut outs: Vec<Wire> = rest.iter().map(|&i| a.outs.0[i].clone()).collect();
        outs.splice(insert_at..insert_at, g.outs.0.iter().cloned());
        let mut by_in: HashMap<&Label, Vec<(&Label, &Polynomial)>> = HashMap::new();
        for ((i, o), v) in &g.entries {
            by_in.entry(i).or_default().push((o, v));
        }
        let mut out = CircuitTensor::new(a.ins.clone(), Signature(outs), ring);
        for ((i, f), va) in &a.entries {
            let sel: Label = wires.iter().map(|&w| f[w]).collect();
            let Some(row) = by_in.get(&sel) else { continue };
            let kept: Label = rest.iter().map(|&r| f[r]).collect();
            for (go, vg) in row {
                let mut o = kept.clone();
                o.splice(insert_at..insert_at, go.iter().copied());
                out.add_entry(i.clone(), o, va.mul(vg)?)?;
            }
        }
        Ok(out)
    }

    /// Reorders output wires so that new wire `k` is old wire `order[k]`.
    pub fn permute_outputs(&self, order: &[usize]) -> Result<CircuitTensor, TensorError> {
        check_perm(order, self.outs.len())?;
        let outs = Signature(order.iter().map(|&i| self.outs.0[i].clone()).collect());
        let mut t = CircuitTensor::new(self.ins.clone(), outs, self.ring);
        for ((i, o), v) in &self.entries {
            t.entries.insert(
                (i.clone(), order.iter().map(|&k| o[k]).collect()),
                v.clone(),
            );
        }
        Ok(t)
    }

    /// Reorders input wires so that new wire `k` is old wire `order[k]`.
    pub fn permute_inputs(&self, order: &[usize]) -> Result<CircuitTensor, TensorError> {
        check_perm(order, self.ins.len())?;
        let ins = Signature(order.iter().map(|&i| self.ins.0[i].clone()).collect());
        let mut t = CircuitTensor::new(ins, self.outs.clone(), self.ring);
        for ((i, o), v) in &self.entries {
            t.entries.insert(
                (order.iter().map(|&k| i[k]).collect(), o.clone()),
                v.clone(),
            );
        }
        Ok(t)
    }

    /// Weighted trace over every noise wire. `weights[group]` lists the weight of each
    /// joint mode of the group's wires (first wire most significant).
    pub fn trace_weights(
        &self,
        weights: &HashMap<String, Vec<Polynomial>>,
    ) -> Result<CircuitTensor, TensorError> {
        let mut groups: Vec<(String, Vec<usize>)> = Vec::new();
        for (k, w) in self.ins.0.iter().enumerate() {
            if let Wire::Noise { group, .. } = w {
                match groups.iter_mut().find(|(g, _)| g == group) {
                    Some((_, ws)) => ws.push(k),
                    None => groups.push((group.clone(), vec![k])),
                }
            }
        }
        let mut chars: Vec<HashMap<Label, Polynomial>> = Vec::new();
        let mut ring = self.ring;
        for (g, ws) in &groups {
            let w = weights
                .get(g)
                .ok_or_else(|| TensorError::Unassigned(g.clone()))?;
            let arities: Vec<u32> = ws.iter().map(|&k| self.ins.0[k].labels()).collect();
            let total: usize = arities.iter().map(|&a| a as usize).product();
            if w.len() != total {
                return Err(TensorError::WeightCount {
                    group: g.clone(),
                    want: total,
                    got: w.len(),
                });
            }
            let table = fourier_weights(&arities, w)?;
            if table.values().any(|p| p.ring() == Ring::Float) {
                ring = Ring::Float;
            }
            chars.push(table);
        }
        let keep: Vec<usize> = (0..self.ins.len())
            .filter(|k| !matches!(self.ins.0[*k], Wire::Noise { .. }))
            .collect();
        let ins = Signature(keep.iter().map(|&k| self.ins.0[k].clone()).collect());
        let mut out = CircuitTensor::new(ins, self.outs.clone(), ring);
        for ((i, o), v) in &self.entries {
            let mut acc = v.clone();
            for ((_, ws), table) in groups.iter().zip(&chars) {
                let alpha: Label = ws.iter().map(|&k| i[k]).collect();
                let u = &table[&alpha];
                acc = if acc.ring() != u.ring() {
                    acc.to_float().mul(&u.to_float())?
                } else {
                    acc.mul(u)?
                };
            }
            out.add_entry(keep.iter().map(|&k| i[k]).collect(), o.clone(), acc)?;
        }
        Ok(out)
    }

    /// Sets every variable of every entry as given.
    pub fn partial_evaluate(&self, assignment: &HashMap<String, Coefficient>) -> CircuitTensor {
        let mut t = CircuitTensor::new(self.ins.clone(), self.outs.clone(), self.ring);
        for ((i, o), v) in &self.entries {
            let p = v.partial_evaluate(assignment);
            if !p.is_zero() {
                t.entries.insert((i.clone(), o.clone()), p);
            }
        }
        t
    }

    pub fn approx_eq(&self, o: &CircuitTensor, tol: f64) -> bool {
        if self.ins != o.ins || self.outs != o.outs {
            return false;
        }
        let zero = Polynomial::zero(&VarTable::empty(), Ring::Float);
        let keys: std::collections::BTreeSet<_> =
            self.entries.keys().chain(o.entries.keys()).collect();
        keys.into_iter().all(|k| {
            let a = self.entries.get(k).unwrap_or(&zero);
            let b = o.entries.get(k).unwrap_or(&zero);
            a.approx_eq(b, tol)
        })
    }

    /// Labels of the form (E, E) only.
    pub fn is_diagonal(&self) -> bool {
        self.ins == self.outs && self.entries.keys().all(|(i, o)| i == o)
    }

    pub fn to_json(&self) -> TensorJson {
        TensorJson {
            ins: self.ins.clone(),
            outs: self.outs.clone(),
            terms: self
                .entries
                .iter()
                .map(|((i, o), v)| {
                    (
                        self.ins.label_string(i),
                        self.outs.label_string(o),
                        v.to_json(),
                    )
                })
                .collect(),
        }
    }

    pub fn from_json(j: &TensorJson) -> Result<CircuitTensor, TensorError> {
        let mut ring = Ring::Exact;
        let mut t = CircuitTensor::new(j.ins.clone(), j.outs.clone(), Ring::Exact);
        for (i, o, p) in &j.terms {
            let p = Polynomial::from_json(p)?;
            if p.ring() == Ring::Float {
                ring = Ring::Float;
            }
            t.add_entry(j.ins.parse_label(i)?, j.outs.parse_label(o)?, p)?;
        }
        Ok(if ring == Ring::Float { t.to_float() } else { t })
    }
}

fn check_perm(order: &[usize], n: usize) -> Result<(), TensorError> {
    let mut seen = vec![false; n];
    if order.len() != n {
        return Err(TensorError::SignatureMismatch(
            format!("{order:?}"),
            format!("{n} wires"),
        ));
    }
    for &k in order {
        if k >= n || seen[k] {
            return Err(TensorError::WireOutOfRange(k));
        }
        seen[k] = true;
    }
    Ok(())
}

/// u_α = Σ_m ∏_i ζ_{M_i}^{α_i m_i} w_m for every joint label α.
fn fourier_weights(
    arities: &[u32],
    w: &[Polynomial],
) -> Result<HashMap<Label, Polynomial>, TensorError> {
    let labels = Signature(arities.iter().map(|&a| Wire::Classical(a)).collect()).all_labels();
    let vars = w
        .iter()
        .find(|p| !p.is_constant())
        .map_or_else(VarTable::empty, |p| p.vars().clone());
    let ring = if w.iter().any(|p| p.ring() == Ring::Float)
        || arities.iter().any(|a| !matches!(a, 2 | 4))
    {
        Ring::Float
    } else {
        Ring::Exact
    };
    let mut out = HashMap::new();
    for alpha in &labels {
        let mut u = Polynomial::zero(&vars, ring);
        for (m, wm) in labels.iter().zip(w) {
            let mut ch = Coefficient::one(Ring::Exact);
            for ((&a, &mi), &ar) in alpha.iter().zip(m).zip(arities) {
                ch = ch.mul(&dense::zeta(ar, a as i64 * mi as i64));
            }
            u = u.add(&wm.to_ring(ring).scale(&ch.to_ring(ring)))?;
        }
        out.insert(alpha.clone(), u);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TensorJson {
    pub ins: Signature,
    pub outs: Signature,
    pub terms: Vec<(String, String, PolyJson)>,
}

impl fmt::Display for CircuitTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "in {} -> out {}", self.ins, self.outs)?;
        for ((i, o), v) in &self.entries {
            writeln!(
                f,
                "  e^{{{}}}_{{{}}} : {}",
                self.ins.label_string(i),
                self.outs.label_string(o),
                v
            )?;
        }
        Ok(())
    }
}

/// Shared table for polynomial-valued constructors.
pub(crate) fn empty_vars() -> Arc<VarTable> {
    VarTable::empty()
}
