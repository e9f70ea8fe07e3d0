//! Path enumerators of stabilizer codes under Pauli noise at several circuit positions.
//!
//! A noise model is a list of positions, each with a [`WeightFunction`]. The enumerators
//! count tuples of per-position Pauli errors by the class of their product; they are
//! evaluated on the transform side, as a sum over the dual group of products of
//! per-position MacWilliams forms Φ, then expanded with the homogenizing variables set to 1.

mod engine;
mod trunc;

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::pauli::{PauliError, PauliString, SignedPauli, StabilizerCode};
use crate::poly::{Coefficient, Monomial, PolyError, PolyJson, Polynomial, Ring, VarTable};
use crate::tensor::{
    identity_tensor, named_classical_fn, pauli_tensor, tensor_projective_meas, CircuitTensor,
    Signature, TensorError,
};

use engine::Class;

pub const DEFAULT_MAX_DEGREE: u32 = 5;
pub const ENGINE_MAX_QUBITS: usize = 64;
pub const TRACE_MAX_QUBITS: usize = 9;
const SELF_CHECK_MAX_UNIT: usize = 8;

#[derive(Debug, Error)]
pub enum EnumError {
    #[error(transparent)]
    Pauli(#[from] PauliError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error("{what} supports at most {cap} qubits, got {got}")]
    TooManyQubits {
        what: &'static str,
        got: usize,
        cap: usize,
    },
    #[error("{0} is too large")]
    TooLarge(&'static str),
    #[error("noise model is for {model} qubits but the code has {code}")]
    ModelMismatch { model: usize, code: usize },
    #[error("position {0}: {1}")]
    BadPosition(usize, String),
    #[error("{0} is not in the normalizer")]
    NotLogical(String),
    #[error("MacWilliams self-check failed for a unit of {0} qubits")]
    SelfCheck(usize),
    #[error("{value} is not divisible by 2^{shift}")]
    Indivisible { value: String, shift: u32 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Stabilizer,
    Normalizer,
}

/// How measurement and idle variables are named across generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MergeMode {
    /// `m` and `c` for every generator.
    All,
    /// `m{r}` for a generator of weight r, and `c`.
    BySupportSize,
    /// `m{j}` and `c{j}` for generator j (1-based).
    PerGenerator,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WeightKind {
    /// (1,0) if the restriction to the qubits is the identity, else (0,1).
    SupportTrigger,
    /// (identity count, non-identity count) over the qubits.
    PerQubitCount,
    /// Per-qubit count over every qubit.
    GlobalPauli,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightFunction {
    pub kind: WeightKind,
    pub qubits: Vec<usize>,
    pub w_name: String,
    pub active_name: String,
}

fn mask(qubits: &[usize]) -> u64 {
    qubits.iter().fold(0, |m, &q| m | 1 << q)
}

impl WeightFunction {
    fn named(kind: WeightKind, qubits: Vec<usize>, name: &str) -> Self {
        WeightFunction {
            kind,
            qubits,
            w_name: format!("w_{name}"),
            active_name: name.to_string(),
        }
    }

    pub fn support_trigger(qubits: Vec<usize>, name: &str) -> Self {
        Self::named(WeightKind::SupportTrigger, qubits, name)
    }

    pub fn per_qubit_count(qubits: Vec<usize>, name: &str) -> Self {
        Self::named(WeightKind::PerQubitCount, qubits, name)
    }

    pub fn global(n: usize, name: &str) -> Self {
        Self::named(WeightKind::GlobalPauli, (0..n).collect(), name)
    }

    /// Number of qubits n_j the position acts on.
    pub fn domain_size(&self) -> usize {
        self.qubits.len()
    }

    /// Qubits per local unit of the weight function.
    pub fn unit(&self) -> usize {
        match self.kind {
            WeightKind::SupportTrigger => self.qubits.len(),
            _ => 1,
        }
    }

    pub fn eval(&self, e: &PauliString) -> (u32, u32) {
        let active = self
            .qubits
            .iter()
            .filter(|&&q| e.get(q) != crate::pauli::Pauli1::I)
            .count() as u32;
        match self.kind {
            WeightKind::SupportTrigger => {
                if active == 0 {
                    (1, 0)
                } else {
                    (0, 1)
                }
            }
            _ => (self.qubits.len() as u32 - active, active),
        }
    }
}

/// Φ(u)^{(1,0)} and Φ(u)^{(0,1)} for one local unit, in the variables (w, a).
#[derive(Clone, Debug, PartialEq)]
pub struct MacWilliamsTransform {
    pub unit: usize,
    pub phi0: Polynomial,
    pub phi1: Polynomial,
}

fn phi_forms(
    vars: &Arc<VarTable>,
    w: &str,
    a: &str,
    unit: usize,
) -> Result<(Polynomial, Polynomial), EnumError> {
    let q = Coefficient::from_ratio(Ring::Exact, 1, 1 << unit);
    let wv = Polynomial::var(vars, Ring::Exact, w)?;
    let av = Polynomial::var(vars, Ring::Exact, a)?;
    let big = Coefficient::from_int(Ring::Exact, (1 << (2 * unit)) - 1);
    let phi0 = wv.add(&av.scale(&big))?.scale(&q);
    let phi1 = wv.sub(&av)?.scale(&q);
    Ok((phi0, phi1))
}

/// Builds the transform for a weight function and checks it against
/// 2^{-s} Σ_E ω(D,E) u^{wt(E)} on a unit of s qubits.
pub fn macwilliams_for(wf: &WeightFunction) -> Result<MacWilliamsTransform, EnumError> {
    let unit = wf.unit();
    let vars = VarTable::new(&[wf.w_name.as_str(), wf.active_name.as_str()]);
    let (phi0, phi1) = phi_forms(&vars, &wf.w_name, &wf.active_name, unit)?;
    if unit <= SELF_CHECK_MAX_UNIT {
        let reps: Vec<PauliString> = if unit <= 3 {
            PauliString::all(unit).collect()
        } else {
            let mut r = vec![PauliString::identity(unit)];
            for p in [
                crate::pauli::Pauli1::X,
                crate::pauli::Pauli1::Y,
                crate::pauli::Pauli1::Z,
            ] {
                r.push(PauliString::single(unit, 0, p));
                r.push(PauliString::single(unit, unit - 1, p));
            }
            r
        };
        let q = 1i64 << unit;
        for d in reps {
            let mut ca = 0i64;
            for e in PauliString::all(unit).skip(1) {
                ca += if d.commutes(&e) { 1 } else { -1 };
            }
            let want = Polynomial::var(&vars, Ring::Exact, &wf.w_name)?
                .add(
                    &Polynomial::var(&vars, Ring::Exact, &wf.active_name)?
                        .scale(&Coefficient::from_int(Ring::Exact, ca)),
                )?
                .scale(&Coefficient::from_ratio(Ring::Exact, 1, q));
            let got = if d.is_identity() { &phi0 } else { &phi1 };
            if *got != want {
                return Err(EnumError::SelfCheck(unit));
            }
        }
    }
    Ok(MacWilliamsTransform { unit, phi0, phi1 })
}

/// Ordered list of noise positions on an n-qubit register.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NoiseModel {
    n: usize,
    positions: Vec<WeightFunction>,
}

impl NoiseModel {
    pub fn new(n: usize, positions: Vec<WeightFunction>) -> Result<Self, EnumError> {
        let mut w_of: HashMap<&str, &str> = HashMap::new();
        for (j, p) in positions.iter().enumerate() {
            if p.qubits.is_empty() {
                return Err(EnumError::BadPosition(j, "acts on no qubits".into()));
            }
            if let Some(&q) = p.qubits.iter().find(|&&q| q >= n) {
                return Err(EnumError::BadPosition(j, format!("qubit {q} out of range")));
            }
            let mut sorted = p.qubits.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != p.qubits.len() {
                return Err(EnumError::BadPosition(j, "repeated qubit".into()));
            }
            if p.w_name == p.active_name {
                return Err(EnumError::BadPosition(j, "variable names coincide".into()));
            }
            match w_of.insert(&p.active_name, &p.w_name) {
                Some(prev) if prev != p.w_name => {
                    return Err(EnumError::BadPosition(
                        j,
                        format!("{} has two homogenizing variables", p.active_name),
                    ))
                }
                _ => {}
            }
        }
        let actives: Vec<&str> = w_of.keys().copied().collect();
        if let Some((j, p)) = positions
            .iter()
            .enumerate()
            .find(|(_, p)| actives.contains(&p.w_name.as_str()))
        {
            return Err(EnumError::BadPosition(
                j,
                format!("{} is also an active variable", p.w_name),
            ));
        }
        Ok(NoiseModel { n, positions })
    }

    /// Depolarizing-type noise on every qubit before syndrome extraction.
    pub fn initial(n: usize) -> Self {
        NoiseModel {
            n,
            positions: vec![WeightFunction::global(n, "z")],
        }
    }

    /// Initial noise `z`, then for each generator a measurement flip `m` on its support
    /// and, if `include_idle`, idle noise `c` on the remaining qubits.
    pub fn syndrome_extraction(
        code: &StabilizerCode,
        include_idle: bool,
        merge: MergeMode,
    ) -> Self {
        let n = code.n();
        let mut positions = vec![WeightFunction::global(n, "z")];
        for (j, g) in code.generators().iter().enumerate() {
            let supp = g.pauli.support();
            let (m, c) = match merge {
                MergeMode::All => ("m".to_string(), "c".to_string()),
                MergeMode::BySupportSize => (format!("m{}", supp.len()), "c".to_string()),
                MergeMode::PerGenerator => (format!("m{}", j + 1), format!("c{}", j + 1)),
            };
            let off: Vec<usize> = (0..n).filter(|q| !supp.contains(q)).collect();
            positions.push(WeightFunction::support_trigger(supp, &m));
            if include_idle && !off.is_empty() {
                positions.push(WeightFunction::per_qubit_count(off, &c));
            }
        }
        NoiseModel { n, positions }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn positions(&self) -> &[WeightFunction] {
        &self.positions
    }

    /// Σ n_j.
    pub fn total_domain(&self) -> usize {
        self.positions.iter().map(WeightFunction::domain_size).sum()
    }

    fn active_names(&self) -> Vec<&str> {
        let mut names: Vec<&str> = Vec::new();
        for p in &self.positions {
            if !names.contains(&p.active_name.as_str()) {
                names.push(&p.active_name);
            }
        }
        names
    }

    /// Active variables in order of first appearance.
    pub fn variables(&self) -> Arc<VarTable> {
        VarTable::new(&self.active_names())
    }

    /// Each active variable preceded by its homogenizing variable.
    pub fn homogeneous_variables(&self) -> Arc<VarTable> {
        let mut names: Vec<&str> = Vec::new();
        for a in self.active_names() {
            let p = self
                .positions
                .iter()
                .find(|p| p.active_name == a)
                .expect("name from positions");
            names.push(&p.w_name);
            names.push(a);
        }
        VarTable::new(&names)
    }

    /// ∏_j a_j^{active count of E at position j}, where every position sees the same E.
    pub fn element_monomial(&self, e: &PauliString) -> Polynomial {
        let vars = self.variables();
        let mut exps = vec![0u16; vars.len()];
        for p in &self.positions {
            exps[vars.index_of(&p.active_name).expect("own variable")] += p.eval(e).1 as u16;
        }
        let mut out = Polynomial::zero(&vars, Ring::Exact);
        out.add_term(Monomial(exps), Coefficient::one(Ring::Exact));
        out
    }

    fn classes(&self) -> Result<Vec<Class>, EnumError> {
        if self.n > ENGINE_MAX_QUBITS {
            return Err(EnumError::TooManyQubits {
                what: "the enumerator",
                got: self.n,
                cap: ENGINE_MAX_QUBITS,
            });
        }
        let vars = self.variables();
        let hvars = self.homogeneous_variables();
        let mut classes: Vec<Class> = Vec::new();
        let mut seen_units: Vec<(String, usize)> = Vec::new();
        for p in &self.positions {
            let unit = p.unit();
            let key = (p.active_name.clone(), unit);
            if !seen_units.contains(&key) {
                macwilliams_for(p)?;
                seen_units.push(key);
            }
            let var = vars.index_of(&p.active_name).expect("own variable");
            let idx = match classes
                .iter()
                .position(|c| c.var == var && c.unit as usize == unit)
            {
                Some(i) => i,
                None => {
                    classes.push(Class {
                        var,
                        hw: hvars.index_of(&p.w_name).expect("own variable"),
                        ha: hvars.index_of(&p.active_name).expect("own variable"),
                        unit: unit as u32,
                        trig: Vec::new(),
                        count: Vec::new(),
                        slots: 0,
                    });
                    classes.len() - 1
                }
            };
            let c = &mut classes[idx];
            let m = mask(&p.qubits);
            match p.kind {
                WeightKind::SupportTrigger => {
                    c.trig.push(m);
                    c.slots += 1;
                }
                _ => {
                    c.count.push(m);
                    c.slots += m.count_ones();
                }
            }
        }
        Ok(classes)
    }
}

fn check_model(code: &StabilizerCode, model: &NoiseModel) -> Result<(), EnumError> {
    if code.n() != model.n {
        return Err(EnumError::ModelMismatch {
            model: model.n,
            code: code.n(),
        });
    }
    if code.n() > ENGINE_MAX_QUBITS {
        return Err(EnumError::TooManyQubits {
            what: "the enumerator",
            got: code.n(),
            cap: ENGINE_MAX_QUBITS,
        });
    }
    Ok(())
}

fn words(ps: impl IntoIterator<Item = PauliString>) -> Vec<(u64, u64)> {
    ps.into_iter().map(|p| p.as_u64()).collect()
}

fn side_generators(code: &StabilizerCode, side: Side) -> Vec<(u64, u64)> {
    match side {
        Side::Stabilizer => words(code.stabilizer_paulis()),
        Side::Normalizer => words(code.normalizer_basis().to_vec()),
    }
}

/// Σ_{E ∈ side} ∏_j u_j^{wt_j(E)}, homogeneous in (w_j, a_j).
pub fn group_weight_sum(
    code: &StabilizerCode,
    side: Side,
    model: &NoiseModel,
) -> Result<Polynomial, EnumError> {
    check_model(code, model)?;
    let classes = model.classes()?;
    let hist = engine::histogram(&side_generators(code, side), &classes, None)?;
    let hvars = model.homogeneous_variables();
    let mut out = Polynomial::zero(&hvars, Ring::Exact);
    for (key, mult) in hist {
        let mut e = vec![0u16; hvars.len()];
        for (c, a) in classes.iter().zip(&key) {
            e[c.hw] += (c.slots - a) as u16;
            e[c.ha] += *a as u16;
        }
        out.add_term(Monomial(e), Coefficient::from_int(Ring::Exact, mult));
    }
    Ok(out)
}

/// Σ_{D ∈ side} ∏_j Φ_j(u_j)^{wt_j(D)}, homogeneous and untruncated.
pub fn transformed_sum(
    code: &StabilizerCode,
    side: Side,
    model: &NoiseModel,
) -> Result<Polynomial, EnumError> {
    check_model(code, model)?;
    let classes = model.classes()?;
    let hist = engine::histogram(&side_generators(code, side), &classes, None)?;
    let hvars = model.homogeneous_variables();
    let forms: Vec<(Polynomial, Polynomial)> = classes
        .iter()
        .map(|c| {
            phi_forms(
                &hvars,
                &hvars.names()[c.hw],
                &hvars.names()[c.ha],
                c.unit as usize,
            )
        })
        .collect::<Result<_, _>>()?;
    let mut out = Polynomial::zero(&hvars, Ring::Exact);
    for (key, mult) in hist {
        let mut term = Polynomial::from_int(&hvars, Ring::Exact, mult);
        for ((c, a), (p0, p1)) in classes.iter().zip(&key).zip(&forms) {
            term = term.mul(&p0.pow(c.slots - a))?.mul(&p1.pow(*a))?;
        }
        out = out.add(&term)?;
    }
    Ok(out)
}

fn expand_to_poly(
    model: &NoiseModel,
    classes: &[Class],
    hist: &engine::Histogram,
    shift: u32,
    max_degree: u32,
) -> Result<Polynomial, EnumError> {
    let vars = model.variables();
    let terms = engine::expand(vars.len(), max_degree, classes, hist, shift)?;
    let mut out = Polynomial::zero(&vars, Ring::Exact).with_cap(Some(max_degree));
    for (e, v) in terms {
        out.add_term(Monomial(e), Coefficient::from_bigint(v));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct PathEnumerators {
    /// Tuples whose product lies in the stabilizer group.
    pub a_path: Polynomial,
    /// Tuples whose product lies in the normalizer.
    pub b_path: Polynomial,
}

impl PathEnumerators {
    /// B − A: tuples causing an undetected logical error.
    pub fn difference(&self) -> Polynomial {
        self.b_path.sub(&self.a_path).expect("shared table")
    }
}

pub fn path_enumerators(
    code: &StabilizerCode,
    model: &NoiseModel,
    max_degree: u32,
) -> Result<PathEnumerators, EnumError> {
    check_model(code, model)?;
    let classes = model.classes()?;
    let (n, k) = (code.n() as u32, code.k() as u32);
    let hist_n = engine::histogram(&side_generators(code, Side::Normalizer), &classes, None)?;
    let hist_s = engine::histogram(&side_generators(code, Side::Stabilizer), &classes, None)?;
    let a_path = expand_to_poly(model, &classes, &hist_n, n + k, max_degree)?;
    let b_path = expand_to_poly(model, &classes, &hist_s, n - k, max_degree)?;
    Ok(PathEnumerators { a_path, b_path })
}

/// Tuples whose product lies in the coset L𝒮.
pub fn coset_enumerator(
    code: &StabilizerCode,
    logical: &PauliString,
    model: &NoiseModel,
    max_degree: u32,
) -> Result<Polynomial, EnumError> {
    check_model(code, model)?;
    if logical.n() != code.n() || !code.in_normalizer(logical) {
        return Err(EnumError::NotLogical(logical.to_string()));
    }
    let classes = model.classes()?;
    let hist = engine::histogram(
        &side_generators(code, Side::Normalizer),
        &classes,
        Some(logical.as_u64()),
    )?;
    expand_to_poly(
        model,
        &classes,
        &hist,
        (code.n() + code.k()) as u32,
        max_degree,
    )
}

/// Nontrivial single-qubit logical representatives: X, Y, Z for one logical qubit,
/// X1, Y1, Z1, X2, ... otherwise.
pub fn logical_cosets(code: &StabilizerCode) -> Vec<(String, PauliString)> {
    let k = code.k();
    let mut out = Vec::new();
    for i in 0..k {
        let lx = &code.logical_x()[i];
        let lz = &code.logical_z()[i];
        let ly = lx.xor(lz).expect("same length");
        let suffix = if k == 1 {
            String::new()
        } else {
            (i + 1).to_string()
        };
        out.push((format!("X{suffix}"), lx.clone()));
        out.push((format!("Y{suffix}"), ly));
        out.push((format!("Z{suffix}"), lz.clone()));
    }
    out
}

/// Shor–Laflamme enumerators A(z) = Σ_{E∈𝒮} z^{wt E} and B(z) = Σ_{E∈𝒩} z^{wt E}.
pub fn shor_laflamme(code: &StabilizerCode) -> Result<(Polynomial, Polynomial), EnumError> {
    let model = NoiseModel::initial(code.n());
    check_model(code, &model)?;
    let classes = model.classes()?;
    let vars = VarTable::new(&["z"]);
    let mut out = Vec::new();
    for side in [Side::Stabilizer, Side::Normalizer] {
        let hist = engine::histogram(&side_generators(code, side), &classes, None)?;
        let mut p = Polynomial::zero(&vars, Ring::Exact);
        for (key, mult) in hist {
            p.add_term(
                Monomial(vec![key[0] as u16]),
                Coefficient::from_int(Ring::Exact, mult),
            );
        }
        out.push(p);
    }
    let b = out.pop().expect("two sides");
    let a = out.pop().expect("two sides");
    Ok((a, b))
}

fn apply_in_place(
    state: &CircuitTensor,
    gate: &CircuitTensor,
    wires: &[usize],
) -> Result<CircuitTensor, TensorError> {
    let t = state.apply(gate, wires)?;
    let n = state.outs().len();
    let rest: Vec<usize> = (0..n).filter(|i| !wires.contains(i)).collect();
    let at = rest.iter().filter(|&&r| r < wires[0]).count();
    let mut cur = rest;
    cur.splice(at..at, wires.iter().copied());
    let order: Vec<usize> = (0..n)
        .map(|q| cur.iter().position(|&c| c == q).expect("wire kept"))
        .collect();
    t.permute_outputs(&order)
}

/// 2^{-r} Σ_P u(P) ⟦P · P†⟧ with u(I) = w and u(P) = a otherwise.
fn pretraced_noise(
    vars: &Arc<VarTable>,
    qubits: usize,
    w: &str,
    a: &str,
) -> Result<CircuitTensor, EnumError> {
    let q = Coefficient::from_ratio(Ring::Exact, 1, 1 << qubits);
    let wv = Polynomial::var(vars, Ring::Exact, w)?.scale(&q);
    let av = Polynomial::var(vars, Ring::Exact, a)?.scale(&q);
    let mut diag: BTreeMap<Vec<u8>, Polynomial> = BTreeMap::new();
    for p in PauliString::all(qubits) {
        let u = if p.is_identity() { &wv } else { &av };
        for ((i, _), v) in pauli_tensor(&p).entries() {
            let term = u.mul(v)?;
            let slot = diag
                .entry(i.clone())
                .or_insert_with(|| Polynomial::zero(vars, Ring::Exact));
            *slot = slot.add(&term)?;
        }
    }
    let sig = Signature::qubits(qubits);
    let mut t = CircuitTensor::new(sig.clone(), sig, Ring::Exact);
    for (l, v) in diag {
        t.add_entry(l.clone(), l, v)?;
    }
    Ok(t)
}

/// Σ of the diagonal of the circuit tensor for noisy syndrome extraction with every
/// noise wire pre-traced and every outcome discarded. Equals [`transformed_sum`] over
/// the normalizer.
pub fn trace_syndrome_circuit(
    code: &StabilizerCode,
    model: &NoiseModel,
) -> Result<Polynomial, EnumError> {
    check_model(code, model)?;
    let n = code.n();
    if n > TRACE_MAX_QUBITS {
        return Err(EnumError::TooManyQubits {
            what: "the circuit trace",
            got: n,
            cap: TRACE_MAX_QUBITS,
        });
    }
    let hvars = model.homogeneous_variables();
    let mut state = identity_tensor(&Signature::qubits(n));
    for p in &model.positions {
        match p.kind {
            WeightKind::SupportTrigger => {
                let t = pretraced_noise(&hvars, p.qubits.len(), &p.w_name, &p.active_name)?;
                state = apply_in_place(&state, &t, &p.qubits)?;
            }
            _ => {
                let t = pretraced_noise(&hvars, 1, &p.w_name, &p.active_name)?;
                for &q in &p.qubits {
                    state = apply_in_place(&state, &t, &[q])?;
                }
            }
        }
    }
    let discard = named_classical_fn("discard").expect("built-in classical function");
    for g in code.generators() {
        let supp = g.pauli.support();
        let s = SignedPauli::new(g.phase, g.pauli.restrict(&supp));
        let meas = tensor_projective_meas(&s)?.apply(&discard, &[0])?;
        state = apply_in_place(&state, &meas, &supp)?;
    }
    let mut out = Polynomial::zero(&hvars, Ring::Exact);
    for ((i, o), v) in state.entries() {
        if i == o {
            out = out.add(v)?;
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegreeTotals {
    pub degree: u32,
    pub a_path: String,
    pub b_path: String,
    pub difference: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SelfCheck {
    pub name: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PathMeta {
    pub n: usize,
    pub k: usize,
    pub degree_cap: u32,
    /// |𝒮| and |𝒩|.
    pub group_sizes: [u64; 2],
    pub include_idle: bool,
    pub merge: MergeMode,
    pub variables: Vec<String>,
    pub generators: Vec<String>,
    pub logicals: BTreeMap<String, String>,
}

/// Serializable summary of a path-enumerator computation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PathReport {
    #[serde(rename = "A_path")]
    pub a_path: PolyJson,
    #[serde(rename = "B_path")]
    pub b_path: PolyJson,
    pub difference: PolyJson,
    pub cosets: BTreeMap<String, PolyJson>,
    pub totals: Vec<DegreeTotals>,
    pub checks: Vec<SelfCheck>,
    pub meta: PathMeta,
}

impl PathReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn coeff_string(c: &Coefficient) -> String {
    c.as_integer()
        .map_or_else(|| c.to_string(), |v| v.to_string())
}

pub fn path_report(
    code: &StabilizerCode,
    include_idle: bool,
    merge: MergeMode,
    max_degree: u32,
) -> Result<PathReport, EnumError> {
    let model = NoiseModel::syndrome_extraction(code, include_idle, merge);
    let pe = path_enumerators(code, &model, max_degree)?;
    let diff = pe.difference();
    let mut cosets = BTreeMap::new();
    let mut logicals = BTreeMap::new();
    let mut coset_sum = Polynomial::zero(&model.variables(), Ring::Exact);
    for (label, l) in logical_cosets(code) {
        let p = coset_enumerator(code, &l, &model, max_degree)?;
        coset_sum = coset_sum.add(&p)?;
        cosets.insert(label.clone(), p.to_json());
        logicals.insert(label, l.to_string());
    }
    let one = Coefficient::one(Ring::Exact);
    let mut checks = vec![
        SelfCheck {
            name: "A_path has constant term 1".into(),
            passed: pe.a_path.constant_term() == one,
        },
        SelfCheck {
            name: "B_path has constant term 1".into(),
            passed: pe.b_path.constant_term() == one,
        },
        SelfCheck {
            name: "B_path - A_path has nonnegative coefficients".into(),
            passed: diff
                .terms()
                .all(|(_, c)| c.as_integer().is_some_and(|v| v >= BigInt::from(0))),
        },
    ];
    if code.k() == 1 {
        checks.push(SelfCheck {
            name: "cosets sum to B_path - A_path".into(),
            passed: coset_sum == diff,
        });
    }
    let totals = (0..=max_degree)
        .map(|d| DegreeTotals {
            degree: d,
            a_path: coeff_string(&pe.a_path.degree_sum(d)),
            b_path: coeff_string(&pe.b_path.degree_sum(d)),
            difference: coeff_string(&diff.degree_sum(d)),
        })
        .collect();
    let (n, k) = (code.n(), code.k());
    Ok(PathReport {
        a_path: pe.a_path.to_json(),
        b_path: pe.b_path.to_json(),
        difference: diff.to_json(),
        cosets,
        totals,
        checks,
        meta: PathMeta {
            n,
            k,
            degree_cap: max_degree,
            group_sizes: [1u64 << (n - k), 1u64 << (n + k)],
            include_idle,
            merge,
            variables: model.variables().names().to_vec(),
            generators: code.generators().iter().map(|g| g.to_string()).collect(),
            logicals,
        },
    })
}

/// Coefficients of a polynomial keyed by exponent map, for comparisons in tests.
pub fn coefficient_map(p: &Polynomial) -> BTreeMap<Vec<(String, u16)>, Coefficient> {
    p.terms()
        .map(|(m, c)| {
            let mut key: Vec<(String, u16)> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| (p.vars().names()[i].clone(), e))
                    .collect();
            key.sort();
            (key, c.clone())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{perfect_code, rotated_surface_code};
    use crate::pauli::iter_group;

    fn poly(vars: &Arc<VarTable>, terms: &[(i64, &[(&str, u16)])]) -> Polynomial {
        let mut p = Polynomial::zero(vars, Ring::Exact);
        for (c, e) in terms {
            p = p
                .add(
                    &Polynomial::monomial(vars, Coefficient::from_int(Ring::Exact, *c), e).unwrap(),
                )
                .unwrap();
        }
        p
    }

    #[test]
    fn weight_functions() {
        let e: PauliString = "XIZII".parse().unwrap();
        assert_eq!(
            WeightFunction::support_trigger(vec![1, 3], "m").eval(&e),
            (1, 0)
        );
        assert_eq!(
            WeightFunction::support_trigger(vec![0, 1], "m").eval(&e),
            (0, 1)
        );
        assert_eq!(
            WeightFunction::per_qubit_count(vec![0, 1, 2], "c").eval(&e),
            (1, 2)
        );
        assert_eq!(WeightFunction::global(5, "z").eval(&e), (3, 2));
    }

    #[test]
    fn transforms_pass_self_check() {
        for r in 1..=6 {
            let t =
                macwilliams_for(&WeightFunction::support_trigger((0..r).collect(), "m")).unwrap();
            assert_eq!(t.unit, r);
        }
        let t = macwilliams_for(&WeightFunction::per_qubit_count(vec![0, 1], "c")).unwrap();
        let vars = t.phi0.vars().clone();
        assert_eq!(
            t.phi0,
            poly(&vars, &[(1, &[("w_c", 1)]), (3, &[("c", 1)])]).scale(&Coefficient::from_ratio(
                Ring::Exact,
                1,
                2
            ))
        );
    }

    #[test]
    fn model_validation() {
        assert!(
            NoiseModel::new(3, vec![WeightFunction::support_trigger(vec![0, 3], "m")]).is_err()
        );
        assert!(NoiseModel::new(3, vec![WeightFunction::support_trigger(vec![], "m")]).is_err());
        let mut bad = WeightFunction::global(3, "z");
        bad.w_name = "m".into();
        assert!(
            NoiseModel::new(3, vec![bad, WeightFunction::support_trigger(vec![0], "m")]).is_err()
        );
        let code = perfect_code();
        let model = NoiseModel::syndrome_extraction(&code, true, MergeMode::All);
        assert_eq!(model.total_domain(), 5 + 4 * 4 + 4);
        assert_eq!(model.variables().names(), &["z", "m", "c"]);
        assert_eq!(
            model.homogeneous_variables().names(),
            &["w_z", "z", "w_m", "m", "w_c", "c"]
        );
    }

    #[test]
    fn perfect_code_group_sums() {
        let code = perfect_code();
        let model = NoiseModel::syndrome_extraction(&code, true, MergeMode::All);
        let v = model.homogeneous_variables();
        let stab = group_weight_sum(&code, Side::Stabilizer, &model).unwrap();
        let want = poly(
            &v,
            &[
                (1, &[("w_c", 4), ("w_m", 4), ("w_z", 5)]),
                (3, &[("c", 4), ("m", 4), ("w_z", 1), ("z", 4)]),
                (12, &[("c", 3), ("m", 4), ("w_c", 1), ("w_z", 1), ("z", 4)]),
            ],
        );
        assert_eq!(stab, want);
        let norm = group_weight_sum(&code, Side::Normalizer, &model).unwrap();
        let want = poly(
            &v,
            &[
                (1, &[("w_c", 4), ("w_m", 4), ("w_z", 5)]),
                (12, &[("c", 3), ("m", 4), ("w_c", 1), ("w_z", 2), ("z", 3)]),
                (18, &[("c", 2), ("m", 4), ("w_c", 2), ("w_z", 2), ("z", 3)]),
                (3, &[("c", 4), ("m", 4), ("w_z", 1), ("z", 4)]),
                (12, &[("c", 3), ("m", 4), ("w_c", 1), ("w_z", 1), ("z", 4)]),
                (18, &[("c", 4), ("m", 4), ("z", 5)]),
            ],
        );
        assert_eq!(norm, want);
    }

    #[test]
    fn group_sum_matches_direct_walk() {
        let code = rotated_surface_code(3).unwrap();
        let model = NoiseModel::syndrome_extraction(&code, true, MergeMode::BySupportSize);
        let fast = group_weight_sum(&code, Side::Stabilizer, &model).unwrap();
        let v = model.homogeneous_variables();
        let mut slow = Polynomial::zero(&v, Ring::Exact);
        for e in iter_group(code.generators()).unwrap() {
            let mut exps = vec![0u16; v.len()];
            for p in model.positions() {
                let (w0, w1) = p.eval(&e.pauli);
                exps[v.index_of(&p.w_name).unwrap()] += w0 as u16;
                exps[v.index_of(&p.active_name).unwrap()] += w1 as u16;
            }
            slow.add_term(Monomial(exps), Coefficient::one(Ring::Exact));
        }
        assert_eq!(fast, slow);
    }

    #[test]
    fn element_monomials() {
        let code = rotated_surface_code(3).unwrap();
        let model = NoiseModel::syndrome_extraction(&code, true, MergeMode::BySupportSize);
        let vars = model.variables();
        let e: PauliString = "ZZIZZIIII".parse().unwrap();
        assert_eq!(
            model.element_monomial(&e),
            poly(&vars, &[(1, &[("z", 4), ("m4", 4), ("m2", 2), ("c", 20)])])
        );
        let e: PauliString = "IIZIIZIII".parse().unwrap();
        assert_eq!(
            model.element_monomial(&e),
            poly(&vars, &[(1, &[("z", 2), ("m4", 2), ("m2", 1), ("c", 11)])])
        );
    }

    #[test]
    fn perfect_code_paths() {
        let code = perfect_code();
        let model = NoiseModel::syndrome_extraction(&code, true, MergeMode::All);
        let pe = path_enumerators(&code, &model, 3).unwrap();
        let v = model.variables();
        let a = &pe.a_path;
        assert_eq!(a.constant_term(), Coefficient::one(Ring::Exact));
        assert_eq!(a.coeff(&[("m", 1)]), Coefficient::from_int(Ring::Exact, 12));
        let diff = pe.difference();
        let want = poly(
            &v,
            &[
                (48, &[("m", 1)]),
                (720, &[("m", 1), ("z", 1)]),
                (18288, &[("m", 2)]),
                (576, &[("c", 1), ("m", 1)]),
                (30, &[("z", 3)]),
                (4320, &[("m", 1), ("z", 2)]),
                (72, &[("c", 1), ("z", 2)]),
                (274320, &[("m", 2), ("z", 1)]),
                (8640, &[("c", 1), ("m", 1), ("z", 1)]),
                (54, &[("c", 2), ("z", 1)]),
                (3109008, &[("m", 3)]),
                (219456, &[("c", 1), ("m", 2)]),
                (2592, &[("c", 2), ("m", 1)]),
                (12, &[("c", 3)]),
            ],
        );
        assert_eq!(diff, want.with_cap(Some(3)));
    }

    #[test]
    fn surface_d3_paths() {
        let code = rotated_surface_code(3).unwrap();
        let model = NoiseModel::syndrome_extraction(&code, true, MergeMode::All);
        let pe = path_enumerators(&code, &model, 3).unwrap();
        let v = model.variables();
        let a = poly(
            &v,
            &[
                (1, &[]),
                (16, &[("m", 1)]),
                (438, &[("c", 2)]),
                (188, &[("c", 1), ("z", 1)]),
                (1320, &[("c", 1), ("m", 1)]),
                (4, &[("z", 2)]),
                (256, &[("m", 1), ("z", 1)]),
                (1516, &[("m", 2)]),
                (1824, &[("c", 3)]),
                (1316, &[("c", 2), ("z", 1)]),
                (44224, &[("c", 2), ("m", 1)]),
                (88, &[("c", 1), ("z", 2)]),
                (17992, &[("c", 1), ("z", 1), ("m", 1)]),
                (150744, &[("c", 1), ("m", 2)]),
                (1264, &[("m", 1), ("z", 2)]),
                (28880, &[("m", 2), ("z", 1)]),
                (114192, &[("m", 3)]),
            ],
        );
        assert_eq!(pe.a_path, a.with_cap(Some(3)));
        let b = poly(
            &v,
            &[
                (1, &[]),
                (16, &[("m", 1)]),
                (438, &[("c", 2)]),
                (188, &[("c", 1), ("z", 1)]),
                (1952, &[("c", 1), ("m", 1)]),
                (4, &[("z", 2)]),
                (368, &[("m", 1), ("z", 1)]),
                (3228, &[("m", 2)]),
                (5432, &[("c", 3)]),
                (3358, &[("c", 2), ("z", 1)]),
                (92600, &[("c", 2), ("m", 1)]),
                // exhaustive count over three-event tuples
                (472, &[("c", 1), ("z", 2)]),
                (36160, &[("c", 1), ("z", 1), ("m", 1)]),
                (395744, &[("c", 1), ("m", 2)]),
                (2832, &[("m", 1), ("z", 2)]),
                (74600, &[("m", 2), ("z", 1)]),
                (403280, &[("m", 3)]),
                (24, &[("z", 3)]),
            ],
        );
        assert_eq!(pe.b_path, b.with_cap(Some(3)));
        let off = NoiseModel::syndrome_extraction(&code, false, MergeMode::All);
        let totals: Vec<String> = logical_cosets(&code)
            .iter()
            .map(|(_, l)| {
                coset_enumerator(&code, l, &off, 3)
                    .unwrap()
                    .degree_sum(3)
                    .to_string()
            })
            .collect();
        assert_eq!(totals, ["120260", "95880", "120260"]);
        let a_off = path_enumerators(&code, &off, 3).unwrap().a_path;
        assert_eq!(a_off.degree_sum(3).to_string(), "144336");
    }

    #[test]
    fn cosets_partition_the_difference() {
        let code = perfect_code();
        let model = NoiseModel::syndrome_extraction(&code, true, MergeMode::All);
        let pe = path_enumerators(&code, &model, 4).unwrap();
        let mut sum = Polynomial::zero(&model.variables(), Ring::Exact);
        for (_, l) in logical_cosets(&code) {
            sum = sum
                .add(&coset_enumerator(&code, &l, &model, 4).unwrap())
                .unwrap();
        }
        assert_eq!(sum, pe.difference());
        let id = PauliString::identity(5);
        assert_eq!(coset_enumerator(&code, &id, &model, 4).unwrap(), pe.a_path);
        assert!(coset_enumerator(&code, &"XIIII".parse().unwrap(), &model, 4).is_err());
    }

    #[test]
    fn trace_matches_transform_side() {
        let code = perfect_code();
        let model = NoiseModel::initial(5);
        let v = model.homogeneous_variables();
        let t = trace_syndrome_circuit(&code, &model).unwrap();
        assert_eq!(t, transformed_sum(&code, Side::Normalizer, &model).unwrap());
        let phi0 = poly(&v, &[(1, &[("w_z", 1)]), (3, &[("z", 1)])])
            .scale(&Coefficient::from_ratio(Ring::Exact, 1, 2));
        let phi1 = poly(&v, &[(1, &[("w_z", 1)]), (-1, &[("z", 1)])])
            .scale(&Coefficient::from_ratio(Ring::Exact, 1, 2));
        let mut direct = Polynomial::zero(&v, Ring::Exact);
        for e in PauliString::all(5).filter(|e| code.in_normalizer(e)) {
            let wt = e.weight() as u32;
            direct = direct
                .add(&phi0.pow(5 - wt).mul(&phi1.pow(wt)).unwrap())
                .unwrap();
        }
        assert_eq!(t, direct);
        let full = NoiseModel::syndrome_extraction(&code, false, MergeMode::All);
        assert_eq!(
            trace_syndrome_circuit(&code, &full).unwrap(),
            transformed_sum(&code, Side::Normalizer, &full).unwrap()
        );
    }

    #[test]
    fn shor_laflamme_perfect() {
        let (a, b) = shor_laflamme(&perfect_code()).unwrap();
        let v = VarTable::new(&["z"]);
        assert_eq!(a, poly(&v, &[(1, &[]), (15, &[("z", 4)])]));
        assert_eq!(
            b,
            poly(
                &v,
                &[
                    (1, &[]),
                    (30, &[("z", 3)]),
                    (15, &[("z", 4)]),
                    (18, &[("z", 5)])
                ]
            )
        );
    }

    #[test]
    fn report_checks_pass() {
        let r = path_report(&perfect_code(), true, MergeMode::All, 3).unwrap();
        assert!(r.passed(), "{:?}", r.checks);
        assert_eq!(r.totals[1].difference, "48");
        let json = serde_json::to_string(&r).unwrap();
        let back: PathReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }
}
