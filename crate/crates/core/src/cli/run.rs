//! Elaboration of a checked program into a circuit tensor.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;

use super::dsl::{
    check, parse_pauli, parse_signed, DslError, ErrorKind, NoiseKind, PrepState, Program, Stmt,
    TraceWeights, WireKind,
};
use super::expr::parse_expr;
use crate::pauli::Pauli1;
use crate::poly::{Coefficient, Polynomial, Ring, VarTable};
use crate::tensor::{
    dense::Matrix, identity_tensor, named_classical_fn, named_gate, named_prep, pauli_for_mode,
    pauli_selector, tensor_classical_fn, tensor_controlled_pauli, tensor_destructive_meas,
    tensor_from_unitary, tensor_projective_meas, tensor_selector, tensor_state_prep, CircuitTensor,
    Signature, TensorError, Wire,
};

fn parse_real(s: &str) -> Option<Coefficient> {
    if s.is_empty() {
        return None;
    }
    if s.contains('.') || s.contains('e') {
        return s
            .parse::<f64>()
            .ok()
            .map(|v| Coefficient::float(Complex64::new(v, 0.0)));
    }
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.parse::<BigInt>().ok()?, d.parse::<BigInt>().ok()?),
        None => (s.parse::<BigInt>().ok()?, BigInt::from(1)),
    };
    if d == BigInt::from(0) {
        return None;
    }
    Some(Coefficient::exact(
        BigRational::new(n, d),
        BigRational::from_integer(BigInt::from(0)),
    ))
}

fn parse_imag(s: &str) -> Option<Coefficient> {
    let body = s.strip_suffix('i')?;
    let body = match body {
        "" | "+" => "1",
        "-" => "-1",
        b => b,
    };
    let r = parse_real(body)?;
    Some(r.mul(&Coefficient::gaussian(Ring::Exact, 0, 1)))
}

/// Matrix entry: `a`, `bi`, `a+bi` or `a-bi` with integer, fraction or decimal parts.
pub fn parse_entry(s: &str) -> Option<Coefficient> {
    if !s.ends_with('i') {
        return parse_real(s);
    }
    let split = s
        .char_indices()
        .skip(1)
        .filter(|&(k, c)| (c == '+' || c == '-') && !s[..k].ends_with('e'))
        .map(|(k, _)| k)
        .last();
    match split {
        Some(k) => Some(parse_real(&s[..k])?.add(&parse_imag(&s[k..])?)),
        None => parse_imag(s),
    }
}

/// Elaborated circuit: the untraced tensor with noise-selector inputs, plus the weights
/// each noise group is traced with.
#[derive(Clone, Debug)]
pub struct Elaborated {
    pub tensor: CircuitTensor,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    pub weights: HashMap<String, Vec<Polynomial>>,
    pub vars: Arc<VarTable>,
}

impl Elaborated {
    /// Tensor with every noise group traced against its weights.
    pub fn traced(&self) -> Result<CircuitTensor, TensorError> {
        self.tensor.trace_weights(&self.weights)
    }
}

struct State {
    t: CircuitTensor,
    ins: Vec<String>,
    outs: Vec<String>,
    fresh: usize,
}

impl State {
    fn apply(
        &mut self,
        gate: &CircuitTensor,
        consumed: &[String],
        produced: Vec<String>,
    ) -> Result<(), TensorError> {
        let idx: Vec<usize> = consumed
            .iter()
            .map(|w| self.outs.iter().position(|o| o == w).expect("checked wire"))
            .collect();
        self.t = self.t.apply(gate, &idx)?;
        let rest: Vec<(usize, String)> = self
            .outs
            .drain(..)
            .enumerate()
            .filter(|(i, _)| !idx.contains(i))
            .collect();
        let at = idx
            .first()
            .map_or(rest.len(), |&w| rest.iter().filter(|(r, _)| *r < w).count());
        self.outs = rest.into_iter().map(|(_, n)| n).collect();
        self.outs.splice(at..at, produced);
        Ok(())
    }

    fn temp(&mut self) -> String {
        self.fresh += 1;
        format!("~{}", self.fresh)
    }

    /// Duplicates bit `b`, returning the name of the copy.
    fn copy(&mut self, b: &str) -> Result<String, TensorError> {
        let t = self.temp();
        let f = named_classical_fn("copy").expect("builtin");
        self.apply(&f, &[b.to_string()], vec![b.to_string(), t.clone()])?;
        Ok(t)
    }

    /// Prepends noise wires as fresh inputs and outputs, returning their names.
    fn noise_wires(&mut self, wires: &[Wire]) -> Result<Vec<String>, TensorError> {
        let names: Vec<String> = wires.iter().map(|_| self.temp()).collect();
        self.t = identity_tensor(&Signature(wires.to_vec())).kron(&self.t)?;
        self.ins.splice(0..0, names.iter().cloned());
        self.outs.splice(0..0, names.iter().cloned());
        Ok(names)
    }
}

fn wire(kind: WireKind) -> Wire {
    match kind {
        WireKind::Qubit => Wire::Quantum,
        WireKind::Dit(n) => Wire::Classical(n),
    }
}

fn discard_tensor(w: &Wire) -> Result<CircuitTensor, TensorError> {
    match w {
        Wire::Quantum => {
            let mut t = CircuitTensor::new(Signature::qubits(1), Signature::empty(), Ring::Exact);
            t.add_const(vec![0], vec![], Coefficient::one(Ring::Exact))?;
            Ok(t)
        }
        Wire::Classical(2) => Ok(named_classical_fn("discard").expect("builtin")),
        Wire::Classical(n) | Wire::Noise { arity: n, .. } => {
            tensor_classical_fn(&vec![vec![]; *n as usize], &[*n], &[])
        }
    }
}

fn unitary(rows: &[Vec<String>]) -> Option<Matrix> {
    let rows: Option<Vec<Vec<Coefficient>>> = rows
        .iter()
        .map(|r| r.iter().map(|e| parse_entry(e)).collect())
        .collect();
    let rows = rows?;
    let ring = if rows.iter().flatten().any(|c| c.ring() == Ring::Float) {
        Ring::Float
    } else {
        Ring::Exact
    };
    Some(Matrix::from_rows(
        rows.into_iter()
            .map(|r| r.into_iter().map(|c| c.to_ring(ring)).collect())
            .collect(),
    ))
}

fn basis(c: char) -> Pauli1 {
    match c {
        'X' => Pauli1::X,
        'Y' => Pauli1::Y,
        _ => Pauli1::Z,
    }
}

fn group_wires(group: &str, kind: &NoiseKind, nq: usize) -> Vec<Wire> {
    let bin = Wire::Noise {
        arity: 2,
        group: group.to_string(),
    };
    match kind {
        NoiseKind::Pauli | NoiseKind::CPauli => vec![bin; 2 * nq],
        NoiseKind::Flip => vec![bin],
        NoiseKind::Select(g) => vec![Wire::Noise {
            arity: g.len() as u32,
            group: group.to_string(),
        }],
    }
}

/// Checks and elaborates `p`.
pub fn elaborate(p: &Program) -> Result<Elaborated, DslError> {
    check(p)?;
    let mut st = State {
        t: CircuitTensor::new(Signature::empty(), Signature::empty(), Ring::Exact),
        ins: Vec::new(),
        outs: Vec::new(),
        fresh: 0,
    };
    st.t.add_const(vec![], vec![], Coefficient::one(Ring::Exact))
        .expect("scalar");
    let mut modes: HashMap<String, usize> = HashMap::new();
    for (s, &ln) in p.stmts.iter().zip(&p.lines) {
        let tensor_err = |e: TensorError| DslError {
            line: ln,
            col: 1,
            kind: ErrorKind::Tensor,
            msg: e.to_string(),
        };
        run_stmt(&mut st, s, &mut modes).map_err(tensor_err)?;
    }
    let output = p
        .stmts
        .iter()
        .zip(&p.lines)
        .find(|(s, _)| matches!(s, Stmt::Output { .. }));
    if let Some((Stmt::Output { wires }, &ln)) = output {
        let perm: Vec<usize> = wires
            .iter()
            .map(|w| st.outs.iter().position(|o| o == w).expect("checked output"))
            .collect();
        st.t = st.t.permute_outputs(&perm).map_err(|e| DslError {
            line: ln,
            col: 1,
            kind: ErrorKind::Tensor,
            msg: e.to_string(),
        })?;
        st.outs = wires.clone();
    }
    let mut names: Vec<String> = Vec::new();
    let mut exprs = Vec::new();
    for (s, &ln) in p.stmts.iter().zip(&p.lines) {
        if let Stmt::Trace { group, weights } = s {
            let srcs: Vec<&String> = match weights {
                TraceWeights::Uniform(w, z) => {
                    let mut v = vec![w];
                    v.extend(std::iter::repeat_n(z, modes[group] - 1));
                    v
                }
                TraceWeights::List(ws) => ws.iter().collect(),
            };
            let mut parsed = Vec::new();
            for src in srcs {
                let e = parse_expr(src).map_err(|e| DslError {
                    line: ln,
                    col: 1,
                    kind: ErrorKind::Syntax,
                    msg: e.to_string(),
                })?;
                for v in e.variables() {
                    if !names.contains(&v) {
                        names.push(v);
                    }
                }
                parsed.push(e);
            }
            exprs.push((group.clone(), parsed, ln));
        }
    }
    let vars = VarTable::new(&names);
    let mut weights = HashMap::new();
    for (g, es, ln) in exprs {
        let ps: Result<Vec<Polynomial>, _> = es.iter().map(|e| e.eval(&vars)).collect();
        let ps = ps.map_err(|e| DslError {
            line: ln,
            col: 1,
            kind: ErrorKind::Semantic,
            msg: e.to_string(),
        })?;
        weights.insert(g, ps);
    }
    Ok(Elaborated {
        tensor: st.t,
        inputs: st.ins,
        outputs: st.outs,
        weights,
        vars,
    })
}

fn run_stmt(
    st: &mut State,
    s: &Stmt,
    modes: &mut HashMap<String, usize>,
) -> Result<(), TensorError> {
    match s {
        Stmt::Input { kind, wires } => {
            for w in wires {
                st.t = st.t.kron(&identity_tensor(&Signature(vec![wire(*kind)])))?;
                st.ins.push(w.clone());
                st.outs.push(w.clone());
            }
        }
        Stmt::Prep { state, wires } => {
            let t = match state {
                PrepState::Named(n) => named_prep(n).expect("checked state"),
                PrepState::Stabilizer(gens) => {
                    let gens: Vec<_> = gens
                        .iter()
                        .map(|g| parse_signed(g).expect("checked generator"))
                        .collect();
                    tensor_state_prep(&gens)?
                }
            };
            st.apply(&t, &[], wires.clone())?;
        }
        Stmt::Gate { name, wires } => {
            st.apply(
                &named_gate(name).expect("checked gate"),
                wires,
                wires.clone(),
            )?;
        }
        Stmt::Unitary { wires, rows } => {
            let u = unitary(rows).expect("checked entries");
            st.apply(&tensor_from_unitary(&u)?, wires, wires.clone())?;
        }
        Stmt::Measure {
            basis: b,
            qubit,
            bit,
        } => {
            st.apply(
                &tensor_destructive_meas(basis(*b))?,
                std::slice::from_ref(qubit),
                vec![bit.clone()],
            )?;
        }
        Stmt::Project { pauli, qubits, bit } => {
            let t = tensor_projective_meas(&parse_signed(pauli).expect("checked operator"))?;
            let mut produced = vec![bit.clone()];
            produced.extend(qubits.iter().cloned());
            st.apply(&t, qubits, produced)?;
        }
        Stmt::CPauli {
            pauli,
            control,
            qubits,
        } => {
            let c = st.copy(control)?;
            let t = tensor_controlled_pauli(&parse_pauli(pauli).expect("checked operator"))?;
            let mut consumed = vec![c];
            consumed.extend(qubits.iter().cloned());
            st.apply(&t, &consumed, qubits.clone())?;
        }
        Stmt::Classical { func, ins, outs } => {
            st.apply(
                &named_classical_fn(func).expect("checked function"),
                ins,
                outs.clone(),
            )?;
        }
        Stmt::Discard { wires } => {
            for w in wires {
                let k = st.outs.iter().position(|o| o == w).expect("checked wire");
                let t = discard_tensor(&st.t.outs().0[k].clone())?;
                st.apply(&t, std::slice::from_ref(w), vec![])?;
            }
        }
        Stmt::Noise { group, kind, wires } => {
            let nq = match kind {
                NoiseKind::Flip => 0,
                NoiseKind::CPauli => wires.len() - 1,
                _ => wires.len(),
            };
            let ws = group_wires(group, kind, nq);
            let (sel, targets, produced) = match kind {
                NoiseKind::Pauli => (pauli_selector(nq, group)?, wires.clone(), wires.clone()),
                NoiseKind::Flip => {
                    let chans = [
                        identity_tensor(&Signature(vec![Wire::Classical(2)])),
                        named_classical_fn("not").expect("builtin"),
                    ];
                    (
                        tensor_selector(&chans, ws.clone())?,
                        wires.clone(),
                        wires.clone(),
                    )
                }
                NoiseKind::CPauli => {
                    let chans: Result<Vec<_>, _> = (0..1usize << (2 * nq))
                        .map(|m| tensor_controlled_pauli(&pauli_for_mode(nq, m)))
                        .collect();
                    let c = st.copy(&wires[0])?;
                    let mut targets = vec![c];
                    targets.extend(wires[1..].iter().cloned());
                    (
                        tensor_selector(&chans?, ws.clone())?,
                        targets,
                        wires[1..].to_vec(),
                    )
                }
                NoiseKind::Select(gates) => {
                    let chans: Vec<_> = gates
                        .iter()
                        .map(|g| named_gate(g).expect("checked gate"))
                        .collect();
                    (
                        tensor_selector(&chans, ws.clone())?,
                        wires.clone(),
                        wires.clone(),
                    )
                }
            };
            let mut consumed = st.noise_wires(&ws)?;
            consumed.extend(targets);
            st.apply(&sel, &consumed, produced)?;
            modes.insert(group.clone(), super::dsl::noise_modes(kind, nq));
        }
        Stmt::Trace { .. } | Stmt::Output { .. } => {}
    }
    Ok(())
}

/// Parses, checks and elaborates circuit source.
pub fn elaborate_source(src: &str) -> Result<Elaborated, DslError> {
    elaborate(&super::dsl::parse_syntax(src)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::PauliString;
    use crate::tensor::pauli_label;

    #[test]
    fn entries() {
        assert_eq!(
            parse_entry("1/2"),
            Some(Coefficient::from_ratio(Ring::Exact, 1, 2))
        );
        assert_eq!(
            parse_entry("-i"),
            Some(Coefficient::gaussian(Ring::Exact, 0, -1))
        );
        assert_eq!(
            parse_entry("1-2i"),
            Some(Coefficient::gaussian(Ring::Exact, 1, -2))
        );
        assert_eq!(parse_entry("0.5").map(|c| c.ring()), Some(Ring::Float));
        assert_eq!(parse_entry("1/0"), None);
        assert_eq!(parse_entry("x"), None);
    }

    #[test]
    fn teleportation_is_identity() {
        let e = elaborate_source(
            "input qubit q0\nprep bell q1 q2\ngate CX q0 q1\ngate H q0\nmeasure Z q0 -> b0\n\
             measure Z q1 -> b1\ncpauli X b1 q2\ncpauli Z b0 q2\ndiscard b0 b1\noutput q2\n",
        )
        .unwrap();
        assert_eq!(e.traced().unwrap(), identity_tensor(&Signature::qubits(1)));
    }

    #[test]
    fn uniform_noise_traces_to_pauli_channel() {
        let e = elaborate_source(
            "input qubit a\nnoise pauli g a\ntrace g uniform \"1 - 3p/4\" \"p/4\"\noutput a",
        )
        .unwrap();
        let t = e.traced().unwrap();
        assert!(t.is_diagonal());
        let one = Polynomial::one(&e.vars, Ring::Exact);
        let u = one
            .sub(&Polynomial::var(&e.vars, Ring::Exact, "p").unwrap())
            .unwrap();
        assert_eq!(t.get(&[0], &[0]), Some(&one));
        for p in ["X", "Y", "Z"] {
            let l = pauli_label(&p.parse::<PauliString>().unwrap());
            assert_eq!(t.get(&l, &l), Some(&u));
        }
    }

    #[test]
    fn flip_and_select() {
        let e =
            elaborate_source("input bit b\nnoise flip g b\ntrace g weights \"1-r\" r\noutput b")
                .unwrap();
        let t = e.traced().unwrap();
        let one = Polynomial::one(&e.vars, Ring::Exact);
        assert_eq!(t.get(&[0], &[0]), Some(&one));
        let r2 = Polynomial::var(&e.vars, Ring::Exact, "r")
            .unwrap()
            .scale(&Coefficient::from_int(Ring::Exact, 2));
        assert_eq!(t.get(&[1], &[1]), Some(&one.sub(&r2).unwrap()));
        let e = elaborate_source(
            "input qubit a\nnoise select g a : I S\ntrace g weights 0 1\noutput a",
        )
        .unwrap();
        assert_eq!(e.traced().unwrap(), named_gate("S").unwrap());
    }
}
