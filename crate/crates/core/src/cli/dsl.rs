//! Line-oriented circuit description language. See docs/circuit-format.md.

use std::collections::{HashMap, HashSet};
use std::fmt;

use super::expr::parse_expr;
use crate::pauli::{PauliString, SignedPauli};
use crate::tensor::{named_classical_fn, named_gate, named_prep};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    Lexical,
    Syntax,
    Undefined,
    Signature,
    Semantic,
    Tensor,
}

impl fmt::Display for ErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ErrorKind::Lexical => "lexical",
            ErrorKind::Syntax => "syntax",
            ErrorKind::Undefined => "undefined wire",
            ErrorKind::Signature => "signature",
            ErrorKind::Semantic => "semantic",
            ErrorKind::Tensor => "tensor",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {col}: {kind} error: {msg}")]
pub struct DslError {
    pub line: usize,
    pub col: usize,
    pub kind: ErrorKind,
    pub msg: String,
}

fn err<T>(line: usize, col: usize, kind: ErrorKind, msg: impl Into<String>) -> Result<T, DslError> {
    Err(DslError {
        line,
        col,
        kind,
        msg: msg.into(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WireKind {
    Qubit,
    /// Classical wire with the given number of values; `bit` is `Dit(2)`.
    Dit(u32),
}

impl fmt::Display for WireKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WireKind::Qubit => f.write_str("qubit"),
            WireKind::Dit(2) => f.write_str("bit"),
            WireKind::Dit(n) => write!(f, "dit{n}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrepState {
    Named(String),
    Stabilizer(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NoiseKind {
    /// Pauli channel over all 4^n Paulis on the listed qubits.
    Pauli,
    /// Classical bit flip on one bit.
    Flip,
    /// Pauli noise on the qubits applied only when the control bit (first wire) is 1.
    CPauli,
    /// Selects one of the named gates.
    Select(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceWeights {
    /// First mode gets the first expression, every other mode the second.
    Uniform(String, String),
    List(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stmt {
    Input {
        kind: WireKind,
        wires: Vec<String>,
    },
    Prep {
        state: PrepState,
        wires: Vec<String>,
    },
    Gate {
        name: String,
        wires: Vec<String>,
    },
    Unitary {
        wires: Vec<String>,
        rows: Vec<Vec<String>>,
    },
    Measure {
        basis: char,
        qubit: String,
        bit: String,
    },
    Project {
        pauli: String,
        qubits: Vec<String>,
        bit: String,
    },
    CPauli {
        pauli: String,
        control: String,
        qubits: Vec<String>,
    },
    Classical {
        func: String,
        ins: Vec<String>,
        outs: Vec<String>,
    },
    Discard {
        wires: Vec<String>,
    },
    Noise {
        group: String,
        kind: NoiseKind,
        wires: Vec<String>,
    },
    Trace {
        group: String,
        weights: TraceWeights,
    },
    Output {
        wires: Vec<String>,
    },
}

/// Parsed circuit. Equality ignores source line numbers.
#[derive(Clone, Debug, Default)]
pub struct Program {
    pub stmts: Vec<Stmt>,
    pub lines: Vec<usize>,
}

impl PartialEq for Program {
    fn eq(&self, o: &Program) -> bool {
        self.stmts == o.stmts
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Word(String),
    Str(String),
    Arrow,
    Eq,
    Colon,
    Open,
    Close,
    Semi,
}

fn lex_line(line: &str, ln: usize) -> Result<Vec<(usize, Tok)>, DslError> {
    let cs: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        let col = i + 1;
        match c {
            '#' => break,
            _ if c.is_whitespace() => i += 1,
            '-' if cs.get(i + 1) == Some(&'>') => {
                out.push((col, Tok::Arrow));
                i += 2;
            }
            '=' | ':' | '[' | ']' | ';' => {
                out.push((
                    col,
                    match c {
                        '=' => Tok::Eq,
                        ':' => Tok::Colon,
                        '[' => Tok::Open,
                        ']' => Tok::Close,
                        _ => Tok::Semi,
                    },
                ));
                i += 1;
            }
            '"' => {
                let st = i + 1;
                let Some(len) = cs[st..].iter().position(|&c| c == '"') else {
                    return err(ln, col, ErrorKind::Lexical, "unterminated string");
                };
                out.push((col, Tok::Str(cs[st..st + len].iter().collect())));
                i = st + len + 1;
            }
            _ if c.is_alphanumeric() || "_+-./*^()'".contains(c) => {
                let st = i;
                while i < cs.len() {
                    let d = cs[i];
                    if d == '-' && cs.get(i + 1) == Some(&'>') {
                        break;
                    }
                    if !(d.is_alphanumeric() || "_+-./*^()'".contains(d)) {
                        break;
                    }
                    i += 1;
                }
                out.push((col, Tok::Word(cs[st..i].iter().collect())));
            }
            _ => {
                return err(
                    ln,
                    col,
                    ErrorKind::Lexical,
                    format!("unexpected character {c:?}"),
                )
            }
        }
    }
    Ok(out)
}

struct Cursor<'a> {
    toks: &'a [(usize, Tok)],
    pos: usize,
    line: usize,
    end: usize,
}

impl Cursor<'_> {
    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(c, _)| *c)
    }

    fn fail<T>(&self, msg: impl Into<String>) -> Result<T, DslError> {
        err(self.line, self.col(), ErrorKind::Syntax, msg)
    }

    fn at(&self, t: &Tok) -> bool {
        self.toks.get(self.pos).map(|(_, x)| x) == Some(t)
    }

    fn done(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<(), DslError> {
        if self.at(&t) {
            self.pos += 1;
            Ok(())
        } else {
            self.fail(format!("expected {what}"))
        }
    }

    fn word(&mut self, what: &str) -> Result<String, DslError> {
        match self.toks.get(self.pos) {
            Some((_, Tok::Word(w))) => {
                self.pos += 1;
                Ok(w.clone())
            }
            _ => self.fail(format!("expected {what}")),
        }
    }

    fn name(&mut self, what: &str) -> Result<String, DslError> {
        let col = self.col();
        let w = self.word(what)?;
        if !valid_name(&w) {
            return err(
                self.line,
                col,
                ErrorKind::Syntax,
                format!("invalid name {w:?}"),
            );
        }
        Ok(w)
    }

    /// Names up to the next symbol or end of line.
    fn names(&mut self, what: &str, min: usize) -> Result<Vec<String>, DslError> {
        let mut out = Vec::new();
        while let Some((_, Tok::Word(_))) = self.toks.get(self.pos) {
            out.push(self.name(what)?);
        }
        if out.len() < min {
            return self.fail(format!("expected {what}"));
        }
        Ok(out)
    }

    fn expr(&mut self) -> Result<String, DslError> {
        let col = self.col();
        let s = match self.toks.get(self.pos) {
            Some((_, Tok::Word(w) | Tok::Str(w))) => w.trim().to_string(),
            _ => return self.fail("expected a weight expression"),
        };
        self.pos += 1;
        if let Err(e) = parse_expr(&s) {
            return err(
                self.line,
                col,
                ErrorKind::Syntax,
                format!("in expression {s:?}: {e}"),
            );
        }
        Ok(s)
    }

    fn finish(&self) -> Result<(), DslError> {
        if self.done() {
            Ok(())
        } else {
            self.fail("unexpected trailing input")
        }
    }
}

fn valid_name(w: &str) -> bool {
    let mut cs = w.chars();
    cs.next().is_some_and(|c| c.is_alphabetic() || c == '_')
        && cs.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

fn parse_kind(w: &str) -> Option<WireKind> {
    match w {
        "qubit" => Some(WireKind::Qubit),
        "bit" => Some(WireKind::Dit(2)),
        _ => w
            .strip_prefix("dit")?
            .parse()
            .ok()
            .filter(|&n| n >= 2)
            .map(WireKind::Dit),
    }
}

fn parse_stmt(c: &mut Cursor) -> Result<Stmt, DslError> {
    let kw = c.word("a statement keyword")?;
    let stmt = match kw.as_str() {
        "input" => {
            let col = c.col();
            let k = c.word("a wire kind")?;
            let kind = parse_kind(&k).ok_or_else(|| DslError {
                line: c.line,
                col,
                kind: ErrorKind::Syntax,
                msg: format!("unknown wire kind {k:?}"),
            })?;
            Stmt::Input {
                kind,
                wires: c.names("wire names", 1)?,
            }
        }
        "prep" => {
            let state = c.word("a state name")?;
            if state == "stab" {
                let mut gens = Vec::new();
                while let Some((_, Tok::Word(_))) = c.toks.get(c.pos) {
                    gens.push(c.word("a generator")?);
                }
                c.expect(Tok::Colon, "':' after the generators")?;
                Stmt::Prep {
                    state: PrepState::Stabilizer(gens),
                    wires: c.names("wire names", 1)?,
                }
            } else {
                Stmt::Prep {
                    state: PrepState::Named(state),
                    wires: c.names("wire names", 1)?,
                }
            }
        }
        "gate" => {
            let name = c.word("a gate name")?;
            Stmt::Gate {
                name,
                wires: c.names("wire names", 1)?,
            }
        }
        "unitary" => {
            let wires = c.names("wire names", 1)?;
            c.expect(Tok::Eq, "'='")?;
            c.expect(Tok::Open, "'['")?;
            let mut rows = vec![Vec::new()];
            loop {
                match c.toks.get(c.pos) {
                    Some((_, Tok::Word(w))) => {
                        rows.last_mut().expect("nonempty").push(w.clone());
                        c.pos += 1;
                    }
                    Some((_, Tok::Semi)) => {
                        rows.push(Vec::new());
                        c.pos += 1;
                    }
                    Some((_, Tok::Close)) => {
                        c.pos += 1;
                        break;
                    }
                    _ => return c.fail("expected a matrix entry, ';' or ']'"),
                }
            }
            Stmt::Unitary { wires, rows }
        }
        "measure" => {
            let col = c.col();
            let b = c.word("a basis")?;
            let basis = match b.as_str() {
                "X" | "Y" | "Z" => b.chars().next().expect("nonempty"),
                _ => return err(c.line, col, ErrorKind::Syntax, "basis must be X, Y or Z"),
            };
            let qubit = c.name("a qubit")?;
            c.expect(Tok::Arrow, "'->'")?;
            Stmt::Measure {
                basis,
                qubit,
                bit: c.name("a bit")?,
            }
        }
        "project" => {
            let pauli = c.word("a Pauli operator")?;
            let qubits = c.names("qubits", 1)?;
            c.expect(Tok::Arrow, "'->'")?;
            Stmt::Project {
                pauli,
                qubits,
                bit: c.name("a bit")?,
            }
        }
        "cpauli" => {
            let pauli = c.word("a Pauli operator")?;
            let control = c.name("a control bit")?;
            Stmt::CPauli {
                pauli,
                control,
                qubits: c.names("qubits", 1)?,
            }
        }
        "classical" => {
            let func = c.word("a function name")?;
            let ins = c.names("inputs", 0)?;
            c.expect(Tok::Arrow, "'->'")?;
            Stmt::Classical {
                func,
                ins,
                outs: c.names("outputs", 0)?,
            }
        }
        "discard" => Stmt::Discard {
            wires: c.names("wire names", 1)?,
        },
        "noise" => {
            let col = c.col();
            let k = c.word("a noise kind")?;
            let group = c.name("a noise group")?;
            let wires = c.names("wire names", 1)?;
            let kind = match k.as_str() {
                "pauli" => NoiseKind::Pauli,
                "flip" => NoiseKind::Flip,
                "cpauli" => NoiseKind::CPauli,
                "select" => {
                    c.expect(Tok::Colon, "':' before the gate list")?;
                    let mut gates = Vec::new();
                    while let Some((_, Tok::Word(_))) = c.toks.get(c.pos) {
                        gates.push(c.word("a gate name")?);
                    }
                    NoiseKind::Select(gates)
                }
                _ => {
                    return err(
                        c.line,
                        col,
                        ErrorKind::Syntax,
                        format!("unknown noise kind {k:?}"),
                    )
                }
            };
            Stmt::Noise { group, kind, wires }
        }
        "trace" => {
            let group = c.name("a noise group")?;
            let col = c.col();
            let k = c.word("'uniform' or 'weights'")?;
            let weights = match k.as_str() {
                "uniform" => TraceWeights::Uniform(c.expr()?, c.expr()?),
                "weights" => {
                    let mut ws = vec![c.expr()?];
                    while !c.done() {
                        ws.push(c.expr()?);
                    }
                    TraceWeights::List(ws)
                }
                _ => {
                    return err(
                        c.line,
                        col,
                        ErrorKind::Syntax,
                        "expected 'uniform' or 'weights'",
                    )
                }
            };
            Stmt::Trace { group, weights }
        }
        "output" => Stmt::Output {
            wires: c.names("wire names", 0)?,
        },
        _ => {
            c.pos -= 1;
            return c.fail(format!("unknown statement {kw:?}"));
        }
    };
    c.finish()?;
    Ok(stmt)
}

/// Parses without checking wire usage.
pub fn parse_syntax(src: &str) -> Result<Program, DslError> {
    let mut p = Program::default();
    for (i, line) in src.lines().enumerate() {
        let ln = i + 1;
        let toks = lex_line(line, ln)?;
        if toks.is_empty() {
            continue;
        }
        let mut c = Cursor {
            toks: &toks,
            pos: 0,
            line: ln,
            end: line.chars().count() + 1,
        };
        p.stmts.push(parse_stmt(&mut c)?);
        p.lines.push(ln);
    }
    Ok(p)
}

/// Parses and checks a circuit.
pub fn parse_program(src: &str) -> Result<Program, DslError> {
    let p = parse_syntax(src)?;
    check(&p)?;
    Ok(p)
}

/// Number of selector modes for a noise statement on wires of the given kinds.
pub(crate) fn noise_modes(kind: &NoiseKind, nqubits: usize) -> usize {
    match kind {
        NoiseKind::Pauli | NoiseKind::CPauli => 1 << (2 * nqubits),
        NoiseKind::Flip => 2,
        NoiseKind::Select(g) => g.len(),
    }
}

pub(crate) fn parse_pauli(s: &str) -> Option<PauliString> {
    s.parse::<PauliString>().ok()
}

pub(crate) fn parse_signed(s: &str) -> Option<SignedPauli> {
    s.parse::<SignedPauli>().ok()
}

struct Checker {
    live: Vec<(String, WireKind)>,
    groups: HashMap<String, (usize, usize)>,
    traced: HashSet<String>,
    line: usize,
}

impl Checker {
    fn kind_of(&self, w: &str) -> Option<WireKind> {
        self.live.iter().find(|(n, _)| n == w).map(|(_, k)| *k)
    }

    fn take(&mut self, wires: &[String], want: &[WireKind]) -> Result<(), DslError> {
        let mut seen = HashSet::new();
        for (w, k) in wires.iter().zip(want) {
            if !seen.insert(w) {
                return err(
                    self.line,
                    1,
                    ErrorKind::Signature,
                    format!("wire {w} used twice"),
                );
            }
            match self.kind_of(w) {
                None => {
                    return err(
                        self.line,
                        1,
                        ErrorKind::Undefined,
                        format!("{w} is not a live wire"),
                    )
                }
                Some(got) if got != *k => {
                    return err(
                        self.line,
                        1,
                        ErrorKind::Signature,
                        format!("{w} is a {got}, expected a {k}"),
                    )
                }
                _ => {}
            }
        }
        if wires.len() != want.len() {
            return err(
                self.line,
                0,
                ErrorKind::Signature,
                format!("expected {} wires, got {}", want.len(), wires.len()),
            );
        }
        self.live.retain(|(n, _)| !wires.contains(n));
        Ok(())
    }

    fn add(&mut self, wires: &[String], kind: WireKind) -> Result<(), DslError> {
        for (i, w) in wires.iter().enumerate() {
            if self.kind_of(w).is_some() || wires[..i].contains(w) {
                return err(
                    self.line,
                    1,
                    ErrorKind::Semantic,
                    format!("wire {w} is already live"),
                );
            }
            self.live.push((w.clone(), kind));
        }
        Ok(())
    }

    fn stmt(&mut self, s: &Stmt) -> Result<(), DslError> {
        use WireKind::{Dit, Qubit};
        let sig = |k: ErrorKind, m: String| err::<()>(self.line, 1, k, m);
        let qubits = |n: usize| vec![Qubit; n];
        match s {
            Stmt::Input { kind, wires } => self.add(wires, *kind)?,
            Stmt::Prep { state, wires } => {
                let n = match state {
                    PrepState::Named(name) => match named_prep(name) {
                        Some(t) => t.outs().len(),
                        None => return sig(ErrorKind::Semantic, format!("unknown state {name:?}")),
                    },
                    PrepState::Stabilizer(gens) => {
                        for g in gens {
                            match parse_signed(g) {
                                Some(p) if p.pauli.n() == wires.len() => {}
                                _ => {
                                    return sig(
                                        ErrorKind::Signature,
                                        format!(
                                            "generator {g:?} is not a Pauli on {} qubits",
                                            wires.len()
                                        ),
                                    )
                                }
                            }
                        }
                        wires.len()
                    }
                };
                if n != wires.len() {
                    return sig(
                        ErrorKind::Signature,
                        format!("state has {n} qubits, got {} wires", wires.len()),
                    );
                }
                self.add(wires, Qubit)?;
            }
            Stmt::Gate { name, wires } => {
                let Some(g) = named_gate(name) else {
                    return sig(ErrorKind::Semantic, format!("unknown gate {name:?}"));
                };
                self.take(wires, &qubits(g.ins().len()))?;
                self.add(wires, Qubit)?;
            }
            Stmt::Unitary { wires, rows } => {
                let d = 1usize << wires.len();
                if rows.len() != d || rows.iter().any(|r| r.len() != d) {
                    return sig(ErrorKind::Signature, format!("matrix must be {d}x{d}"));
                }
                for e in rows.iter().flatten() {
                    if super::run::parse_entry(e).is_none() {
                        return sig(ErrorKind::Syntax, format!("bad matrix entry {e:?}"));
                    }
                }
                self.take(wires, &qubits(wires.len()))?;
                self.add(wires, Qubit)?;
            }
            Stmt::Measure { qubit, bit, .. } => {
                self.take(std::slice::from_ref(qubit), &[Qubit])?;
                self.add(std::slice::from_ref(bit), Dit(2))?;
            }
            Stmt::Project {
                pauli,
                qubits: qs,
                bit,
            } => {
                match parse_signed(pauli) {
                    Some(p) if p.pauli.n() == qs.len() => {}
                    _ => {
                        return sig(
                            ErrorKind::Signature,
                            format!("{pauli:?} is not a Pauli on {} qubits", qs.len()),
                        )
                    }
                }
                self.take(qs, &qubits(qs.len()))?;
                self.add(std::slice::from_ref(bit), Dit(2))?;
                self.add(qs, Qubit)?;
            }
            Stmt::CPauli {
                pauli,
                control,
                qubits: qs,
            } => {
                match parse_pauli(pauli) {
                    Some(p) if p.n() == qs.len() => {}
                    _ => {
                        return sig(
                            ErrorKind::Signature,
                            format!("{pauli:?} is not a Pauli on {} qubits", qs.len()),
                        )
                    }
                }
                let mut all = vec![control.clone()];
                all.extend(qs.iter().cloned());
                let mut want = vec![Dit(2)];
                want.extend(qubits(qs.len()));
                self.take(&all, &want)?;
                self.add(&all[..1], Dit(2))?;
                self.add(qs, Qubit)?;
            }
            Stmt::Classical { func, ins, outs } => {
                let Some(f) = named_classical_fn(func) else {
                    return sig(
                        ErrorKind::Semantic,
                        format!("unknown classical function {func:?}"),
                    );
                };
                if f.outs().len() != outs.len() {
                    return sig(
                        ErrorKind::Signature,
                        format!("{func} has {} outputs, got {}", f.outs().len(), outs.len()),
                    );
                }
                self.take(ins, &vec![Dit(2); f.ins().len()])?;
                self.add(outs, Dit(2))?;
            }
            Stmt::Discard { wires } => {
                let mut want = Vec::new();
                for w in wires {
                    match self.kind_of(w) {
                        Some(k) => want.push(k),
                        None => {
                            return sig(ErrorKind::Undefined, format!("{w} is not a live wire"))
                        }
                    }
                }
                self.take(wires, &want)?;
            }
            Stmt::Noise { group, kind, wires } => {
                if self.groups.contains_key(group) {
                    return sig(
                        ErrorKind::Semantic,
                        format!("noise group {group} declared twice"),
                    );
                }
                let nq = match kind {
                    NoiseKind::Pauli => wires.len(),
                    NoiseKind::Flip => 0,
                    NoiseKind::CPauli => wires.len().saturating_sub(1),
                    NoiseKind::Select(gates) => {
                        if gates.len() < 2 {
                            return sig(
                                ErrorKind::Semantic,
                                "select needs at least two gates".into(),
                            );
                        }
                        for g in gates {
                            match named_gate(g) {
                                Some(t) if t.ins().len() == wires.len() => {}
                                Some(_) => {
                                    return sig(
                                        ErrorKind::Signature,
                                        format!("gate {g} does not act on {} qubits", wires.len()),
                                    )
                                }
                                None => {
                                    return sig(ErrorKind::Semantic, format!("unknown gate {g:?}"))
                                }
                            }
                        }
                        wires.len()
                    }
                };
                let want = match kind {
                    NoiseKind::Flip => vec![Dit(2)],
                    NoiseKind::CPauli => {
                        if wires.len() < 2 {
                            return sig(
                                ErrorKind::Signature,
                                "cpauli noise needs a bit and a qubit".into(),
                            );
                        }
                        let mut v = vec![Dit(2)];
                        v.extend(qubits(nq));
                        v
                    }
                    _ => qubits(nq),
                };
                let kinds: Vec<WireKind> = wires.iter().filter_map(|w| self.kind_of(w)).collect();
                self.take(wires, &want)?;
                for (w, k) in wires.iter().zip(kinds) {
                    self.live.push((w.clone(), k));
                }
                self.groups
                    .insert(group.clone(), (noise_modes(kind, nq), self.line));
            }
            Stmt::Trace { group, weights } => {
                if !self.traced.insert(group.clone()) {
                    return sig(
                        ErrorKind::Semantic,
                        format!("noise group {group} traced twice"),
                    );
                }
                let Some(&(modes, _)) = self.groups.get(group) else {
                    return sig(
                        ErrorKind::Semantic,
                        format!("trace of undeclared noise group {group}"),
                    );
                };
                if let TraceWeights::List(ws) = weights {
                    if ws.len() != modes {
                        return sig(
                            ErrorKind::Semantic,
                            format!(
                                "noise group {group} has {modes} modes, got {} weights",
                                ws.len()
                            ),
                        );
                    }
                }
            }
            Stmt::Output { wires } => {
                let mut seen = HashSet::new();
                for w in wires {
                    if self.kind_of(w).is_none() {
                        return sig(ErrorKind::Undefined, format!("{w} is not a live wire"));
                    }
                    if !seen.insert(w) {
                        return sig(ErrorKind::Semantic, format!("{w} listed twice"));
                    }
                }
                if let Some((w, _)) = self.live.iter().find(|(n, _)| !seen.contains(n)) {
                    return sig(
                        ErrorKind::Semantic,
                        format!("{w} is live but neither output nor discarded"),
                    );
                }
            }
        }
        Ok(())
    }
}

/// Wire usage, signatures, noise groups and outputs.
pub fn check(p: &Program) -> Result<(), DslError> {
    let mut c = Checker {
        live: Vec::new(),
        groups: HashMap::new(),
        traced: HashSet::new(),
        line: 0,
    };
    let mut closed = false;
    for (s, &ln) in p.stmts.iter().zip(&p.lines) {
        c.line = ln;
        if closed && !matches!(s, Stmt::Trace { .. }) {
            return err(
                ln,
                1,
                ErrorKind::Semantic,
                "only trace directives may follow output",
            );
        }
        closed |= matches!(s, Stmt::Output { .. });
        c.stmt(s)?;
    }
    let mut missing: Vec<(&String, &(usize, usize))> = c
        .groups
        .iter()
        .filter(|(g, _)| !c.traced.contains(*g))
        .collect();
    missing.sort_by_key(|(_, (_, l))| *l);
    if let Some((g, (_, l))) = missing.first() {
        return err(
            *l,
            1,
            ErrorKind::Semantic,
            format!("noise group {g} has no trace directive"),
        );
    }
    Ok(())
}

fn join(ws: &[String]) -> String {
    ws.join(" ")
}

impl fmt::Display for Stmt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stmt::Input { kind, wires } => write!(f, "input {kind} {}", join(wires)),
            Stmt::Prep {
                state: PrepState::Named(s),
                wires,
            } => write!(f, "prep {s} {}", join(wires)),
            Stmt::Prep {
                state: PrepState::Stabilizer(g),
                wires,
            } => {
                write!(f, "prep stab {} : {}", join(g), join(wires))
            }
            Stmt::Gate { name, wires } => write!(f, "gate {name} {}", join(wires)),
            Stmt::Unitary { wires, rows } => {
                let rows: Vec<String> = rows.iter().map(|r| join(r)).collect();
                write!(f, "unitary {} = [{}]", join(wires), rows.join("; "))
            }
            Stmt::Measure { basis, qubit, bit } => write!(f, "measure {basis} {qubit} -> {bit}"),
            Stmt::Project { pauli, qubits, bit } => {
                write!(f, "project {pauli} {} -> {bit}", join(qubits))
            }
            Stmt::CPauli {
                pauli,
                control,
                qubits,
            } => write!(f, "cpauli {pauli} {control} {}", join(qubits)),
            Stmt::Classical { func, ins, outs } => {
                write!(f, "classical {func} {} -> {}", join(ins), join(outs))
            }
            Stmt::Discard { wires } => write!(f, "discard {}", join(wires)),
            Stmt::Noise { group, kind, wires } => match kind {
                NoiseKind::Pauli => write!(f, "noise pauli {group} {}", join(wires)),
                NoiseKind::Flip => write!(f, "noise flip {group} {}", join(wires)),
                NoiseKind::CPauli => write!(f, "noise cpauli {group} {}", join(wires)),
                NoiseKind::Select(g) => {
                    write!(f, "noise select {group} {} : {}", join(wires), join(g))
                }
            },
            Stmt::Trace {
                group,
                weights: TraceWeights::Uniform(w, z),
            } => {
                write!(f, "trace {group} uniform \"{w}\" \"{z}\"")
            }
            Stmt::Trace {
                group,
                weights: TraceWeights::List(ws),
            } => {
                let ws: Vec<String> = ws.iter().map(|w| format!("\"{w}\"")).collect();
                write!(f, "trace {group} weights {}", ws.join(" "))
            }
            Stmt::Output { wires } => write!(f, "output {}", join(wires)),
        }
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.stmts {
            writeln!(f, "{}", s.to_string().trim_end())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TEL: &str = "\
# teleport q0 onto q2
input qubit q0
prep bell q1 q2
gate CX q0 q1
gate H q0
measure Z q0 -> b0
measure Z q1 -> b1
cpauli X b1 q2
cpauli Z b0 q2
discard b0 b1
output q2
";

    #[test]
    fn parses_and_round_trips() {
        let p = parse_program(TEL).unwrap();
        assert_eq!(p.stmts.len(), 10);
        assert_eq!(p.lines[0], 2);
        let printed = p.to_string();
        assert_eq!(parse_program(&printed).unwrap(), p);
        assert_eq!(parse_program(&printed).unwrap().to_string(), printed);
    }

    #[test]
    fn round_trips_every_statement() {
        let src = r#"
input qubit a b
input dit3 d
input bit c
prep stab XX -ZZ : p q
unitary a = [0 1; 1 0]
project -XX p q -> s
classical xor c s -> t
noise pauli g1 a b
noise select g2 a : I Z
noise flip g3 t
noise cpauli g4 t a
trace g1 uniform "1 - 15/16 m" "m/16"
trace g2 weights 1-r r
trace g3 weights "1 - f" f
trace g4 uniform 1 0
discard d t
output b a p q
"#;
        let p = parse_program(src).unwrap();
        assert_eq!(parse_program(&p.to_string()).unwrap(), p);
    }

    fn kind(src: &str) -> (usize, ErrorKind) {
        let e = parse_program(src).unwrap_err();
        (e.line, e.kind)
    }

    #[test]
    fn error_categories() {
        assert_eq!(kind("input qubit a\ngate H a $"), (2, ErrorKind::Lexical));
        assert_eq!(kind("prep \"0 a"), (1, ErrorKind::Lexical));
        assert_eq!(
            kind("input qubit a\nmeasure W a -> b"),
            (2, ErrorKind::Syntax)
        );
        assert_eq!(kind("frobnicate a"), (1, ErrorKind::Syntax));
        assert_eq!(kind("input qubit a\ngate H b"), (2, ErrorKind::Undefined));
        assert_eq!(kind("input qubit a\ngate CX a"), (2, ErrorKind::Signature));
        assert_eq!(kind("input bit a\ngate H a"), (2, ErrorKind::Signature));
        assert_eq!(
            kind("input qubit a\nmeasure Z a -> b\ngate H a"),
            (3, ErrorKind::Undefined)
        );
        assert_eq!(
            kind("input qubit a\nnoise pauli g a\noutput a"),
            (2, ErrorKind::Semantic)
        );
        assert_eq!(kind("input qubit a\noutput"), (2, ErrorKind::Semantic));
        assert_eq!(kind("input qubit a a"), (1, ErrorKind::Semantic));
        assert_eq!(
            kind("input qubit a\nnoise flip g a\ntrace g weights 1 0"),
            (2, ErrorKind::Signature)
        );
        assert_eq!(
            kind("input qubit a\nnoise pauli g a\ntrace g weights 1 0\n"),
            (3, ErrorKind::Semantic)
        );
        assert_eq!(
            kind("input qubit a\ntrace g uniform 1 (0"),
            (2, ErrorKind::Syntax)
        );
        let e = parse_program("input qubit a\ngate H a $").unwrap_err();
        assert_eq!(e.col, 10);
        assert!(e
            .to_string()
            .starts_with("line 2, column 10: lexical error"));
    }
}
