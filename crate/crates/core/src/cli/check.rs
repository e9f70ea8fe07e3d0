//! Internal self-check suites behind `qect check`.

use std::collections::HashMap;

use crate::codes::{perfect_code, rotated_surface_code};
use crate::enumerator::{
    group_weight_sum, path_report, shor_laflamme, trace_syndrome_circuit, transformed_sum,
    MergeMode, NoiseModel, SelfCheck, Side, WeightFunction,
};
use crate::oracle::poisson_rhs;
use crate::pauli::StabilizerCode;
use crate::poly::{Coefficient, Ring};
use crate::tensor::{identity_tensor, named_gate, CircuitTensor, Signature};

pub const SUITES: &[&str] = &[
    "gates",
    "teleportation",
    "perfect",
    "surface3",
    "duality",
    "all",
];

pub const TELEPORTATION: &str = "\
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

fn check(name: impl Into<String>, passed: bool) -> SelfCheck {
    SelfCheck {
        name: name.into(),
        passed,
    }
}

fn signed_permutation(t: &CircuitTensor) -> bool {
    let mut rows: HashMap<&[u8], usize> = HashMap::new();
    let mut cols: HashMap<&[u8], usize> = HashMap::new();
    for ((i, o), v) in t.entries() {
        let c = v.constant_term();
        if !v.is_constant() || !(c.is_one() || c.neg().is_one()) {
            return false;
        }
        *rows.entry(i).or_default() += 1;
        *cols.entry(o).or_default() += 1;
    }
    let n = t.ins().all_labels().len();
    rows.len() == n && cols.len() == n && rows.values().chain(cols.values()).all(|&k| k == 1)
}

fn gates() -> Vec<SelfCheck> {
    let mut out = Vec::new();
    for g in [
        "I", "H", "S", "SDG", "X", "Y", "Z", "SX", "CX", "CZ", "SWAP",
    ] {
        let t = named_gate(g).expect("builtin gate");
        let id = vec![0u8; t.ins().len()];
        let unital = t.get(&id, &id).is_some_and(|v| v.constant_term().is_one());
        out.push(check(
            format!("{g} is a signed permutation fixing I"),
            signed_permutation(&t) && unital,
        ));
    }
    for (a, b) in [
        ("H", "H"),
        ("S", "SDG"),
        ("CX", "CX"),
        ("CZ", "CZ"),
        ("SWAP", "SWAP"),
    ] {
        let (ta, tb) = (
            named_gate(a).expect("builtin"),
            named_gate(b).expect("builtin"),
        );
        let ok = ta
            .compose(&tb)
            .is_ok_and(|t| t == identity_tensor(ta.ins()));
        out.push(check(format!("{b} after {a} is the identity"), ok));
    }
    let t = named_gate("T").expect("builtin");
    let tdg = named_gate("TDG").expect("builtin");
    let ok = t
        .compose(&tdg)
        .is_ok_and(|p| p.approx_eq(&identity_tensor(&Signature::qubits(1)), 1e-12));
    out.push(check("TDG after T is the identity to 1e-12", ok));
    out
}

fn teleportation() -> Vec<SelfCheck> {
    let ok = super::run::elaborate_source(TELEPORTATION)
        .ok()
        .and_then(|e| e.traced().ok())
        .is_some_and(|t| t == identity_tensor(&Signature::qubits(1)));
    vec![check("teleportation circuit is the identity channel", ok)]
}

fn report_checks(label: &str, code: &StabilizerCode, idle: bool) -> Vec<SelfCheck> {
    match path_report(code, idle, MergeMode::BySupportSize, 3) {
        Ok(r) => r
            .checks
            .into_iter()
            .map(|c| check(format!("{label}: {}", c.name), c.passed))
            .collect(),
        Err(e) => vec![check(format!("{label}: path report ({e})"), false)],
    }
}

fn perfect() -> Vec<SelfCheck> {
    let code = perfect_code();
    let mut out = report_checks("perfect", &code, true);
    let sl = shor_laflamme(&code);
    let ok = sl.is_ok_and(|(a, b)| {
        let at_one = |p: &crate::poly::Polynomial| {
            p.terms()
                .fold(Coefficient::zero(Ring::Exact), |s, (_, c)| s.add(c))
        };
        at_one(&a) == Coefficient::from_int(Ring::Exact, 16)
            && at_one(&b) == Coefficient::from_int(Ring::Exact, 64)
    });
    out.push(check(
        "perfect: Shor-Laflamme enumerators count the groups",
        ok,
    ));
    for idle in [false, true] {
        let model = NoiseModel::syndrome_extraction(&code, idle, MergeMode::All);
        let ok = match (
            trace_syndrome_circuit(&code, &model),
            transformed_sum(&code, Side::Normalizer, &model),
        ) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        };
        out.push(check(
            format!("perfect: circuit trace equals transformed sum (idle {idle})"),
            ok,
        ));
    }
    out
}

fn scale(e: i64) -> Coefficient {
    if e >= 0 {
        Coefficient::from_int(Ring::Exact, 1 << e)
    } else {
        Coefficient::from_ratio(Ring::Exact, 1, 1 << -e)
    }
}

fn duality(code: &StabilizerCode, label: &str) -> Vec<SelfCheck> {
    let mut out = Vec::new();
    let (n, k) = (code.n() as i64, code.k() as i64);
    let sides = [
        (Side::Stabilizer, Side::Normalizer, -k),
        (Side::Normalizer, Side::Stabilizer, k),
    ];
    let single = NoiseModel::initial(code.n());
    for (count, dual, e) in sides {
        let ok = match (
            group_weight_sum(code, count, &single),
            transformed_sum(code, dual, &single),
        ) {
            (Ok(a), Ok(b)) => a == b.scale(&scale(e)),
            _ => false,
        };
        out.push(check(
            format!("{label}: {count:?} weight sum equals the transformed {dual:?} sum"),
            ok,
        ));
    }
    let first = code.generators()[0].pauli.support();
    let pair = NoiseModel::new(
        code.n(),
        vec![
            WeightFunction::global(code.n(), "z"),
            WeightFunction::support_trigger(first, "m"),
        ],
    )
    .expect("valid positions");
    let s = pair.total_domain() as i64;
    for (count, dual, e) in sides {
        let ok = match (
            poisson_rhs(code, count, &pair),
            transformed_sum(code, dual, &pair),
        ) {
            (Ok(a), Ok(b)) => a == b.scale(&scale(s - n + e)),
            _ => false,
        };
        out.push(check(
            format!("{label}: pair count into {count:?} equals the transformed {dual:?} sum"),
            ok,
        ));
    }
    out
}

/// Runs a named suite; `None` for an unknown name.
pub fn run_suite(name: &str) -> Option<Vec<SelfCheck>> {
    Some(match name {
        "gates" => gates(),
        "teleportation" => teleportation(),
        "perfect" => perfect(),
        "surface3" => report_checks("surface3", &rotated_surface_code(3).expect("builtin"), true),
        "duality" => duality(&perfect_code(), "perfect"),
        "all" => SUITES[..SUITES.len() - 1]
            .iter()
            .flat_map(|s| run_suite(s).expect("known suite"))
            .collect(),
        _ => return None,
    })
}
