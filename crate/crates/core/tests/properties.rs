mod common;

use proptest::prelude::*;

use common::*;
use qect_core::cli::dsl::{
    parse_syntax, NoiseKind, PrepState, Program, Stmt, TraceWeights, WireKind,
};
use qect_core::cli::expr::parse_polynomial;
use qect_core::codes::perfect_code;
use qect_core::enumerator::coefficient_map;
use qect_core::pauli::{PauliString, Phase, SignedPauli};

fn arb_pauli(n: usize) -> impl Strategy<Value = PauliString> {
    (0..1u64 << (2 * n)).prop_map(move |i| PauliString::from_index(n, i))
}

fn arb_signed(n: usize) -> impl Strategy<Value = SignedPauli> {
    (0i64..4, arb_pauli(n)).prop_map(|(e, p)| SignedPauli::new(Phase::from_exponent(e), p))
}

fn triple<T: std::fmt::Debug>(
    f: impl Fn(usize) -> BoxedStrategy<T>,
) -> impl Strategy<Value = (T, T, T)> {
    (1usize..=6).prop_flat_map(move |n| (f(n), f(n), f(n)))
}

fn wire() -> impl Strategy<Value = String> {
    (0u8..6).prop_map(|i| format!("w{i}"))
}

fn wires(min: usize) -> impl Strategy<Value = Vec<String>> {
    prop::collection::vec(wire(), min..=3)
}

fn word(options: &'static [&'static str]) -> impl Strategy<Value = String> {
    prop::sample::select(options).prop_map(str::to_string)
}

fn weight() -> impl Strategy<Value = String> {
    word(&["1 - p", "p", "1/3 p", "1 - 7/8 c2", "r^2 + 2 r", "0"])
}

fn arb_stmt() -> impl Strategy<Value = Stmt> {
    let group = (0u8..3).prop_map(|i| format!("g{i}"));
    prop_oneof![
        (
            prop_oneof![Just(WireKind::Qubit), (2u32..5).prop_map(WireKind::Dit)],
            wires(1)
        )
            .prop_map(|(kind, wires)| Stmt::Input { kind, wires }),
        (word(&["0", "1", "+", "-", "+i", "-i", "bell"]), wires(1)).prop_map(|(s, wires)| {
            Stmt::Prep {
                state: PrepState::Named(s),
                wires,
            }
        }),
        (
            prop::collection::vec(word(&["XX", "ZZ", "-YY", "XZ"]), 1..3),
            wires(1)
        )
            .prop_map(|(g, wires)| Stmt::Prep {
                state: PrepState::Stabilizer(g),
                wires
            }),
        (word(&["H", "S", "SDG", "CX", "CZ", "T"]), wires(1))
            .prop_map(|(name, wires)| Stmt::Gate { name, wires }),
        (prop::sample::select(vec!['X', 'Y', 'Z']), wire(), wire())
            .prop_map(|(basis, qubit, bit)| Stmt::Measure { basis, qubit, bit }),
        (word(&["XZ", "-ZZ", "Y"]), wires(1), wire())
            .prop_map(|(pauli, qubits, bit)| Stmt::Project { pauli, qubits, bit }),
        (word(&["X", "Z", "XY"]), wire(), wires(1)).prop_map(|(pauli, control, qubits)| {
            Stmt::CPauli {
                pauli,
                control,
                qubits,
            }
        }),
        (
            word(&["xor", "and", "not", "copy", "mux"]),
            wires(1),
            wires(1)
        )
            .prop_map(|(func, ins, outs)| Stmt::Classical { func, ins, outs }),
        wires(1).prop_map(|wires| Stmt::Discard { wires }),
        (
            group.clone(),
            prop_oneof![
                Just(NoiseKind::Pauli),
                Just(NoiseKind::Flip),
                Just(NoiseKind::CPauli),
                prop::collection::vec(word(&["H", "S", "X"]), 1..3).prop_map(NoiseKind::Select),
            ],
            wires(1)
        )
            .prop_map(|(group, kind, wires)| Stmt::Noise { group, kind, wires }),
        (group.clone(), weight(), weight()).prop_map(|(group, w, z)| Stmt::Trace {
            group,
            weights: TraceWeights::Uniform(w, z)
        }),
        (group, prop::collection::vec(weight(), 1..4)).prop_map(|(group, ws)| Stmt::Trace {
            group,
            weights: TraceWeights::List(ws)
        }),
        wires(0).prop_map(|wires| Stmt::Output { wires }),
    ]
}

fn arb_poly_text() -> impl Strategy<Value = String> {
    let term = (-9i64..=9, 1i64..=6, 0u8..3, 0u8..3).prop_map(|(n, d, x, y)| {
        let mut s = format!("{n}/{d}");
        if x > 0 {
            s += &format!(" x^{x}");
        }
        if y > 0 {
            s += &format!(" y^{y}");
        }
        s
    });
    prop::collection::vec(term, 1..6).prop_map(|ts| {
        ts.iter()
            .map(|t| format!("({t})"))
            .collect::<Vec<_>>()
            .join(" + ")
    })
}

proptest! {
    #[test]
    fn pauli_products_are_associative_with_consistent_phases(
        (a, b, c) in triple(|n| arb_signed(n).boxed())
    ) {
        prop_assert_eq!(pauli_algebra(&a, &b, &c), Ok(()));
    }

    #[test]
    fn symplectic_form_is_a_bicharacter((p, q, r) in triple(|n| arb_pauli(n).boxed())) {
        prop_assert_eq!(bicharacter(&p, &q, &r), Ok(()));
    }

    #[test]
    fn perfect_code_character_sums(i in 0u64..1024) {
        let code = perfect_code();
        let (stab, norm) = brute_force_groups(&code);
        prop_assert_eq!(duality_sums(&code, &stab, &norm, &PauliString::from_index(5, i)), Ok(()));
    }

    #[test]
    fn tensor_ignores_kraus_representation(seed in any::<u64>()) {
        prop_assert_eq!(kraus_independence(seed), Ok(()));
    }

    #[test]
    fn composition_matches_dense_product(seed in any::<u64>()) {
        prop_assert_eq!(composition(seed), Ok(()));
    }

    #[test]
    fn circuit_text_round_trips(stmts in prop::collection::vec(arb_stmt(), 1..12)) {
        let p = Program { stmts, lines: Vec::new() };
        let text = p.to_string();
        let back = parse_syntax(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
        prop_assert_eq!(back, p);
    }

    #[test]
    fn polynomial_text_round_trips(s in arb_poly_text()) {
        let p = parse_polynomial(&s).unwrap();
        let back = parse_polynomial(&p.to_string()).unwrap();
        prop_assert_eq!(coefficient_map(&back), coefficient_map(&p));
    }
}
