//! Built-in stabilizer codes and the plain-text code file format.
//!
//! One generator per line, an optional `+`/`-` sign followed by `I`, `X`, `Y`, `Z`.
//! `#` starts a comment; blank lines are ignored; all generators have equal length.

use std::path::Path;

use thiserror::Error;

use crate::pauli::{PauliError, SignedPauli, StabilizerCode};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("lines {0} and {1}: generators do not commute")]
    NonCommuting(usize, usize),
    #[error("line {0}: generator is dependent on earlier lines")]
    Dependent(usize),
    #[error("no generators")]
    Empty,
    #[error("{0}")]
    Invalid(PauliError),
    #[error("unknown code {0:?}")]
    Unknown(String),
    #[error("cannot read {path}: {msg}")]
    Io { path: String, msg: String },
}

const PERFECT: [&str; 4] = ["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"];

const SURFACE_D3: [&str; 8] = [
    "ZZIZZIIII",
    "IIIIZZIZZ",
    "IXXIXXIII",
    "IIIXXIXXI",
    "IIZIIZIII",
    "IIIZIIZII",
    "XXIIIIIII",
    "IIIIIIIXX",
];

const SURFACE_D5: [&str; 24] = [
    "ZZIIIZZIIIIIIIIIIIIIIIIII",
    "IIZZIIIZZIIIIIIIIIIIIIIII",
    "IIIIIIZZIIIZZIIIIIIIIIIII",
    "IIIIIIIIZZIIIZZIIIIIIIIII",
    "IIIIIIIIIIZZIIIZZIIIIIIII",
    "IIIIIIIIIIIIZZIIIZZIIIIII",
    "IIIIIIIIIIIIIIIIZZIIIZZII",
    "IIIIIIIIIIIIIIIIIIZZIIIZZ",
    "IXXIIIXXIIIIIIIIIIIIIIIII",
    "IIIXXIIIXXIIIIIIIIIIIIIII",
    "IIIIIXXIIIXXIIIIIIIIIIIII",
    "IIIIIIIXXIIIXXIIIIIIIIIII",
    "IIIIIIIIIIIXXIIIXXIIIIIII",
    "IIIIIIIIIIIIIXXIIIXXIIIII",
    "IIIIIIIIIIIIIIIXXIIIXXIII",
    "IIIIIIIIIIIIIIIIIXXIIIXXI",
    "IIIIZIIIIZIIIIIIIIIIIIIII",
    "IIIIIZIIIIZIIIIIIIIIIIIII",
    "IIIIIIIIIIIIIIZIIIIZIIIII",
    "IIIIIIIIIIIIIIIZIIIIZIIII",
    "XXIIIIIIIIIIIIIIIIIIIIIII",
    "IIIIIIIIIIIIIIIIIIIIIXXII",
    "IIXXIIIIIIIIIIIIIIIIIIIII",
    "IIIIIIIIIIIIIIIIIIIIIIIXX",
];

/// The [[5,1,3]] code.
pub fn perfect_code() -> StabilizerCode {
    StabilizerCode::from_strs(&PERFECT).expect("valid built-in code")
}

/// Rotated surface code with the standard plaquettes, for d = 3 or 5.
pub fn rotated_surface_code(d: usize) -> Result<StabilizerCode, CodeError> {
    let gens: &[&str] = match d {
        3 => &SURFACE_D3,
        5 => &SURFACE_D5,
        _ => return Err(CodeError::Unknown(format!("surface d={d}"))),
    };
    Ok(StabilizerCode::from_strs(gens).expect("valid built-in code"))
}

/// `perfect`, `surface3`/`d3`, `surface5`/`d5`.
pub fn builtin(name: &str) -> Result<StabilizerCode, CodeError> {
    match name {
        "perfect" | "5-1-3" => Ok(perfect_code()),
        "surface3" | "d3" => rotated_surface_code(3),
        "surface5" | "d5" => rotated_surface_code(5),
        _ => Err(CodeError::Unknown(name.to_string())),
    }
}

/// A built-in name, or else a path to a code file.
pub fn resolve(spec: &str) -> Result<StabilizerCode, CodeError> {
    match builtin(spec) {
        Ok(c) => Ok(c),
        Err(CodeError::Unknown(_)) => load_code(spec),
        Err(e) => Err(e),
    }
}

pub fn load_code(path: impl AsRef<Path>) -> Result<StabilizerCode, CodeError> {
    let p = path.as_ref();
    let text = std::fs::read_to_string(p).map_err(|e| CodeError::Io {
        path: p.display().to_string(),
        msg: e.to_string(),
    })?;
    parse_code(&text)
}

pub fn parse_code(text: &str) -> Result<StabilizerCode, CodeError> {
    let mut gens = Vec::new();
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let g: SignedPauli = line.parse().map_err(|e: PauliError| CodeError::Parse {
            line: i + 1,
            msg: e.to_string(),
        })?;
        if let Some(first) = gens.first().map(|g: &SignedPauli| g.n()) {
            if g.n() != first {
                return Err(CodeError::Parse {
                    line: i + 1,
                    msg: format!("length {} differs from {}", g.n(), first),
                });
            }
        }
        if !g.phase.is_real() {
            return Err(CodeError::Parse {
                line: i + 1,
                msg: "sign must be + or -".into(),
            });
        }
        gens.push(g);
        lines.push(i + 1);
    }
    let n = gens.first().ok_or(CodeError::Empty)?.n();
    StabilizerCode::new(n, gens).map_err(|e| match e {
        PauliError::NonCommuting(a, b) => CodeError::NonCommuting(lines[a], lines[b]),
        PauliError::Dependent(a) => CodeError::Dependent(lines[a]),
        other => CodeError::Invalid(other),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::iter_group;

    #[test]
    fn builtins() {
        let p = perfect_code();
        assert_eq!((p.n(), p.k(), p.generators().len()), (5, 1, 4));
        let d3 = rotated_surface_code(3).unwrap();
        assert_eq!((d3.n(), d3.k()), (9, 1));
        let weights: Vec<usize> = d3.generators().iter().map(|g| g.pauli.weight()).collect();
        assert_eq!(weights, vec![4, 4, 4, 4, 2, 2, 2, 2]);
        assert_eq!(iter_group(d3.generators()).unwrap().count(), 256);
        assert_eq!(d3.normalizer_basis().len(), 10);
        let d5 = rotated_surface_code(5).unwrap();
        assert_eq!((d5.n(), d5.k(), d5.generators().len()), (25, 1, 24));
        assert!(rotated_surface_code(7).is_err());
    }

    #[test]
    fn round_trip() {
        for name in ["perfect", "d3", "d5"] {
            let c = builtin(name).unwrap();
            assert_eq!(parse_code(&c.dump()).unwrap(), c);
        }
        let text = "# perfect code\nXZZXI\n+IXZZX\n\nXIXZZ  # third\nZXIXZ\n";
        assert_eq!(parse_code(text).unwrap(), perfect_code());
    }

    #[test]
    fn errors_name_lines() {
        assert_eq!(parse_code("XZZXI\nXZZXI\n"), Err(CodeError::Dependent(2)));
        assert_eq!(
            parse_code("XIIII\nZIIII\n"),
            Err(CodeError::NonCommuting(1, 2))
        );
        assert!(matches!(
            parse_code("XZZXI\nXZQXI\n"),
            Err(CodeError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_code("XZZXI\nXZZX\n"),
            Err(CodeError::Parse { line: 2, .. })
        ));
        assert_eq!(parse_code("# nothing\n"), Err(CodeError::Empty));
    }
}
