//! Command-line front end and the circuit description language.

pub mod app;
pub mod check;
pub mod dsl;
pub mod expr;
pub mod run;

pub use app::{execute, main_with_args, Cli};
pub use dsl::{parse_program, DslError, ErrorKind, Program};
pub use run::{elaborate, elaborate_source, Elaborated};
