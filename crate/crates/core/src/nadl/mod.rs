//! Front end for the agent domain language: lexing, parsing, validation,
//! pretty-printing and if-then-else elimination.
//!
//! ```text
//! variables
//!   nat(4) pos
//!   bool robot_works
//! system
//!   agt: Robot
//!     Lift-Block
//!       con: pos
//!       pre: pos < 3
//!       eff: robot_works -> pos' = pos + 1, pos' = pos
//! ...
//! initially
//!   pos = 0 /\ robot_works
//! goal
//!   pos = 3
//! ```

pub mod ast;
mod desugar;
mod lexer;
mod parser;
mod printer;
mod validate;

use std::fmt;

pub use ast::*;
pub use desugar::{desugar_ite, is_ite_free};
pub use parser::{parse, parse_formula};
pub use printer::{print_domain, print_formula};
pub use validate::{validate, Violation, ViolationKind};

/// Lexical, syntax or name-resolution error.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub pos: Pos,
    pub message: String,
}

impl ParseError {
    pub fn new(pos: Pos, message: impl Into<String>) -> Self {
        ParseError {
            pos,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ERROR {} syntax {}", self.pos, self.message)
    }
}

/// Either stage of loading a domain failed.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LoadError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("\n"))]
    Invalid(Vec<Violation>),
}

/// Parses and validates in one step.
pub fn load(src: &str) -> Result<Domain, LoadError> {
    let d = parse(src)?;
    validate(&d).map_err(LoadError::Invalid)?;
    Ok(d)
}
