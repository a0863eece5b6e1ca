use thiserror::Error;

use crate::Var;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BddError {
    #[error("variable {var} out of range (manager has {num_vars} variables)")]
    VarOutOfRange { var: Var, num_vars: u32 },

    #[error("node belongs to a different manager")]
    ForeignNode,

    #[error("rename target variable {var} occurs in the support of the operand")]
    RenameConflict { var: Var },

    #[error("variable pairing is not disjoint at variable {var}")]
    PairingOverlap { var: Var },

    #[error("assignment does not cover variable {var}")]
    MissingAssignment { var: Var },

    #[error("support variable {var} is not in the counted variable set")]
    SupportNotCovered { var: Var },

    #[error("counting over {len} variables overflows the 128-bit counter")]
    CountOverflow { len: usize },

    #[error("diagram dump line {line}: {message}")]
    Dump { line: usize, message: String },
}
