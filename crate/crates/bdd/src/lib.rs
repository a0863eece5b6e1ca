//! Reduced ordered binary decision diagrams.
//!
//! A [`BddManager`] owns a shared node store with a unique table keyed by
//! `(variable, low, high)` and a lossy operation cache. Functions are handled
//! through [`NodeRef`] values; within one manager two refs are equal exactly
//! when they denote the same boolean function.
//!
//! Variable indices double as order positions: variable `0` is tested first.
//! The order is fixed when the manager is created.
//!
//! ```
//! use uniplan_bdd::{BddManager, BinOp};
//!
//! let mut mgr = BddManager::new(2);
//! let x1 = mgr.var(0).unwrap();
//! let x2 = mgr.var(1).unwrap();
//! let f = mgr.apply(BinOp::And, x1, x2).unwrap();
//! assert_eq!(mgr.node_count(f), 2);
//! assert!(mgr.evaluate(f, &[true, true]).unwrap());
//! ```

mod cache;
mod dump;
mod error;
mod manager;
mod ops;
mod sat;
mod varset;

pub use error::BddError;
pub use manager::{BddManager, NodeRef, Var};
pub use ops::BinOp;
pub use sat::SatIter;
pub use varset::{VarPairing, VarSet};

pub type Result<T> = std::result::Result<T, BddError>;
