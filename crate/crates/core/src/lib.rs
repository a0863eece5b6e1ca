//! Symbolic universal planning for multi-agent, non-deterministic domains.
//!
//! The pipeline is: [`nadl`] text → validated [`nadl::Domain`] →
//! [`encode::TransitionSystem`] (decision diagrams, optionally partitioned) →
//! [`plan`] algorithms producing a universal plan. [`oracle`] is an explicit
//! state reference implementation used for cross-checking, and [`domains`]
//! generates the benchmark domains.

pub mod domains;
pub mod encode;
pub mod nadl;
pub mod oracle;
pub mod plan;
pub mod planfile;
pub mod state;

pub use uniplan_bdd as bdd;
