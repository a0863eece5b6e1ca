//! Preimage computations and the universal planning algorithms.
//!
//! All three algorithms grow a set of visited states `V` backwards from the
//! goal, one preimage layer at a time, accumulating state-action rules whose
//! state is not yet visited. They differ in the preimage used and, for
//! strong-cyclic planning, in how weak layers are admitted.

mod algorithms;
mod extract;

use std::fmt;

use thiserror::Error;

use crate::bdd::{BddError, NodeRef};
use crate::encode::TransitionSystem;

pub use algorithms::{optimistic_plan, plan, strong_cyclic_plan, strong_plan, PlanOptions};
pub use extract::{
    advised_actions, advised_in, name_joint_action, sequential_plan, SeqError, Step,
};

pub type Result<T> = std::result::Result<T, crate::encode::EncodeError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Strong,
    StrongCyclic,
    Optimistic,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [
        Algorithm::Strong,
        Algorithm::StrongCyclic,
        Algorithm::Optimistic,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Algorithm::Strong => "strong",
            Algorithm::StrongCyclic => "strong-cyclic",
            Algorithm::Optimistic => "optimistic",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Algorithm> {
        Algorithm::ALL.into_iter().find(|a| a.tag() == tag)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
pub enum FailureReason {
    #[error("No strong plan exists")]
    NoStrongPlan,
    #[error("No strong cyclic plan exists")]
    NoStrongCyclicPlan,
    #[error("No optimistic plan exists")]
    NoOptimisticPlan,
    #[error("iteration limit {0} reached")]
    IterationLimit(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IterStats {
    /// States added to the visited set; `None` if not countable in 128 bits.
    pub new_states: Option<u128>,
    pub plan_nodes: usize,
}

/// Accumulated state-action rules of a planning run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniversalPlan {
    pub algorithm: Algorithm,
    /// Over current-state and system-action variables.
    pub sa: NodeRef,
    pub iterations: usize,
    pub stats: Vec<IterStats>,
    /// Visited sets `V_0 = goal ⊆ V_1 ⊆ …`, one per growth step.
    pub layers: Vec<NodeRef>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PlanOutcome {
    Success(UniversalPlan),
    /// The rules found before the fixpoint are kept: they remain valid
    /// advice for the states they cover.
    Failure {
        reason: FailureReason,
        partial: UniversalPlan,
    },
}

impl PlanOutcome {
    pub fn plan(&self) -> &UniversalPlan {
        match self {
            PlanOutcome::Success(p) | PlanOutcome::Failure { partial: p, .. } => p,
        }
    }

    pub fn is_success(&self) -> bool {
        matches!(self, PlanOutcome::Success(_))
    }
}

/// Pairs `(s, i)` with a transition into `v`.
pub fn weak_preimage(ts: &mut TransitionSystem, v: NodeRef) -> Result<NodeRef> {
    ts.relprod(v)
}

/// Applicable pairs `(s, i)` all of whose transitions enter `v`.
pub fn strong_preimage(ts: &mut TransitionSystem, v: NodeRef) -> Result<NodeRef> {
    let weak = weak_preimage(ts, v)?;
    let outside = ts.mgr.not(v)?;
    let escape = weak_preimage(ts, outside)?;
    Ok(ts.mgr.diff(weak, escape)?)
}

pub fn states_of(ts: &mut TransitionSystem, sa: NodeRef) -> Result<NodeRef> {
    let sys = ts.enc.sys_action_vars();
    Ok(ts.mgr.exists(sa, &sys)?)
}

/// Drops the rules whose state lies in `visited`.
pub fn prune(ts: &mut TransitionSystem, sa: NodeRef, visited: NodeRef) -> Result<NodeRef> {
    Ok(ts.mgr.diff(sa, visited)?)
}

/// Successor states of all pairs in `sa`, over any environment choice.
pub fn image(ts: &mut TransitionSystem, sa: NodeRef) -> Result<NodeRef> {
    let env = ts.enc.env_action_vars();
    let mut acc = sa;
    for p in &ts.partitions {
        let q: crate::bdd::VarSet = p.quantify.iter().filter(|&v| env.contains(v)).collect();
        acc = ts.mgr.and_exists(acc, p.relation, &q)?;
    }
    let src = ts.enc.state_action_vars().union(&env);
    let next = ts.mgr.exists(acc, &src)?;
    Ok(ts.mgr.rename(next, &ts.enc.next_to_cur())?)
}

/// Number of states in a set over current-state variables.
pub fn count_states(ts: &TransitionSystem, states: NodeRef) -> Option<u128> {
    match ts.mgr.count_sat(states, &ts.enc.cur_vars()) {
        Ok(n) => Some(n),
        Err(BddError::CountOverflow { .. }) => None,
        Err(e) => panic!("state set outside the current-state variables: {e}"),
    }
}
