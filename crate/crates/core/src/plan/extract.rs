use thiserror::Error;

use crate::bdd::{BddManager, NodeRef};
use crate::encode::{EncodeError, Encoding, TransitionSystem};

use super::{count_states, image, Result};

/// Action ids of the rules of `plan` for `state`, one id per system agent in
/// [`Encoding::system_agents`] order, lexicographically by id bits. Empty
/// when the plan gives no advice for the state.
pub fn advised_actions(
    ts: &mut TransitionSystem,
    plan: NodeRef,
    state: &[u64],
) -> Result<Vec<Vec<usize>>> {
    advised_in(&mut ts.mgr, &ts.enc, plan, state)
}

/// [`advised_actions`] for a plan held outside a transition system.
pub fn advised_in(
    mgr: &mut BddManager,
    enc: &Encoding,
    plan: NodeRef,
    state: &[u64],
) -> Result<Vec<Vec<usize>>> {
    let cube = enc.state_cube(mgr, state, false)?;
    let rules = mgr.and(plan, cube)?;
    let actions = mgr.exists(rules, &enc.cur_vars())?;
    let sys = enc.sys_action_vars();
    let out = mgr
        .enumerate_sat(actions, &sys)?
        .map(|item| {
            let full = enc.scatter(&sys, &item);
            enc.system_agents()
                .map(|(a, _)| enc.decode_action(&full, a))
                .collect()
        })
        .collect();
    Ok(out)
}

/// `(agent, action)` names of a system joint action.
pub fn name_joint_action(enc: &Encoding, ids: &[usize]) -> Vec<(String, String)> {
    enc.system_agents()
        .zip(ids)
        .map(|((_, a), &id)| (a.name.clone(), a.actions[id].clone()))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub action: Vec<usize>,
    /// State reached by the action.
    pub state: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SeqError {
    #[error(transparent)]
    Encode(#[from] EncodeError),
    #[error("the plan gives no action for state {0:?}")]
    CoverageGap(Vec<u64>),
    #[error(
        "the domain is not deterministic: state {0:?} has {1} successors under the chosen action"
    )]
    Nondeterministic(Vec<u64>, String),
    #[error("no goal state within {0} steps")]
    StepLimit(usize),
}

/// Follows `plan` from `start`, always taking the lexicographically
/// smallest advised action, until a goal state is reached. Determinism is
/// checked along the way: every chosen action must have exactly one
/// successor.
pub fn sequential_plan(
    ts: &mut TransitionSystem,
    plan: NodeRef,
    start: &[u64],
    max_steps: usize,
) -> std::result::Result<Vec<Step>, SeqError> {
    let mut state = start.to_vec();
    let mut steps = Vec::new();
    loop {
        let cube = ts.enc.state_cube(&mut ts.mgr, &state, false)?;
        if ts.mgr.leq(cube, ts.goal).map_err(EncodeError::from)? {
            return Ok(steps);
        }
        if steps.len() == max_steps {
            return Err(SeqError::StepLimit(max_steps));
        }
        let Some(action) = advised_actions(ts, plan, &state)?.into_iter().next() else {
            return Err(SeqError::CoverageGap(state));
        };
        let act = ts.enc.joint_action_cube(&mut ts.mgr, &action)?;
        let sa = ts.mgr.and(cube, act).map_err(EncodeError::from)?;
        let succ = image(ts, sa)?;
        if count_states(ts, succ) != Some(1) {
            let n = count_states(ts, succ).map_or("too many".to_string(), |n| n.to_string());
            return Err(SeqError::Nondeterministic(state, n));
        }
        let cur = ts.enc.cur_vars();
        let item = ts
            .mgr
            .pick_sat(succ, &cur)
            .map_err(EncodeError::from)?
            .expect("one successor");
        state = ts.enc.decode_state(&ts.enc.scatter(&cur, &item), false);
        steps.push(Step {
            action,
            state: state.clone(),
        });
    }
}
