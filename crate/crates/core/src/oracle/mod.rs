//! Explicit-state reference semantics, for cross-checking the symbolic
//! pipeline on small domains.
//!
//! States and system joint actions are enumerated in mixed radix with the
//! first variable (agent) most significant, so index order is
//! lexicographic order of the value tuples.

mod algorithms;
mod profile;

use std::collections::BTreeSet;

use thiserror::Error;

use crate::bdd::NodeRef;
use crate::encode::TransitionSystem;
use crate::nadl::{Action, Domain, Formula};

pub use algorithms::{oracle_plan, ExplicitOutcome, ExplicitPlan};
pub use profile::{evaluate_plan, Length, LengthProfile};

/// State-action pairs `(state index, system input index)`.
pub type PairSet = BTreeSet<(usize, usize)>;
pub type StateSet = BTreeSet<usize>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub max_states: u128,
    pub max_joint_actions: u128,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_states: 1 << 14,
            max_joint_actions: 1 << 10,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{0} states exceed the explicit-state limit of {1}")]
    TooManyStates(u128, u128),
    #[error("{0} joint actions exceed the explicit-state limit of {1}")]
    TooManyJointActions(u128, u128),
}

/// Mixed-radix counter over `radices`, most significant first.
fn decode(mut index: usize, radices: &[u64]) -> Vec<u64> {
    let mut out = vec![0; radices.len()];
    for (slot, &r) in out.iter_mut().zip(radices).rev() {
        *slot = index as u64 % r;
        index /= r as usize;
    }
    out
}

fn encode(values: &[u64], radices: &[u64]) -> usize {
    values
        .iter()
        .zip(radices)
        .fold(0, |acc, (&v, &r)| acc * r as usize + v as usize)
}

/// The domain as an explicit automaton: states, system inputs, and the
/// successors of every applicable (state, input) pair.
#[derive(Clone, Debug)]
pub struct ExplicitNfa {
    pub domain: Domain,
    state_radices: Vec<u64>,
    input_radices: Vec<u64>,
    env_radices: Vec<u64>,
    /// Per state: applicable inputs with their sorted successor sets,
    /// ordered by input index.
    pub succ: Vec<Vec<(usize, Vec<usize>)>>,
    pub init: StateSet,
    pub goal: StateSet,
}

impl ExplicitNfa {
    pub fn expand(d: &Domain, caps: Caps) -> Result<ExplicitNfa, OracleError> {
        let states = d.state_count().unwrap_or(u128::MAX);
        if states > caps.max_states {
            return Err(OracleError::TooManyStates(states, caps.max_states));
        }
        let joint: u128 = d.agents().map(|(a, _)| a.actions.len() as u128).product();
        if joint > caps.max_joint_actions {
            return Err(OracleError::TooManyJointActions(
                joint,
                caps.max_joint_actions,
            ));
        }
        let state_radices: Vec<u64> = d.vars.iter().map(|v| v.range()).collect();
        let input_radices: Vec<u64> = d.system.iter().map(|a| a.actions.len() as u64).collect();
        let env_radices: Vec<u64> = d
            .environment
            .iter()
            .map(|a| a.actions.len() as u64)
            .collect();
        let mut nfa = ExplicitNfa {
            domain: d.clone(),
            state_radices,
            input_radices,
            env_radices,
            succ: Vec::new(),
            init: StateSet::new(),
            goal: StateSet::new(),
        };
        let holds = |f: &Formula, s: &[u64]| f.eval(s, s).expect("validated formulas evaluate");
        for si in 0..nfa.num_states() {
            let s = nfa.state(si);
            if holds(&d.init, &s) {
                nfa.init.insert(si);
            }
            if holds(&d.goal, &s) {
                nfa.goal.insert(si);
            }
            let mut row = Vec::new();
            for ii in 0..nfa.num_inputs() {
                let mut next = BTreeSet::new();
                for ei in 0..nfa.num_env() {
                    for t in nfa.successors(&s, ii, ei) {
                        next.insert(nfa.state_index(&t));
                    }
                }
                if !next.is_empty() {
                    row.push((ii, next.into_iter().collect()));
                }
            }
            nfa.succ.push(row);
        }
        Ok(nfa)
    }

    pub fn num_states(&self) -> usize {
        self.state_radices.iter().product::<u64>() as usize
    }

    pub fn num_inputs(&self) -> usize {
        self.input_radices.iter().product::<u64>() as usize
    }

    pub fn num_env(&self) -> usize {
        self.env_radices.iter().product::<u64>() as usize
    }

    pub fn state(&self, index: usize) -> Vec<u64> {
        decode(index, &self.state_radices)
    }

    pub fn state_index(&self, values: &[u64]) -> usize {
        encode(values, &self.state_radices)
    }

    /// Action ids of the system agents for an input index.
    pub fn input(&self, index: usize) -> Vec<usize> {
        decode(index, &self.input_radices)
            .into_iter()
            .map(|v| v as usize)
            .collect()
    }

    pub fn input_index(&self, ids: &[usize]) -> usize {
        let ids: Vec<u64> = ids.iter().map(|&i| i as u64).collect();
        encode(&ids, &self.input_radices)
    }

    pub fn env_input(&self, index: usize) -> Vec<usize> {
        decode(index, &self.env_radices)
            .into_iter()
            .map(|v| v as usize)
            .collect()
    }

    /// Successor sets of `(s, input)` per environment completion, or `None`
    /// entries for completions that cannot execute.
    pub fn env_outcomes(&self, s: &[u64], input: usize) -> Vec<(usize, Vec<Vec<u64>>)> {
        (0..self.num_env())
            .map(|ei| (ei, self.successors(s, input, ei)))
            .filter(|(_, t)| !t.is_empty())
            .collect()
    }

    fn successors(&self, s: &[u64], input: usize, env: usize) -> Vec<Vec<u64>> {
        joint_successors(&self.domain, s, &self.input(input), &self.env_input(env))
    }

    /// Applicable inputs of `s` and their successors.
    pub fn rules(&self, s: usize) -> &[(usize, Vec<usize>)] {
        &self.succ[s]
    }

    /// Every transition `(s, input, s')`.
    pub fn triples(&self) -> BTreeSet<(usize, usize, usize)> {
        let mut out = BTreeSet::new();
        for (s, row) in self.succ.iter().enumerate() {
            for (i, next) in row {
                out.extend(next.iter().map(|&t| (s, *i, t)));
            }
        }
        out
    }

    /// Pairs with some successor in `v`.
    pub fn weak_preimage(&self, v: &StateSet) -> PairSet {
        self.pairs_where(|next| next.iter().any(|t| v.contains(t)))
    }

    /// Applicable pairs with every successor in `v`.
    pub fn strong_preimage(&self, v: &StateSet) -> PairSet {
        self.pairs_where(|next| next.iter().all(|t| v.contains(t)))
    }

    fn pairs_where(&self, keep: impl Fn(&[usize]) -> bool) -> PairSet {
        let mut out = PairSet::new();
        for (s, row) in self.succ.iter().enumerate() {
            for (i, next) in row {
                if keep(next) {
                    out.insert((s, *i));
                }
            }
        }
        out
    }

    /// One `<s> <joint-action> <s'>` line per transition, with action names.
    pub fn debug_dump(&self) -> String {
        let mut out = String::new();
        for (s, i, t) in self.triples() {
            let names: Vec<&str> = self
                .domain
                .system
                .iter()
                .zip(self.input(i))
                .map(|(a, id)| a.actions[id].name.as_str())
                .collect();
            out.push_str(&format!(
                "{:?} ({}) {:?}\n",
                self.state(s),
                names.join(","),
                self.state(t)
            ));
        }
        out
    }
}

/// Conversions from decision diagrams of a [`TransitionSystem`] built from
/// the same domain. `None` when a set contains a code that denotes no state
/// or no action.
impl ExplicitNfa {
    fn decode_valid(&self, ts: &TransitionSystem, full: &[bool], next: bool) -> Option<usize> {
        let values = ts.enc.decode_state(full, next);
        values
            .iter()
            .zip(&self.state_radices)
            .all(|(v, r)| v < r)
            .then(|| self.state_index(&values))
    }

    fn decode_input(&self, ts: &TransitionSystem, full: &[bool]) -> Option<usize> {
        let ids: Vec<usize> = ts
            .enc
            .system_agents()
            .map(|(a, _)| ts.enc.decode_action(full, a))
            .collect();
        ids.iter()
            .zip(&self.input_radices)
            .all(|(&v, &r)| (v as u64) < r)
            .then(|| self.input_index(&ids))
    }

    pub fn states_from_bdd(&self, ts: &TransitionSystem, f: NodeRef) -> Option<StateSet> {
        let vars = ts.enc.cur_vars();
        let items = ts.mgr.enumerate_sat(f, &vars).ok()?;
        items
            .map(|item| self.decode_valid(ts, &ts.enc.scatter(&vars, &item), false))
            .collect()
    }

    pub fn pairs_from_bdd(&self, ts: &TransitionSystem, f: NodeRef) -> Option<PairSet> {
        let vars = ts.enc.state_action_vars();
        let items = ts.mgr.enumerate_sat(f, &vars).ok()?;
        items
            .map(|item| {
                let full = ts.enc.scatter(&vars, &item);
                Some((
                    self.decode_valid(ts, &full, false)?,
                    self.decode_input(ts, &full)?,
                ))
            })
            .collect()
    }

    /// Transitions of a relation over current-state, system-action and
    /// next-state variables.
    pub fn triples_from_bdd(
        &self,
        ts: &TransitionSystem,
        t: NodeRef,
    ) -> Option<BTreeSet<(usize, usize, usize)>> {
        let vars = ts.enc.state_action_vars().union(&ts.enc.next_vars());
        let items = ts.mgr.enumerate_sat(t, &vars).ok()?;
        items
            .map(|item| {
                let full = ts.enc.scatter(&vars, &item);
                Some((
                    self.decode_valid(ts, &full, false)?,
                    self.decode_input(ts, &full)?,
                    self.decode_valid(ts, &full, true)?,
                ))
            })
            .collect()
    }
}

/// All next states of the full joint action `(sys, env)` in `s`: every
/// precondition holds, the constrained sets of agents on the same side are
/// disjoint, every effect holds, and unconstrained variables keep their
/// value.
pub fn joint_successors(d: &Domain, s: &[u64], sys: &[usize], env: &[usize]) -> Vec<Vec<u64>> {
    let actions: Vec<(&Action, bool)> = d
        .system
        .iter()
        .zip(sys)
        .map(|(a, &i)| (&a.actions[i], true))
        .chain(
            d.environment
                .iter()
                .zip(env)
                .map(|(a, &i)| (&a.actions[i], false)),
        )
        .collect();
    for (i, (a, side)) in actions.iter().enumerate() {
        if !a.pre.eval(s, s).expect("validated formulas evaluate") {
            return Vec::new();
        }
        for (b, other_side) in &actions[i + 1..] {
            if side == other_side && a.con.iter().any(|v| b.con.contains(v)) {
                return Vec::new();
            }
        }
    }
    // Constrained sets are now pairwise disjoint and each effect only
    // primes its own constrained variables, so the successor set is a
    // product of per-action choices.
    let mut partial: Vec<Vec<u64>> = vec![s.to_vec()];
    for (a, _) in &actions {
        let radices: Vec<u64> = a.con.iter().map(|&v| d.vars[v].range()).collect();
        let combos: usize = radices.iter().product::<u64>() as usize;
        let mut out = Vec::new();
        for t in &partial {
            for c in 0..combos {
                let mut t = t.clone();
                for (&v, x) in a.con.iter().zip(decode(c, &radices)) {
                    t[v] = x;
                }
                if a.eff.eval(s, &t).expect("validated formulas evaluate") {
                    out.push(t);
                }
            }
        }
        partial = out;
    }
    partial
}

/// Outcomes of the system joint action `sys` in `s`, per environment joint
/// action that can execute alongside it. Needs no expansion, so it also
/// serves domains beyond the explicit-state caps.
pub fn step_outcomes(d: &Domain, s: &[u64], sys: &[usize]) -> Vec<(Vec<usize>, Vec<Vec<u64>>)> {
    let radices: Vec<u64> = d
        .environment
        .iter()
        .map(|a| a.actions.len() as u64)
        .collect();
    let count: u64 = radices.iter().product();
    (0..count as usize)
        .map(|e| {
            let env: Vec<usize> = decode(e, &radices)
                .into_iter()
                .map(|v| v as usize)
                .collect();
            let next = joint_successors(d, s, sys, &env);
            (env, next)
        })
        .filter(|(_, next)| !next.is_empty())
        .collect()
}

pub fn states_of(pairs: &PairSet) -> StateSet {
    pairs.iter().map(|p| p.0).collect()
}
