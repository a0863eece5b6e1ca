//! Compilation of a validated domain into decision diagrams.
//!
//! Variable order: the action-id blocks of the environment agents, then
//! those of the system agents, then the state bits with current and next
//! copies interleaved (`x^0 ≺ x'^0 ≺ x^1 ≺ x'^1 ≺ …`, least significant bit
//! first). Inside an action-id block the most significant bit comes first,
//! so lexicographic enumeration visits ids in numeric order.

mod bitvec;
mod formula;
mod transition;

use std::fmt::Write as _;

use thiserror::Error;

use crate::bdd::{BddError, BddManager, NodeRef, Var, VarPairing, VarSet};
use crate::nadl::{ArithOp, Domain, Pos};

pub use bitvec::BitVector;
pub use formula::{encode_arith, encode_formula, range_constraint};
pub use transition::{
    build_action_constraint, build_frame, build_interference, build_ranges, Partition,
    PartitionMode, TransitionSystem, DEFAULT_BUDGET,
};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EncodeError {
    #[error(transparent)]
    Bdd(#[from] BddError),
    #[error("{pos}: arithmetic operator `{}` cannot be encoded", .op.symbol())]
    Unsupported { op: ArithOp, pos: Pos },
}

pub type Result<T> = std::result::Result<T, EncodeError>;

/// Bits needed to tell `n` values apart.
pub fn bits_for(n: u64) -> u32 {
    if n <= 1 {
        0
    } else {
        64 - (n - 1).leading_zeros()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateVarBits {
    pub name: String,
    /// Number of legal values; codes at or above it are invalid.
    pub range: u64,
    pub is_bool: bool,
    /// Least significant first.
    pub cur: Vec<Var>,
    pub next: Vec<Var>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AgentBits {
    pub name: String,
    pub system: bool,
    /// Most significant first; empty for single-action agents.
    pub bits: Vec<Var>,
    /// Action names indexed by id.
    pub actions: Vec<String>,
}

/// Decision-variable layout of a domain. Agents are indexed environment
/// first, matching [`Domain::agents`]; state variables by declaration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Encoding {
    pub agents: Vec<AgentBits>,
    pub vars: Vec<StateVarBits>,
    pub num_vars: u32,
}

impl Encoding {
    pub fn allocate(d: &Domain) -> Encoding {
        let mut next_var: Var = 0;
        let mut agents = Vec::new();
        for (agent, system) in d.agents() {
            let n = bits_for(agent.actions.len() as u64);
            let bits = (next_var..next_var + n).collect();
            next_var += n;
            let actions = agent.actions.iter().map(|a| a.name.clone()).collect();
            agents.push(AgentBits {
                name: agent.name.clone(),
                system,
                bits,
                actions,
            });
        }
        let mut vars = Vec::new();
        for v in &d.vars {
            let n = bits_for(v.range());
            let (mut cur, mut next) = (Vec::new(), Vec::new());
            for _ in 0..n {
                cur.push(next_var);
                next.push(next_var + 1);
                next_var += 2;
            }
            vars.push(StateVarBits {
                name: v.name.clone(),
                range: v.range(),
                is_bool: v.is_bool(),
                cur,
                next,
            });
        }
        Encoding {
            agents,
            vars,
            num_vars: next_var,
        }
    }

    pub fn cur_vars(&self) -> VarSet {
        self.vars
            .iter()
            .flat_map(|v| v.cur.iter().copied())
            .collect()
    }

    pub fn next_vars(&self) -> VarSet {
        self.vars
            .iter()
            .flat_map(|v| v.next.iter().copied())
            .collect()
    }

    fn action_vars(&self, system: bool) -> VarSet {
        self.agents
            .iter()
            .filter(|a| a.system == system)
            .flat_map(|a| a.bits.iter().copied())
            .collect()
    }

    pub fn sys_action_vars(&self) -> VarSet {
        self.action_vars(true)
    }

    pub fn env_action_vars(&self) -> VarSet {
        self.action_vars(false)
    }

    /// Current-state and system-action variables: the support of a plan.
    pub fn state_action_vars(&self) -> VarSet {
        self.cur_vars().union(&self.sys_action_vars())
    }

    pub fn state_bits(&self) -> u32 {
        self.vars.iter().map(|v| v.cur.len() as u32).sum()
    }

    pub fn cur_to_next(&self) -> VarPairing {
        let pairs = self
            .vars
            .iter()
            .flat_map(|v| v.cur.iter().copied().zip(v.next.iter().copied()));
        VarPairing::new(pairs).expect("current and next bits are distinct")
    }

    pub fn next_to_cur(&self) -> VarPairing {
        self.cur_to_next().inverse()
    }

    pub fn system_agents(&self) -> impl Iterator<Item = (usize, &AgentBits)> {
        self.agents.iter().enumerate().filter(|(_, a)| a.system)
    }

    pub fn agent_index(&self, name: &str) -> Option<usize> {
        self.agents.iter().position(|a| a.name == name)
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    /// `i(agent) = id`.
    pub fn action_is(&self, mgr: &mut BddManager, agent: usize, id: usize) -> Result<NodeRef> {
        let bits = &self.agents[agent].bits;
        let n = bits.len();
        let lits: Vec<(Var, bool)> = bits
            .iter()
            .enumerate()
            .map(|(k, &v)| (v, (id >> (n - 1 - k)) & 1 == 1))
            .collect();
        Ok(mgr.cube(&lits)?)
    }

    /// The single state with the given values, over current or next bits.
    pub fn state_cube(&self, mgr: &mut BddManager, values: &[u64], next: bool) -> Result<NodeRef> {
        let mut lits = Vec::new();
        for (v, &value) in self.vars.iter().zip(values) {
            let bits = if next { &v.next } else { &v.cur };
            lits.extend(
                bits.iter()
                    .enumerate()
                    .map(|(k, &b)| (b, (value >> k) & 1 == 1)),
            );
        }
        Ok(mgr.cube(&lits)?)
    }

    /// System joint action as a cube over the system action-id bits; `ids`
    /// holds one action id per system agent, in [`Encoding::system_agents`] order.
    pub fn joint_action_cube(&self, mgr: &mut BddManager, ids: &[usize]) -> Result<NodeRef> {
        let mut f = mgr.one();
        for ((a, _), &id) in self.system_agents().zip(ids) {
            let c = self.action_is(mgr, a, id)?;
            f = mgr.and(f, c)?;
        }
        Ok(f)
    }

    /// State values read from a full assignment indexed by decision variable.
    pub fn decode_state(&self, assignment: &[bool], next: bool) -> Vec<u64> {
        self.vars
            .iter()
            .map(|v| {
                let bits = if next { &v.next } else { &v.cur };
                bits.iter()
                    .enumerate()
                    .map(|(k, &b)| (assignment[b as usize] as u64) << k)
                    .sum()
            })
            .collect()
    }

    /// Action id of `agent` read from a full assignment.
    pub fn decode_action(&self, assignment: &[bool], agent: usize) -> usize {
        self.agents[agent]
            .bits
            .iter()
            .fold(0, |acc, &b| (acc << 1) | assignment[b as usize] as usize)
    }

    /// Expands an item of [`BddManager::enumerate_sat`] over `vars` into a
    /// full assignment (unlisted variables false).
    pub fn scatter(&self, vars: &VarSet, item: &[bool]) -> Vec<bool> {
        let mut full = vec![false; self.num_vars as usize];
        for (v, &b) in vars.iter().zip(item) {
            full[v as usize] = b;
        }
        full
    }

    /// One `var <index> <role> <name> <bit>` line per decision variable, in
    /// order. Roles: `env-action`, `sys-action`, `cur`, `next`.
    pub fn layout(&self) -> String {
        let mut lines: Vec<(Var, String)> = Vec::new();
        for a in &self.agents {
            let role = if a.system { "sys-action" } else { "env-action" };
            let n = a.bits.len();
            for (k, &v) in a.bits.iter().enumerate() {
                lines.push((v, format!("{role} {} {}", a.name, n - 1 - k)));
            }
        }
        for v in &self.vars {
            for (k, (&c, &n)) in v.cur.iter().zip(&v.next).enumerate() {
                lines.push((c, format!("cur {} {k}", v.name)));
                lines.push((n, format!("next {} {k}", v.name)));
            }
        }
        lines.sort();
        let mut s = String::new();
        for (v, rest) in lines {
            writeln!(s, "var {v} {rest}").unwrap();
        }
        s
    }
}
