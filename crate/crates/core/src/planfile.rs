//! Plan files: a universal plan with everything needed to query it
//! without the domain.
//!
//! ```text
//! umop-plan v1
//! algorithm optimistic
//! outcome success
//! iterations 3
//! vars 7
//! var 0 sys-action Robot 0
//! var 1 cur pos 0
//! ...
//! state nat(4) pos
//! state bool robot_works
//! action Robot 0 Lift-Block
//! action Robot 1 Lower-Block
//! node 2 6 0 1
//! ...
//! root 5
//! ```
//!
//! The `var` lines are the decision-variable layout, `state` and `action`
//! lines name the state variables and system actions, and the trailing
//! `node`/`root` lines are the diagram of the state-action rules.

use std::fmt::Write as _;

use thiserror::Error;

use crate::bdd::{BddError, BddManager, NodeRef, Var};
use crate::encode::{bits_for, AgentBits, EncodeError, Encoding, StateVarBits, TransitionSystem};
use crate::nadl::{Pos, VarDecl, VarKind};
use crate::plan::{advised_in, Algorithm, PlanOutcome};

pub const HEADER: &str = "umop-plan v1";

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PlanFileError {
    #[error("plan file line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("plan file diagram: {0}")]
    Diagram(#[from] BddError),
}

fn syntax(line: usize, message: impl Into<String>) -> PlanFileError {
    PlanFileError::Syntax {
        line,
        message: message.into(),
    }
}

/// A parsed plan file; `enc` holds only the system agents.
#[derive(Debug)]
pub struct PlanFile {
    pub algorithm: Algorithm,
    /// `None` on success, otherwise the failure message.
    pub failure: Option<String>,
    pub iterations: usize,
    pub vars: Vec<VarDecl>,
    pub enc: Encoding,
    pub mgr: BddManager,
    pub rules: NodeRef,
}

pub fn write_plan(ts: &TransitionSystem, outcome: &PlanOutcome) -> Result<String, EncodeError> {
    let plan = outcome.plan();
    let mut s = format!("{HEADER}\nalgorithm {}\n", plan.algorithm);
    match outcome {
        PlanOutcome::Success(_) => s.push_str("outcome success\n"),
        PlanOutcome::Failure { reason, .. } => writeln!(s, "outcome failure {reason}").unwrap(),
    }
    writeln!(
        s,
        "iterations {}\nvars {}",
        plan.iterations, ts.enc.num_vars
    )
    .unwrap();
    s.push_str(&ts.enc.layout());
    for v in &ts.domain.vars {
        match v.kind {
            VarKind::Bool => writeln!(s, "state bool {}", v.name).unwrap(),
            VarKind::Nat(k) => writeln!(s, "state nat({k}) {}", v.name).unwrap(),
        }
    }
    for (_, a) in ts.enc.system_agents() {
        for (id, name) in a.actions.iter().enumerate() {
            writeln!(s, "action {} {id} {name}", a.name).unwrap();
        }
    }
    s.push_str(&ts.mgr.dump(plan.sa)?);
    Ok(s)
}

impl PlanFile {
    pub fn parse(text: &str) -> Result<PlanFile, PlanFileError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let mut next = |what: &str| {
            lines
                .next()
                .ok_or_else(|| syntax(0, format!("missing {what}")))
        };
        let (n, header) = next("header")?;
        if header != HEADER {
            return Err(syntax(n, format!("expected `{HEADER}`")));
        }
        let (n, line) = next("algorithm")?;
        let algorithm = line
            .strip_prefix("algorithm ")
            .and_then(Algorithm::from_tag)
            .ok_or_else(|| syntax(n, "expected `algorithm <strong|strong-cyclic|optimistic>`"))?;
        let (n, line) = next("outcome")?;
        let failure = match line.strip_prefix("outcome ") {
            Some("success") => None,
            Some(rest) => Some(
                rest.strip_prefix("failure ")
                    .ok_or_else(|| syntax(n, "bad outcome"))?
                    .to_string(),
            ),
            None => return Err(syntax(n, "expected `outcome`")),
        };
        let number = |n: usize, line: &str, key: &str| -> Result<usize, PlanFileError> {
            line.strip_prefix(key)
                .and_then(|r| r.strip_prefix(' '))
                .and_then(|r| r.parse().ok())
                .ok_or_else(|| syntax(n, format!("expected `{key} <number>`")))
        };
        let (n, line) = next("iterations")?;
        let iterations = number(n, line, "iterations")?;
        let (n, line) = next("vars")?;
        let num_vars = number(n, line, "vars")?;
        // Every variable needs its own layout line.
        if num_vars > text.lines().count() {
            return Err(syntax(n, "more variables than layout lines"));
        }
        let num_vars = u32::try_from(num_vars).map_err(|_| syntax(n, "too many variables"))?;

        let mut roles: Vec<Option<(String, String, u32)>> = vec![None; num_vars as usize];
        let mut vars = Vec::new();
        let mut actions: Vec<(String, Vec<String>)> = Vec::new();
        let mut dump = String::new();
        for (n, line) in lines {
            let words: Vec<&str> = line.split_whitespace().collect();
            match words.as_slice() {
                ["var", index, role, name, bit] => {
                    let index: usize =
                        index.parse().map_err(|_| syntax(n, "bad variable index"))?;
                    let bit: u32 = bit.parse().map_err(|_| syntax(n, "bad bit number"))?;
                    if !matches!(*role, "env-action" | "sys-action" | "cur" | "next") {
                        return Err(syntax(n, format!("unknown role `{role}`")));
                    }
                    let slot = roles
                        .get_mut(index)
                        .ok_or_else(|| syntax(n, "variable index out of range"))?;
                    if slot
                        .replace((role.to_string(), name.to_string(), bit))
                        .is_some()
                    {
                        return Err(syntax(n, "variable listed twice"));
                    }
                }
                ["state", kind, name] => {
                    let kind = match *kind {
                        "bool" => VarKind::Bool,
                        k => k
                            .strip_prefix("nat(")
                            .and_then(|k| k.strip_suffix(')'))
                            .and_then(|k| k.parse().ok())
                            .filter(|&k| k >= 2)
                            .map(VarKind::Nat)
                            .ok_or_else(|| syntax(n, format!("bad state kind `{k}`")))?,
                    };
                    vars.push(VarDecl {
                        name: name.to_string(),
                        kind,
                        pos: Pos::default(),
                    });
                }
                ["action", agent, id, name] => {
                    let id: usize = id.parse().map_err(|_| syntax(n, "bad action id"))?;
                    if actions.last().map(|a| &a.0) != Some(&agent.to_string()) {
                        actions.push((agent.to_string(), Vec::new()));
                    }
                    let list = &mut actions.last_mut().expect("just pushed").1;
                    if id != list.len() {
                        return Err(syntax(n, "action ids must be consecutive from 0"));
                    }
                    list.push(name.to_string());
                }
                ["node", ..] | ["root", ..] => {
                    dump.push_str(line);
                    dump.push('\n');
                }
                _ => return Err(syntax(n, format!("unexpected line `{line}`"))),
            }
        }

        let enc = rebuild_encoding(&roles, &vars, &actions, num_vars)?;
        let mut mgr = BddManager::new(num_vars);
        let rules = mgr.load(&dump)?;
        let allowed = enc.state_action_vars();
        if let Some(v) = mgr.support(rules).iter().find(|&v| !allowed.contains(v)) {
            return Err(syntax(
                0,
                format!("diagram mentions variable {v}, which is no state or system action bit"),
            ));
        }
        Ok(PlanFile {
            algorithm,
            failure,
            iterations,
            vars,
            enc,
            mgr,
            rules,
        })
    }

    /// Advised joint actions for a full state, as `(agent, action)` lists in
    /// lexicographic order of their encodings.
    pub fn query(&mut self, state: &[u64]) -> Result<Vec<Vec<(String, String)>>, EncodeError> {
        let ids = advised_in(&mut self.mgr, &self.enc, self.rules, state)?;
        Ok(ids
            .iter()
            .map(|ids| crate::plan::name_joint_action(&self.enc, ids))
            .collect())
    }
}

fn rebuild_encoding(
    roles: &[Option<(String, String, u32)>],
    vars: &[VarDecl],
    actions: &[(String, Vec<String>)],
    num_vars: u32,
) -> Result<Encoding, PlanFileError> {
    let find = |role: &str, name: &str, bit: u32| -> Option<Var> {
        roles
            .iter()
            .position(|r| {
                r.as_ref()
                    .is_some_and(|(r, n, b)| r == role && n == name && *b == bit)
            })
            .map(|i| i as Var)
    };
    let mut state = Vec::new();
    for v in vars {
        let bits = bits_for(v.range());
        let mut cur = Vec::new();
        let mut next = Vec::new();
        for k in 0..bits {
            cur.push(
                find("cur", &v.name, k)
                    .ok_or_else(|| syntax(0, format!("no layout for bit {k} of `{}`", v.name)))?,
            );
            next.push(
                find("next", &v.name, k)
                    .ok_or_else(|| syntax(0, format!("no layout for bit {k} of `{}'`", v.name)))?,
            );
        }
        state.push(StateVarBits {
            name: v.name.clone(),
            range: v.range(),
            is_bool: v.is_bool(),
            cur,
            next,
        });
    }
    let mut agents = Vec::new();
    for (name, list) in actions {
        let n = bits_for(list.len() as u64);
        let bits = (0..n)
            .rev()
            .map(|k| {
                find("sys-action", name, k)
                    .ok_or_else(|| syntax(0, format!("no layout for action bit {k} of `{name}`")))
            })
            .collect::<Result<_, _>>()?;
        agents.push(AgentBits {
            name: name.clone(),
            system: true,
            bits,
            actions: list.clone(),
        });
    }
    Ok(Encoding {
        agents,
        vars: state,
        num_vars,
    })
}
