use std::collections::BTreeMap;

use crate::bdd::{BddManager, NodeRef, Var, VarSet};
use crate::nadl::Domain;

use super::{encode_formula, range_constraint, Encoding, Result};

/// Basic partitions conjoined into one partition by default.
pub const DEFAULT_BUDGET: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PartitionMode {
    /// One relation with the environment action variables quantified up front.
    Monolithic,
    /// At most this many basic partitions per partition.
    Partitioned(usize),
}

impl Default for PartitionMode {
    fn default() -> Self {
        PartitionMode::Partitioned(DEFAULT_BUDGET)
    }
}

/// One conjunct of the transition relation together with the next-state
/// and environment-action variables that can be quantified right after it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    pub relation: NodeRef,
    pub quantify: VarSet,
}

/// `i(α) = b(a) ⇒ pre(a) ∧ eff(a)` for every action, plus one conjunct per
/// agent excluding unused id codes.
pub fn build_action_constraint(
    mgr: &mut BddManager,
    d: &Domain,
    enc: &Encoding,
) -> Result<Vec<NodeRef>> {
    let mut out = Vec::new();
    for (ai, (agent, _)) in d.agents().enumerate() {
        let mut ids = Vec::new();
        for (b, a) in agent.actions.iter().enumerate() {
            let id = enc.action_is(mgr, ai, b)?;
            let pre = encode_formula(mgr, enc, &a.pre)?;
            let eff = encode_formula(mgr, enc, &a.eff)?;
            let body = mgr.and(pre, eff)?;
            out.push(mgr.implies(id, body)?);
            ids.push(id);
        }
        if agent.actions.len() != 1 << enc.agents[ai].bits.len() {
            out.push(mgr.or_all(ids)?);
        }
    }
    Ok(out)
}

/// Per state variable: unless some executed action constrains it, it keeps
/// its value.
pub fn build_frame(mgr: &mut BddManager, d: &Domain, enc: &Encoding) -> Result<Vec<NodeRef>> {
    let mut out = Vec::new();
    for (vi, v) in enc.vars.iter().enumerate() {
        let mut unconstrained = mgr.one();
        for (ai, (agent, _)) in d.agents().enumerate() {
            for (b, a) in agent.actions.iter().enumerate() {
                if a.con.contains(&vi) {
                    let id = enc.action_is(mgr, ai, b)?;
                    let not_id = mgr.not(id)?;
                    unconstrained = mgr.and(unconstrained, not_id)?;
                }
            }
        }
        let mut keep = mgr.one();
        for (&c, &n) in v.cur.iter().zip(&v.next).rev() {
            let (c, n) = (mgr.var(c)?, mgr.var(n)?);
            let same = mgr.iff(c, n)?;
            keep = mgr.and(keep, same)?;
        }
        out.push(mgr.implies(unconstrained, keep)?);
    }
    Ok(out)
}

/// Excludes joint actions in which two agents on the same side execute
/// actions with overlapping constrained sets.
pub fn build_interference(
    mgr: &mut BddManager,
    d: &Domain,
    enc: &Encoding,
) -> Result<Vec<NodeRef>> {
    let agents: Vec<_> = d.agents().collect();
    let mut out = Vec::new();
    for i in 0..agents.len() {
        for j in i + 1..agents.len() {
            if agents[i].1 != agents[j].1 {
                continue;
            }
            for (b1, a1) in agents[i].0.actions.iter().enumerate() {
                for (b2, a2) in agents[j].0.actions.iter().enumerate() {
                    if a1.con.iter().any(|v| a2.con.contains(v)) {
                        let x = enc.action_is(mgr, i, b1)?;
                        let y = enc.action_is(mgr, j, b2)?;
                        let both = mgr.and(x, y)?;
                        out.push(mgr.not(both)?);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Range constraints of all numerical variables with unused codes, for the
/// current and/or next copy.
pub fn build_ranges(
    mgr: &mut BddManager,
    enc: &Encoding,
    cur: bool,
    next: bool,
) -> Result<Vec<NodeRef>> {
    let mut out = Vec::new();
    for vi in 0..enc.vars.len() {
        for (wanted, is_next) in [(cur, false), (next, true)] {
            if wanted {
                let r = range_constraint(mgr, enc, vi, is_next)?;
                if !r.is_one() {
                    out.push(r);
                }
            }
        }
    }
    Ok(out)
}

/// A domain compiled to decision diagrams.
#[derive(Debug)]
pub struct TransitionSystem {
    pub mgr: BddManager,
    pub domain: Domain,
    pub enc: Encoding,
    pub init: NodeRef,
    pub goal: NodeRef,
    pub mode: PartitionMode,
    /// In application order.
    pub partitions: Vec<Partition>,
    /// Basic partitions: the conjuncts grouped by next-state support,
    /// smallest support first.
    pub basic: Vec<(VarSet, NodeRef)>,
}

impl TransitionSystem {
    pub fn build(d: &Domain, mode: PartitionMode) -> Result<Self> {
        let enc = Encoding::allocate(d);
        let mut mgr = BddManager::new(enc.num_vars);
        let mut conjuncts = build_action_constraint(&mut mgr, d, &enc)?;
        conjuncts.extend(build_frame(&mut mgr, d, &enc)?);
        conjuncts.extend(build_interference(&mut mgr, d, &enc)?);
        conjuncts.extend(build_ranges(&mut mgr, &enc, true, true)?);

        let cur_ranges = build_ranges(&mut mgr, &enc, true, false)?;
        let cur_ok = mgr.and_all(cur_ranges)?;
        let init = encode_formula(&mut mgr, &enc, &d.init)?;
        let init = mgr.and(init, cur_ok)?;
        let goal = encode_formula(&mut mgr, &enc, &d.goal)?;
        let goal = mgr.and(goal, cur_ok)?;

        let basic = group_by_next_support(&mut mgr, &enc, &conjuncts)?;
        let mut ts = TransitionSystem {
            mgr,
            domain: d.clone(),
            enc,
            init,
            goal,
            mode,
            partitions: Vec::new(),
            basic,
        };
        ts.partitions = ts.schedule(mode)?;
        Ok(ts)
    }

    fn schedule(&mut self, mode: PartitionMode) -> Result<Vec<Partition>> {
        let env = self.enc.env_action_vars();
        let next = self.enc.next_vars();
        let relations: Vec<NodeRef> = match mode {
            PartitionMode::Monolithic => {
                let t = self.mgr.and_all(self.basic.iter().map(|g| g.1))?;
                vec![self.mgr.exists(t, &env)?]
            }
            PartitionMode::Partitioned(budget) => {
                let mut out = Vec::new();
                for chunk in self.basic.chunks(budget.max(1)) {
                    out.push(self.mgr.and_all(chunk.iter().map(|g| g.1))?);
                }
                if out.is_empty() {
                    out.push(self.mgr.one());
                }
                out
            }
        };
        let supports: Vec<VarSet> = relations.iter().map(|&r| self.mgr.support(r)).collect();
        let mut quantify = vec![VarSet::new(); relations.len()];
        for v in next.union(&env).iter() {
            let last = supports.iter().rposition(|s| s.contains(v)).unwrap_or(0);
            quantify[last].insert(v);
        }
        Ok(relations
            .into_iter()
            .zip(quantify)
            .map(|(relation, quantify)| Partition { relation, quantify })
            .collect())
    }

    /// The full relation over current-state, system-action and next-state
    /// variables, environment actions quantified away.
    pub fn monolithic_relation(&mut self) -> Result<NodeRef> {
        let t = self.mgr.and_all(self.basic.iter().map(|g| g.1))?;
        Ok(self.mgr.exists(t, &self.enc.env_action_vars())?)
    }

    /// `∃x'. T ∧ target'` computed through the partition schedule; the
    /// result ranges over current-state and system-action variables.
    pub fn relprod(&mut self, target: NodeRef) -> Result<NodeRef> {
        let pairing = self.enc.cur_to_next();
        let mut acc = self.mgr.rename(target, &pairing)?;
        for p in &self.partitions {
            acc = self.mgr.and_exists(acc, p.relation, &p.quantify)?;
        }
        Ok(acc)
    }

    /// Current-state codes that denote states.
    pub fn valid_states(&mut self) -> Result<NodeRef> {
        let r = build_ranges(&mut self.mgr, &self.enc, true, false)?;
        Ok(self.mgr.and_all(r)?)
    }
}

fn group_by_next_support(
    mgr: &mut BddManager,
    enc: &Encoding,
    conjuncts: &[NodeRef],
) -> Result<Vec<(VarSet, NodeRef)>> {
    let next = enc.next_vars();
    let mut groups: BTreeMap<(usize, Vec<Var>), NodeRef> = BTreeMap::new();
    for &c in conjuncts {
        if c.is_one() {
            continue;
        }
        let key: Vec<Var> = mgr
            .support(c)
            .iter()
            .filter(|&v| next.contains(v))
            .collect();
        let slot = groups.entry((key.len(), key)).or_insert(mgr.one());
        *slot = mgr.and(*slot, c)?;
    }
    let mut out: Vec<(VarSet, NodeRef)> = groups
        .into_iter()
        .map(|((_, key), f)| (key.into_iter().collect(), f))
        .collect();
    // conjuncts without next-state variables join the first real group
    if out.len() > 1 && out[0].0.is_empty() {
        let (_, f) = out.remove(0);
        out[0].1 = mgr.and(out[0].1, f)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domains::{generate, DomainSpec, ROBOT_BABY};
    use crate::nadl;

    fn build(src: &str, mode: PartitionMode) -> TransitionSystem {
        TransitionSystem::build(&nadl::load(src).unwrap(), mode).unwrap()
    }

    #[test]
    fn robot_baby_init_and_goal() {
        let mut ts = build(ROBOT_BABY, PartitionMode::default());
        let cur = ts.enc.cur_vars();
        assert_eq!(ts.mgr.count_sat(ts.init, &cur).unwrap(), 1);
        assert_eq!(ts.mgr.count_sat(ts.goal, &cur).unwrap(), 2);
        let expected = ts.enc.state_cube(&mut ts.mgr, &[0, 1], false).unwrap();
        assert_eq!(ts.init, expected);
    }

    #[test]
    fn unsatisfiable_init_is_empty() {
        let ts = build(
            "variables nat(4) pos system agt: R A con: pos pre: true eff: true initially pos = 0 /\\ pos = 1 goal pos = 3",
            PartitionMode::Monolithic,
        );
        assert!(ts.init.is_zero());
    }

    #[test]
    fn robot_baby_has_no_interference() {
        let d = nadl::load(ROBOT_BABY).unwrap();
        let enc = Encoding::allocate(&d);
        let mut mgr = BddManager::new(enc.num_vars);
        assert!(build_interference(&mut mgr, &d, &enc).unwrap().is_empty());
    }

    #[test]
    fn shared_variable_excludes_joint_action() {
        let d = nadl::load(
            "variables bool g system agt: P A1 con: g pre: true eff: g' B1 con: pre: true eff: true \
             agt: Q A2 con: g pre: true eff: ~g' B2 con: pre: true eff: true initially true goal g",
        )
        .unwrap();
        let enc = Encoding::allocate(&d);
        let mut mgr = BddManager::new(enc.num_vars);
        let i = build_interference(&mut mgr, &d, &enc).unwrap();
        assert_eq!(i.len(), 1);
        let a1 = enc.action_is(&mut mgr, 0, 0).unwrap();
        let a2 = enc.action_is(&mut mgr, 1, 0).unwrap();
        let both = mgr.and(a1, a2).unwrap();
        assert_eq!(mgr.and(both, i[0]).unwrap(), mgr.zero());
    }

    #[test]
    fn unconstrained_variable_is_framed() {
        let d = nadl::load(
            "variables bool p w system agt: A X con: p pre: true eff: p' initially true goal p",
        )
        .unwrap();
        let enc = Encoding::allocate(&d);
        let mut mgr = BddManager::new(enc.num_vars);
        let f = build_frame(&mut mgr, &d, &enc).unwrap();
        assert!(f[0].is_one());
        let (w, w2) = (
            mgr.var(enc.vars[1].cur[0]).unwrap(),
            mgr.var(enc.vars[1].next[0]).unwrap(),
        );
        assert_eq!(f[1], mgr.iff(w, w2).unwrap());
    }

    #[test]
    fn gripper_basic_partitions() {
        for problem in 1..=3 {
            let balls = 4 + 2 * (problem - 1) as usize;
            let ts = build(
                &generate(DomainSpec::Gripper { problem }).unwrap(),
                PartitionMode::default(),
            );
            assert_eq!(ts.basic.len(), balls + 1);
        }
    }

    #[test]
    fn every_quantified_variable_is_scheduled_once() {
        let src = generate(DomainSpec::Soccer {
            width: 3,
            height: 2,
            players: 2,
        })
        .unwrap();
        for budget in [1, 3, 10] {
            let ts = build(&src, PartitionMode::Partitioned(budget));
            let expected = ts.enc.next_vars().union(&ts.enc.env_action_vars());
            let mut seen = VarSet::new();
            for (k, p) in ts.partitions.iter().enumerate() {
                assert!(!p.quantify.intersects(&seen));
                seen = seen.union(&p.quantify);
                for later in &ts.partitions[k + 1..] {
                    assert!(!ts.mgr.support(later.relation).intersects(&p.quantify));
                }
            }
            assert_eq!(seen, expected);
        }
    }
}
