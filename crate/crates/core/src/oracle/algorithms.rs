use crate::plan::{Algorithm, FailureReason};

use super::{states_of, ExplicitNfa, PairSet, StateSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitPlan {
    pub rules: PairSet,
    /// Visited sets after each growth step, starting with the goal.
    pub layers: Vec<StateSet>,
}

impl ExplicitPlan {
    pub fn covered(&self) -> StateSet {
        states_of(&self.rules)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExplicitOutcome {
    Success(ExplicitPlan),
    Failure {
        reason: FailureReason,
        partial: ExplicitPlan,
    },
}

impl ExplicitOutcome {
    pub fn plan(&self) -> &ExplicitPlan {
        match self {
            ExplicitOutcome::Success(p) | ExplicitOutcome::Failure { partial: p, .. } => p,
        }
    }

    pub fn is_success(&self) -> bool {
        matches!(self, ExplicitOutcome::Success(_))
    }
}

fn without(pairs: PairSet, visited: &StateSet) -> PairSet {
    pairs
        .into_iter()
        .filter(|(s, _)| !visited.contains(s))
        .collect()
}

struct Run<'a> {
    nfa: &'a ExplicitNfa,
    plan: ExplicitPlan,
    visited: StateSet,
}

impl Run<'_> {
    fn covered(&self) -> bool {
        self.nfa.init.is_subset(&self.visited)
    }

    fn commit(&mut self, rules: PairSet) {
        self.visited.extend(rules.iter().map(|p| p.0));
        self.plan.rules.extend(rules);
        self.plan.layers.push(self.visited.clone());
    }
}

/// Set-based replay of the symbolic algorithms.
pub fn oracle_plan(nfa: &ExplicitNfa, algorithm: Algorithm) -> ExplicitOutcome {
    let mut run = Run {
        nfa,
        plan: ExplicitPlan {
            rules: PairSet::new(),
            layers: vec![nfa.goal.clone()],
        },
        visited: nfa.goal.clone(),
    };
    let reason = match algorithm {
        Algorithm::Strong => FailureReason::NoStrongPlan,
        Algorithm::StrongCyclic => FailureReason::NoStrongCyclicPlan,
        Algorithm::Optimistic => FailureReason::NoOptimisticPlan,
    };
    'outer: while !run.covered() {
        let pre = match algorithm {
            Algorithm::Optimistic => nfa.weak_preimage(&run.visited),
            _ => nfa.strong_preimage(&run.visited),
        };
        let pruned = without(pre, &run.visited);
        if !pruned.is_empty() {
            run.commit(pruned);
            continue;
        }
        if algorithm != Algorithm::StrongCyclic {
            return ExplicitOutcome::Failure {
                reason,
                partial: run.plan,
            };
        }
        let mut candidates = PairSet::new();
        let mut reach = run.visited.clone();
        loop {
            let layer = without(nfa.weak_preimage(&reach), &reach);
            if layer.is_empty() {
                return ExplicitOutcome::Failure {
                    reason,
                    partial: run.plan,
                };
            }
            reach.extend(layer.iter().map(|p| p.0));
            candidates.extend(layer);
            let closed = closed_subset(nfa, &candidates, &run.visited);
            if !closed.is_empty() {
                run.commit(closed);
                continue 'outer;
            }
        }
    }
    ExplicitOutcome::Success(run.plan)
}

fn closed_subset(nfa: &ExplicitNfa, rules: &PairSet, visited: &StateSet) -> PairSet {
    let mut current = rules.clone();
    loop {
        let inside: StateSet = visited.union(&states_of(&current)).copied().collect();
        let kept: PairSet = current
            .iter()
            .copied()
            .filter(|&(s, i)| {
                let row = nfa.rules(s);
                let next = &row[row
                    .binary_search_by_key(&i, |r| r.0)
                    .expect("rule is applicable")]
                .1;
                next.iter().all(|t| inside.contains(t))
            })
            .collect();
        if kept.len() == current.len() {
            return current;
        }
        current = kept;
    }
}
