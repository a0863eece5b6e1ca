use crate::bdd::NodeRef;
use crate::encode::TransitionSystem;

use super::{
    count_states, prune, states_of, strong_preimage, weak_preimage, Algorithm, FailureReason,
    IterStats, PlanOutcome, Result, UniversalPlan,
};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PlanOptions {
    /// Preimage computations allowed before giving up. The algorithms
    /// terminate on their own; the default, the number of encodable states,
    /// only guards against encoder bugs.
    pub max_iterations: Option<usize>,
}

impl PlanOptions {
    fn limit(&self, ts: &TransitionSystem) -> usize {
        self.max_iterations.unwrap_or_else(|| {
            1usize
                .checked_shl(ts.enc.state_bits())
                .unwrap_or(usize::MAX)
        })
    }
}

pub fn plan(
    ts: &mut TransitionSystem,
    algorithm: Algorithm,
    opts: PlanOptions,
) -> Result<PlanOutcome> {
    match algorithm {
        Algorithm::Strong => strong_plan(ts, opts),
        Algorithm::StrongCyclic => strong_cyclic_plan(ts, opts),
        Algorithm::Optimistic => optimistic_plan(ts, opts),
    }
}

/// Shared bookkeeping: plan rules, visited states and statistics.
struct Run {
    plan: UniversalPlan,
    visited: NodeRef,
    limit: usize,
}

impl Run {
    fn new(ts: &TransitionSystem, algorithm: Algorithm, opts: PlanOptions) -> Run {
        let plan = UniversalPlan {
            algorithm,
            sa: ts.mgr.zero(),
            iterations: 0,
            stats: Vec::new(),
            layers: vec![ts.goal],
        };
        Run {
            plan,
            visited: ts.goal,
            limit: opts.limit(ts),
        }
    }

    fn covered(&mut self, ts: &mut TransitionSystem) -> Result<bool> {
        Ok(ts.mgr.leq(ts.init, self.visited)?)
    }

    /// Counts one preimage computation; false once the limit is hit.
    fn tick(&mut self) -> bool {
        if self.plan.iterations >= self.limit {
            return false;
        }
        self.plan.iterations += 1;
        true
    }

    fn commit(&mut self, ts: &mut TransitionSystem, rules: NodeRef) -> Result<()> {
        let new = states_of(ts, rules)?;
        self.plan.sa = ts.mgr.or(self.plan.sa, rules)?;
        self.visited = ts.mgr.or(self.visited, new)?;
        self.plan.layers.push(self.visited);
        self.plan.stats.push(IterStats {
            new_states: count_states(ts, new),
            plan_nodes: ts.mgr.node_count(self.plan.sa),
        });
        Ok(())
    }

    fn fail(self, reason: FailureReason) -> PlanOutcome {
        PlanOutcome::Failure {
            reason,
            partial: self.plan,
        }
    }
}

fn layered(
    ts: &mut TransitionSystem,
    algorithm: Algorithm,
    opts: PlanOptions,
    reason: FailureReason,
) -> Result<PlanOutcome> {
    let mut run = Run::new(ts, algorithm, opts);
    while !run.covered(ts)? {
        if !run.tick() {
            let limit = run.limit;
            return Ok(run.fail(FailureReason::IterationLimit(limit)));
        }
        let sa = match algorithm {
            Algorithm::Optimistic => weak_preimage(ts, run.visited)?,
            _ => strong_preimage(ts, run.visited)?,
        };
        let pruned = prune(ts, sa, run.visited)?;
        if pruned.is_zero() {
            return Ok(run.fail(reason));
        }
        run.commit(ts, pruned)?;
    }
    Ok(PlanOutcome::Success(run.plan))
}

/// Weak preimage layers: every covered state has at least one execution
/// reaching the goal.
pub fn optimistic_plan(ts: &mut TransitionSystem, opts: PlanOptions) -> Result<PlanOutcome> {
    layered(
        ts,
        Algorithm::Optimistic,
        opts,
        FailureReason::NoOptimisticPlan,
    )
}

/// Strong preimage layers: every execution reaches the goal within the
/// layer index of its start state.
pub fn strong_plan(ts: &mut TransitionSystem, opts: PlanOptions) -> Result<PlanOutcome> {
    layered(ts, Algorithm::Strong, opts, FailureReason::NoStrongPlan)
}

/// Strong layers while they exist; otherwise weak layers are collected
/// until some subset of their rules is closed (no transition leaves the
/// visited states and the candidates), which is then committed.
pub fn strong_cyclic_plan(ts: &mut TransitionSystem, opts: PlanOptions) -> Result<PlanOutcome> {
    let mut run = Run::new(ts, Algorithm::StrongCyclic, opts);
    while !run.covered(ts)? {
        if !run.tick() {
            let limit = run.limit;
            return Ok(run.fail(FailureReason::IterationLimit(limit)));
        }
        let strong = strong_preimage(ts, run.visited)?;
        let pruned = prune(ts, strong, run.visited)?;
        if !pruned.is_zero() {
            run.commit(ts, pruned)?;
            continue;
        }

        match first_closed_block(ts, run.visited, run.limit - run.plan.iterations + 1)? {
            Block::Closed(rules, layers) => {
                run.plan.iterations += layers - 1;
                run.commit(ts, rules)?;
            }
            Block::DeadEnd => return Ok(run.fail(FailureReason::NoStrongCyclicPlan)),
            Block::OutOfBudget => {
                let limit = run.limit;
                run.plan.iterations = limit;
                return Ok(run.fail(FailureReason::IterationLimit(limit)));
            }
        }
    }
    Ok(PlanOutcome::Success(run.plan))
}

enum Block {
    /// Closed rules and the number of weak layers they were drawn from.
    Closed(NodeRef, usize),
    DeadEnd,
    OutOfBudget,
}

/// Finds the smallest `k` such that the first `k` weak layers above
/// `visited` contain a nonempty closed subset, and returns that subset.
/// A closed subset of `k` layers stays closed when layers are added, so
/// `k` is located by galloping and bisection instead of testing every
/// prefix; layers themselves are computed lazily, at most `budget` of them.
fn first_closed_block(ts: &mut TransitionSystem, visited: NodeRef, budget: usize) -> Result<Block> {
    // prefixes[j] holds the union of the first j + 1 layers.
    let mut prefixes: Vec<NodeRef> = Vec::new();
    let mut reach = visited;
    let mut exhausted = false;
    let mut extend =
        |ts: &mut TransitionSystem, prefixes: &mut Vec<NodeRef>, upto: usize| -> Result<()> {
            while prefixes.len() < upto && !exhausted {
                if prefixes.len() == budget {
                    exhausted = true;
                    break;
                }
                let weak = weak_preimage(ts, reach)?;
                let layer = prune(ts, weak, reach)?;
                if layer.is_zero() {
                    exhausted = true;
                    break;
                }
                let prev = prefixes.last().copied().unwrap_or(ts.mgr.zero());
                prefixes.push(ts.mgr.or(prev, layer)?);
                let states = states_of(ts, layer)?;
                reach = ts.mgr.or(reach, states)?;
            }
            Ok(())
        };

    // Gallop: test prefixes of length 1, 2, 4, ... until one has a closed subset.
    let mut lo = 0; // longest prefix known to have no closed subset
    let mut want = 1;
    let (hi, closed) = loop {
        extend(ts, &mut prefixes, want)?;
        let k = want.min(prefixes.len());
        if k > lo {
            let closed = greatest_closed_subset(ts, prefixes[k - 1], visited)?;
            if !closed.is_zero() {
                break (k, closed);
            }
            lo = k;
        }
        if k < want {
            // No more layers: the last prefix has already been tested.
            let no_more_layers = prefixes.len() < budget;
            return Ok(if no_more_layers {
                Block::DeadEnd
            } else {
                Block::OutOfBudget
            });
        }
        want *= 2;
    };

    // Bisect in (lo, hi].
    let (mut hi, mut closed) = (hi, closed);
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        let c = greatest_closed_subset(ts, prefixes[mid - 1], visited)?;
        if c.is_zero() {
            lo = mid;
        } else {
            (hi, closed) = (mid, c);
        }
    }
    Ok(Block::Closed(closed, hi))
}

/// Largest subset of `rules` all of whose transitions stay inside
/// `visited` and the states of the subset itself.
fn greatest_closed_subset(
    ts: &mut TransitionSystem,
    rules: NodeRef,
    visited: NodeRef,
) -> Result<NodeRef> {
    let mut current = rules;
    loop {
        let states = states_of(ts, current)?;
        let inside = ts.mgr.or(visited, states)?;
        let outside = ts.mgr.not(inside)?;
        let leaving = weak_preimage(ts, outside)?;
        let kept = ts.mgr.diff(current, leaving)?;
        if kept == current {
            return Ok(current);
        }
        current = kept;
    }
}
