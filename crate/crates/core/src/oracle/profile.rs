use std::fmt;

use super::{ExplicitNfa, PairSet, StateSet};

/// Execution length: finite, infinite through a cycle (`∞`), or infinite
/// because an unrecoverable dead end can be reached (`∞_D`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Length {
    Steps(u64),
    Infinite,
    DeadEnd,
}

impl fmt::Display for Length {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Length::Steps(n) => write!(f, "{n}"),
            Length::Infinite => f.write_str("∞"),
            Length::DeadEnd => f.write_str("∞_D"),
        }
    }
}

/// Best and worst execution lengths per start state; `None` for states the
/// plan neither covers nor reaches as goals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LengthProfile {
    pub lengths: Vec<Option<(Length, Length)>>,
}

impl LengthProfile {
    pub fn of(&self, state: usize) -> Option<(Length, Length)> {
        self.lengths[state]
    }
}

/// Executes `rules` from every state. The executor picks among the advised
/// actions, the environment and non-determinism pick outcomes: the best case
/// minimizes over both, the worst case lets the executor minimize and the
/// outcomes maximize. A worst case is `∞_D` when the executor cannot avoid
/// reaching a state that is neither goal nor covered, and `∞` when it cannot
/// avoid cycling.
pub fn evaluate_plan(nfa: &ExplicitNfa, rules: &PairSet) -> LengthProfile {
    let n = nfa.num_states();
    let goal: &StateSet = &nfa.goal;
    let mut advice: Vec<Vec<&[usize]>> = vec![Vec::new(); n];
    for &(s, i) in rules {
        let row = nfa.rules(s);
        let k = row
            .binary_search_by_key(&i, |r| r.0)
            .expect("plan rules are applicable");
        advice[s].push(&row[k].1);
    }
    let covered = |s: usize| !goal.contains(&s) && !advice[s].is_empty();

    // dead ends: uncovered non-goal states, and covered states where every
    // advised action may lead to one
    let mut dead: Vec<bool> = (0..n)
        .map(|s| !goal.contains(&s) && advice[s].is_empty())
        .collect();
    loop {
        let mut changed = false;
        for s in 0..n {
            if covered(s) && !dead[s] && advice[s].iter().all(|next| next.iter().any(|&t| dead[t]))
            {
                dead[s] = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    let best = fixpoint(n, goal, &advice, |outcomes| {
        outcomes.iter().flatten().copied().min()
    });
    let worst = fixpoint(n, goal, &advice, |outcomes| {
        outcomes.iter().try_fold(0, |acc, v| v.map(|v| acc.max(v)))
    });

    let lengths = (0..n)
        .map(|s| {
            if goal.contains(&s) {
                return Some((Length::Steps(0), Length::Steps(0)));
            }
            if advice[s].is_empty() {
                return None;
            }
            let b = best[s].map_or(Length::Infinite, Length::Steps);
            let w = match worst[s] {
                _ if dead[s] => Length::DeadEnd,
                Some(v) => Length::Steps(v),
                None => Length::Infinite,
            };
            Some((b, w))
        })
        .collect();
    LengthProfile { lengths }
}

/// Value iteration: `value(goal) = 0`, otherwise one plus the minimum over
/// advised actions of `combine` over their outcomes; `None` is infinite.
fn fixpoint(
    n: usize,
    goal: &StateSet,
    advice: &[Vec<&[usize]>],
    combine: impl Fn(&[Option<u64>]) -> Option<u64>,
) -> Vec<Option<u64>> {
    let mut value: Vec<Option<u64>> = (0..n).map(|s| goal.contains(&s).then_some(0)).collect();
    loop {
        let mut changed = false;
        for s in (0..n).filter(|s| !goal.contains(s)) {
            let v = advice[s]
                .iter()
                .filter_map(|next| combine(&next.iter().map(|&t| value[t]).collect::<Vec<_>>()))
                .min()
                .map(|v| v + 1);
            if v != value[s] {
                value[s] = v;
                changed = true;
            }
        }
        if !changed {
            return value;
        }
    }
}
