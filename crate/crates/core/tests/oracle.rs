use std::collections::BTreeSet;

use uniplan::domains::{generate, DomainSpec, ROBOT_BABY};
use uniplan::encode::{PartitionMode, TransitionSystem};
use uniplan::nadl;
use uniplan::oracle::{evaluate_plan, oracle_plan, Caps, ExplicitNfa, Length, StateSet};
use uniplan::plan::{self, strong_preimage, weak_preimage, Algorithm, PlanOptions};

/// (pos, robot_works) --action--> successors
type Edge = ((u64, u64), &'static str, &'static [(u64, u64)]);

/// Two state bits, one action bit; only `x1` is updated.
const TWO_BITS: &str = "\
variables
  bool x1 x2
system
  agt: A
    A0
      con: x1, x2
      pre: true
      eff: x1' <=> x2
    A1
      con: x1, x2
      pre: true
      eff: x1' <=> ~x1
initially
  true
goal
  ~x1 /\\ x2
";

/// A single non-deterministic action: three
/// states step into the goal, 4 and 5 form a loop with an exit, 6 feeds 5.
const LOOP_WITH_EXIT: &str = "\
variables
  nat(7) pos
system
  agt: A
    Step
      con: pos
      pre: pos != 0
      eff: (pos <= 3 -> pos' = 0,
           (pos = 4 -> pos' = 1 \\/ pos' = 5,
           (pos = 5 -> pos' = 4, pos' = 5)))
initially
  pos = 6
goal
  pos = 0
";

fn nfa(src: &str) -> ExplicitNfa {
    ExplicitNfa::expand(&nadl::load(src).unwrap(), Caps::default()).unwrap()
}

fn ts(src: &str) -> TransitionSystem {
    TransitionSystem::build(&nadl::load(src).unwrap(), PartitionMode::default()).unwrap()
}

fn gen(spec: DomainSpec) -> String {
    generate(spec).unwrap()
}

/// Transitions as `(state values, action names, next values)`.
fn named_triples(n: &ExplicitNfa) -> BTreeSet<(Vec<u64>, Vec<String>, Vec<u64>)> {
    n.triples()
        .into_iter()
        .map(|(s, i, t)| {
            let names = n
                .domain
                .system
                .iter()
                .zip(n.input(i))
                .map(|(a, id)| a.actions[id].name.clone())
                .collect();
            (n.state(s), names, n.state(t))
        })
        .collect()
}

#[test]
fn robot_baby_expands_to_the_drawn_automaton() {
    let n = nfa(ROBOT_BABY);
    assert_eq!((n.num_states(), n.num_inputs()), (8, 2));
    // (pos, robot_works) --action--> successors, transcribed edge by edge
    let edges: &[Edge] = &[
        ((0, 1), "Lift-Block", &[(1, 1), (1, 0)]),
        ((1, 1), "Lift-Block", &[(2, 1), (2, 0)]),
        ((2, 1), "Lift-Block", &[(3, 1), (3, 0)]),
        ((1, 1), "Lower-Block", &[(0, 1), (0, 0)]),
        ((2, 1), "Lower-Block", &[(1, 1), (1, 0)]),
        ((3, 1), "Lower-Block", &[(2, 1), (2, 0)]),
        ((0, 0), "Lift-Block", &[(0, 0)]),
        ((1, 0), "Lift-Block", &[(1, 0)]),
        ((2, 0), "Lift-Block", &[(2, 0)]),
        ((1, 0), "Lower-Block", &[(1, 0)]),
        ((2, 0), "Lower-Block", &[(2, 0)]),
        ((3, 0), "Lower-Block", &[(3, 0)]),
    ];
    let mut expected = BTreeSet::new();
    for &((p, w), a, next) in edges {
        for &(p2, w2) in next {
            expected.insert((vec![p, w], vec![a.to_string()], vec![p2, w2]));
        }
    }
    assert_eq!(named_triples(&n), expected);
    assert_eq!(n.init, BTreeSet::from([n.state_index(&[0, 1])]));
    assert_eq!(
        n.goal,
        BTreeSet::from([n.state_index(&[3, 0]), n.state_index(&[3, 1])])
    );
}

#[test]
fn symbolic_relation_matches_expansion() {
    let sources = [
        ROBOT_BABY.to_string(),
        TWO_BITS.to_string(),
        LOOP_WITH_EXIT.to_string(),
        gen(DomainSpec::BeamWalk { n: 6 }),
        gen(DomainSpec::Domain2 { n: 4 }),
        gen(DomainSpec::Soccer {
            width: 2,
            height: 2,
            players: 2,
        }),
        gen(DomainSpec::PowerPlant {
            heat_exchangers: 1,
            turbines: 2,
        }),
        gen(DomainSpec::Obstacle { obstacles: 1 }),
    ];
    for src in &sources {
        let n = nfa(src);
        for mode in [PartitionMode::Monolithic, PartitionMode::Partitioned(1)] {
            let mut t = TransitionSystem::build(&n.domain, mode).unwrap();
            let rel = t.monolithic_relation().unwrap();
            assert_eq!(
                n.triples_from_bdd(&t, rel).unwrap(),
                n.triples(),
                "{mode:?}\n{src}"
            );
            assert_eq!(n.states_from_bdd(&t, t.init).unwrap(), n.init);
            assert_eq!(n.states_from_bdd(&t, t.goal).unwrap(), n.goal);
        }
    }
}

#[test]
fn two_bits_first_preimage() {
    let n = nfa(TWO_BITS);
    let p1 = n.weak_preimage(&n.goal);
    let named: BTreeSet<(Vec<u64>, usize)> = p1.iter().map(|&(s, i)| (n.state(s), i)).collect();
    let expected = BTreeSet::from([
        (vec![0, 0], 0),
        (vec![1, 0], 0),
        (vec![1, 0], 1),
        (vec![1, 1], 1),
    ]);
    assert_eq!(named, expected);

    let mut t = ts(TWO_BITS);
    let sym = {
        let g = t.goal;
        weak_preimage(&mut t, g)
    }
    .unwrap();
    assert_eq!(n.pairs_from_bdd(&t, sym).unwrap(), p1);
    let states = plan::states_of(&mut t, sym).unwrap();
    let expect_states: StateSet = [[0, 0], [1, 0], [1, 1]]
        .iter()
        .map(|s| n.state_index(s))
        .collect();
    assert_eq!(n.states_from_bdd(&t, states).unwrap(), expect_states);
}

#[test]
fn loop_with_exit_preimage_sequence() {
    let n = nfa(LOOP_WITH_EXIT);
    let first = n.strong_preimage(&n.goal);
    let states = |pairs: &BTreeSet<(usize, usize)>| {
        pairs
            .iter()
            .map(|p| n.state(p.0)[0])
            .collect::<BTreeSet<_>>()
    };
    assert_eq!(states(&first), BTreeSet::from([1, 2, 3]));
    let v1: StateSet = (0..4).collect();
    let second: BTreeSet<_> = n
        .strong_preimage(&v1)
        .into_iter()
        .filter(|p| !v1.contains(&p.0))
        .collect();
    assert!(second.is_empty());

    let sc = oracle_plan(&n, Algorithm::StrongCyclic);
    let layers: Vec<BTreeSet<u64>> = sc
        .plan()
        .layers
        .iter()
        .map(|l| l.iter().map(|&s| n.state(s)[0]).collect())
        .collect();
    let expected: Vec<BTreeSet<u64>> = vec![
        (0..=0).collect(),
        (0..=3).collect(),
        (0..=5).collect(),
        (0..=6).collect(),
    ];
    assert_eq!(layers, expected);
    assert!(sc.is_success());
    assert!(!oracle_plan(&n, Algorithm::Strong).is_success());

    let mut t = ts(LOOP_WITH_EXIT);
    let sym = plan::plan(&mut t, Algorithm::StrongCyclic, PlanOptions::default()).unwrap();
    let sym_layers: Vec<StateSet> = sym
        .plan()
        .layers
        .iter()
        .map(|&l| n.states_from_bdd(&t, l).unwrap())
        .collect();
    assert_eq!(sym_layers, sc.plan().layers);
}

#[test]
fn robot_baby_strong_preimage_of_goal() {
    // Hit-Robot may break the robot at any time, but lifting from 2 or
    // lowering from a broken 3 still lands in the goal whatever happens.
    let n = nfa(ROBOT_BABY);
    let strong: BTreeSet<(Vec<u64>, usize)> = n
        .strong_preimage(&n.goal)
        .into_iter()
        .map(|(s, i)| (n.state(s), i))
        .collect();
    assert_eq!(strong, BTreeSet::from([(vec![2, 1], 0), (vec![3, 0], 1)]));
    let mut t = ts(ROBOT_BABY);
    let sym = {
        let g = t.goal;
        strong_preimage(&mut t, g)
    }
    .unwrap();
    assert_eq!(
        n.pairs_from_bdd(&t, sym).unwrap(),
        n.strong_preimage(&n.goal)
    );
}

#[test]
fn generated_topologies() {
    let adjacency = |n: &ExplicitNfa| -> BTreeSet<(Vec<u64>, usize, Vec<u64>)> {
        n.triples()
            .into_iter()
            .map(|(s, i, t)| (n.state(s), i, n.state(t)))
            .collect()
    };
    for size in 2..=8u64 {
        let d1 = nfa(&gen(DomainSpec::Domain1 { n: size }));
        let mut expected = BTreeSet::new();
        for k in 0..size {
            expected.insert((vec![k], 0, vec![k + 1]));
        }
        expected.insert((vec![0], 1, vec![0]));
        expected.insert((vec![0], 1, vec![size]));
        assert_eq!(adjacency(&d1), expected);

        let d2 = nfa(&gen(DomainSpec::Domain2 { n: size }));
        let mut expected = BTreeSet::new();
        for k in 0..size {
            expected.insert((vec![k], 0, vec![k]));
            expected.insert((vec![k], 0, vec![k + 1]));
        }
        for t in [0, size, size + 1] {
            expected.insert((vec![0], 1, vec![t]));
        }
        assert_eq!(adjacency(&d2), expected);
    }
    for size in 2..=16u64 {
        // state is (pos, up)
        let b = nfa(&gen(DomainSpec::BeamWalk { n: size }));
        let mut expected = BTreeSet::new();
        for k in 0..size - 1 {
            expected.insert((vec![k, 1], 0, vec![k + 1, 1]));
            expected.insert((vec![k, 1], 0, vec![k + 1, 0]));
        }
        expected.insert((vec![0, 0], 0, vec![0, 1]));
        for k in 1..size {
            expected.insert((vec![k, 0], 0, vec![k - 1, 0]));
        }
        assert_eq!(adjacency(&b), expected, "beam walk {size}");
    }
}

#[test]
fn oracle_verdicts() {
    let rb = nfa(ROBOT_BABY);
    assert!(!oracle_plan(&rb, Algorithm::Strong).is_success());
    assert!(!oracle_plan(&rb, Algorithm::StrongCyclic).is_success());
    assert!(oracle_plan(&rb, Algorithm::Optimistic).is_success());
    let d2 = nfa(&gen(DomainSpec::Domain2 { n: 3 }));
    assert!(!oracle_plan(&d2, Algorithm::Strong).is_success());
    assert!(oracle_plan(&d2, Algorithm::StrongCyclic).is_success());
    let d1 = nfa(&gen(DomainSpec::Domain1 { n: 3 }));
    assert!(oracle_plan(&d1, Algorithm::Strong).is_success());
}

#[test]
fn plan_lengths_of_domains_one_and_two() {
    use Length::*;
    let n = 5;
    let d1 = nfa(&gen(DomainSpec::Domain1 { n }));
    let start = d1.state_index(&[0]);
    let profile = |nfa: &ExplicitNfa, a| {
        evaluate_plan(nfa, &oracle_plan(nfa, a).plan().rules)
            .of(start)
            .unwrap()
    };
    assert_eq!(profile(&d1, Algorithm::Strong), (Steps(n), Steps(n)));
    assert_eq!(profile(&d1, Algorithm::StrongCyclic), (Steps(n), Steps(n)));
    assert_eq!(profile(&d1, Algorithm::Optimistic), (Steps(1), Infinite));
    let d2 = nfa(&gen(DomainSpec::Domain2 { n }));
    assert_eq!(profile(&d2, Algorithm::StrongCyclic), (Steps(n), Infinite));
    assert_eq!(profile(&d2, Algorithm::Optimistic), (Steps(1), DeadEnd));
    assert_eq!(format!("{} {} {}", Steps(3), Infinite, DeadEnd), "3 ∞ ∞_D");
}

#[test]
fn soccer_attackers_never_pass_together() {
    let n = nfa(&gen(DomainSpec::Soccer {
        width: 2,
        height: 2,
        players: 2,
    }));
    let names: Vec<Vec<String>> = (0..n.num_inputs())
        .map(|i| {
            n.domain
                .system
                .iter()
                .zip(n.input(i))
                .map(|(a, id)| a.actions[id].name.clone())
                .collect()
        })
        .collect();
    let mut executed = 0;
    for (_, i, _) in n.triples() {
        executed += 1;
        assert!(
            names[i].iter().filter(|a| a.starts_with("PassTo")).count() < 2,
            "{:?}",
            names[i]
        );
    }
    assert!(executed > 0);
}

#[test]
fn power_plant_preimages_agree() {
    let src = gen(DomainSpec::PowerPlant {
        heat_exchangers: 2,
        turbines: 2,
    });
    let n = nfa(&src);
    let mut t = ts(&src);
    let weak = {
        let g = t.goal;
        weak_preimage(&mut t, g)
    }
    .unwrap();
    assert_eq!(
        n.pairs_from_bdd(&t, weak).unwrap(),
        n.weak_preimage(&n.goal)
    );
    let strong = {
        let g = t.goal;
        strong_preimage(&mut t, g)
    }
    .unwrap();
    assert_eq!(
        n.pairs_from_bdd(&t, strong).unwrap(),
        n.strong_preimage(&n.goal)
    );
}
