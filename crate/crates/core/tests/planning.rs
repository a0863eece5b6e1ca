use uniplan::domains::{generate, DomainSpec, ROBOT_BABY};
use uniplan::encode::{PartitionMode, TransitionSystem};
use uniplan::nadl;
use uniplan::plan::{
    advised_actions, name_joint_action, plan, sequential_plan, states_of, Algorithm, FailureReason,
    PlanOptions, PlanOutcome,
};

fn system(src: &str) -> TransitionSystem {
    TransitionSystem::build(&nadl::load(src).unwrap(), PartitionMode::default()).unwrap()
}

fn spec(s: DomainSpec) -> TransitionSystem {
    system(&generate(s).unwrap())
}

fn run(ts: &mut TransitionSystem, a: Algorithm) -> PlanOutcome {
    plan(ts, a, PlanOptions::default()).unwrap()
}

fn names(ts: &TransitionSystem, actions: &[Vec<usize>]) -> Vec<Vec<String>> {
    actions
        .iter()
        .map(|ids| {
            name_joint_action(&ts.enc, ids)
                .into_iter()
                .map(|(_, a)| a)
                .collect()
        })
        .collect()
}

#[test]
fn robot_baby_verdicts() {
    let mut ts = system(ROBOT_BABY);
    let strong = run(&mut ts, Algorithm::Strong);
    assert!(matches!(
        strong,
        PlanOutcome::Failure {
            reason: FailureReason::NoStrongPlan,
            ..
        }
    ));
    let sc = run(&mut ts, Algorithm::StrongCyclic);
    assert!(matches!(
        sc,
        PlanOutcome::Failure {
            reason: FailureReason::NoStrongCyclicPlan,
            ..
        }
    ));
    let PlanOutcome::Success(p) = run(&mut ts, Algorithm::Optimistic) else {
        panic!("optimistic planning failed")
    };
    let advice = advised_actions(&mut ts, p.sa, &[0, 1]).unwrap();
    assert_eq!(names(&ts, &advice), vec![vec!["Lift-Block".to_string()]]);
    // plan rules are exactly (pos < 3 /\ robot_works, Lift-Block)
    for pos in 0..4 {
        for works in 0..2 {
            let advice = advised_actions(&mut ts, p.sa, &[pos, works]).unwrap();
            let expected: Vec<Vec<usize>> = if pos < 3 && works == 1 {
                vec![vec![0]]
            } else {
                vec![]
            };
            assert_eq!(advice, expected, "pos={pos} works={works}");
        }
    }
}

#[test]
fn init_inside_goal_needs_no_iterations() {
    let mut ts =
        system("variables bool p system agt: A X con: p pre: true eff: p' initially p goal p");
    for a in Algorithm::ALL {
        let PlanOutcome::Success(p) = run(&mut ts, a) else {
            panic!("{a} failed")
        };
        assert_eq!(p.iterations, 0);
        assert!(p.sa.is_zero());
    }
}

#[test]
fn domain1_plans() {
    for n in 2..=6 {
        let mut ts = spec(DomainSpec::Domain1 { n });
        let PlanOutcome::Success(p) = run(&mut ts, Algorithm::Optimistic) else {
            panic!()
        };
        let mut rules = Vec::new();
        for pos in 0..=n {
            for ids in advised_actions(&mut ts, p.sa, &[pos]).unwrap() {
                rules.push((pos, names(&ts, &[ids])[0][0].clone()));
            }
        }
        assert_eq!(
            rules,
            vec![(0, "Dashed".to_string()), (n - 1, "Solid".to_string())]
        );
    }
    let mut ts = spec(DomainSpec::Domain1 { n: 5 });
    let PlanOutcome::Success(p) = run(&mut ts, Algorithm::Strong) else {
        panic!()
    };
    for pos in 0..5 {
        let advice = advised_actions(&mut ts, p.sa, &[pos]).unwrap();
        assert_eq!(names(&ts, &advice), vec![vec!["Solid".to_string()]]);
    }
    assert_eq!(p.iterations, 5);
}

#[test]
fn domain2_needs_strong_cyclic() {
    let mut ts = spec(DomainSpec::Domain2 { n: 5 });
    assert!(!run(&mut ts, Algorithm::Strong).is_success());
    let PlanOutcome::Success(p) = run(&mut ts, Algorithm::StrongCyclic) else {
        panic!()
    };
    for pos in 0..5 {
        let advice = advised_actions(&mut ts, p.sa, &[pos]).unwrap();
        assert_eq!(names(&ts, &advice), vec![vec!["Solid".to_string()]]);
    }
    assert!(advised_actions(&mut ts, p.sa, &[6]).unwrap().is_empty());
}

#[test]
fn beam_walk_is_strong_cyclic_only() {
    for n in [2, 4, 8, 16] {
        let mut ts = spec(DomainSpec::BeamWalk { n });
        assert!(!run(&mut ts, Algorithm::Strong).is_success(), "n={n}");
        let PlanOutcome::Success(p) = run(&mut ts, Algorithm::StrongCyclic) else {
            panic!("n={n}")
        };
        let covered = states_of(&mut ts, p.sa).unwrap();
        let all = ts.mgr.or(covered, ts.goal).unwrap();
        assert_eq!(uniplan::plan::count_states(&ts, all), Some(2 * n as u128));
    }
}

#[test]
fn partial_plan_survives_failure() {
    let mut ts = system(ROBOT_BABY);
    let PlanOutcome::Failure { partial, .. } = run(&mut ts, Algorithm::Strong) else {
        panic!()
    };
    // one strong layer exists: lifting from 2 with a working robot
    assert_eq!(partial.layers.len(), 2);
    assert_eq!(
        advised_actions(&mut ts, partial.sa, &[2, 1]).unwrap(),
        vec![vec![0]]
    );
    let covered = states_of(&mut ts, partial.sa).unwrap();
    assert_eq!(uniplan::plan::count_states(&ts, covered), Some(1));
}

#[test]
fn gripper_problem_one_takes_eleven_steps() {
    let mut ts = spec(DomainSpec::Gripper { problem: 1 });
    let PlanOutcome::Success(p) = run(&mut ts, Algorithm::Optimistic) else {
        panic!()
    };
    let steps = sequential_plan(&mut ts, p.sa, &[0, 0, 0, 0, 0], 100).unwrap();
    assert_eq!(steps.len(), 11);
    assert_eq!(steps.last().unwrap().state, vec![1, 1, 1, 1, 1]);
}

#[test]
fn movie_takes_seven_steps() {
    let mut ts = spec(DomainSpec::Movie { objects: 5 });
    let PlanOutcome::Success(p) = run(&mut ts, Algorithm::Optimistic) else {
        panic!()
    };
    let steps = sequential_plan(&mut ts, p.sa, &[0; 7], 100).unwrap();
    assert_eq!(steps.len(), 7);
    let goal_start = steps.last().unwrap().state.clone();
    assert!(sequential_plan(&mut ts, p.sa, &goal_start, 100)
        .unwrap()
        .is_empty());
}

#[test]
fn nondeterminism_is_reported() {
    let mut ts = spec(DomainSpec::BeamWalk { n: 4 });
    let PlanOutcome::Success(p) = run(&mut ts, Algorithm::StrongCyclic) else {
        panic!()
    };
    let err = sequential_plan(&mut ts, p.sa, &[0, 1], 100).unwrap_err();
    assert!(
        matches!(err, uniplan::plan::SeqError::Nondeterministic(..)),
        "{err}"
    );
}

#[test]
fn partition_modes_agree_on_beam_walk() {
    let d = nadl::load(&generate(DomainSpec::BeamWalk { n: 8 }).unwrap()).unwrap();
    let mut reference = None;
    for mode in [
        PartitionMode::Monolithic,
        PartitionMode::Partitioned(1),
        PartitionMode::Partitioned(3),
    ] {
        let mut ts = TransitionSystem::build(&d, mode).unwrap();
        let p = run(&mut ts, Algorithm::StrongCyclic);
        let dump: Vec<String> = p
            .plan()
            .layers
            .iter()
            .map(|&l| ts.mgr.dump(l).unwrap())
            .collect();
        let dump = (dump, ts.mgr.dump(p.plan().sa).unwrap());
        match &reference {
            None => reference = Some(dump),
            Some(r) => assert_eq!(r, &dump, "{mode:?}"),
        }
    }
}

#[test]
fn power_plant_single_preimage() {
    let mut ts = spec(DomainSpec::PowerPlant {
        heat_exchangers: 4,
        turbines: 4,
    });
    assert_eq!(ts.enc.state_bits(), 24);
    let PlanOutcome::Success(p) = run(&mut ts, Algorithm::Optimistic) else {
        panic!()
    };
    assert_eq!(p.iterations, 1);
    let bad = "okh1=1,okh2=1,okh3=0,okh4=0,b1=0,b2=0,b3=0,b4=0,\
               okt1=1,okt2=1,okt3=1,okt4=1,s1=0,s2=0,s3=0,s4=0,v1=1,v2=1,v3=1,v4=1,p=1,f=2";
    let state = uniplan::state::parse_state(bad, &ts.domain.vars).unwrap();
    let advice = advised_actions(&mut ts, p.sa, &state).unwrap();
    assert_eq!(advice.len(), 1);
    let mut named = name_joint_action(&ts.enc, &advice[0]);
    named.retain(|(_, a)| !a.starts_with("Idle"));
    let expect = [("H3", "Block3"), ("H4", "Block4"), ("Reactor", "Set2")];
    assert_eq!(
        named,
        expect.map(|(g, a)| (g.to_string(), a.to_string())).to_vec()
    );
    for a in [Algorithm::Strong, Algorithm::StrongCyclic] {
        assert!(!run(&mut ts, a).is_success());
    }
}
