//! Plan execution: random traces against the domain, or exhaustive
//! best/worst-case plan lengths on small domains.

use std::path::PathBuf;

use clap::Args;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use uniplan::nadl::Domain;
use uniplan::oracle::{evaluate_plan, step_outcomes, Caps, ExplicitNfa, PairSet};
use uniplan::plan::{advised_in, name_joint_action};
use uniplan::planfile::PlanFile;
use uniplan::state::{format_state, parse_state};

use crate::{format_joint_action, input_error, load_domain, read, CliResult, Failure};

#[derive(Args)]
pub struct SimulateArgs {
    plan: PathBuf,
    /// NADL domain the plan was made for.
    domain: PathBuf,
    #[arg(short, long)]
    start: String,
    /// Seed for environment and outcome choices.
    #[arg(long, default_value_t = 0, conflicts_with = "exhaustive")]
    seed: u64,
    /// Report best and worst-case plan lengths over all executions.
    #[arg(long)]
    exhaustive: bool,
    #[arg(long, default_value_t = 1000)]
    max_steps: usize,
}

pub fn run(args: &SimulateArgs) -> CliResult<()> {
    let mut pf = PlanFile::parse(&read(&args.plan)?).map_err(input_error)?;
    let d = load_domain(&read(&args.domain)?)?;
    check_match(&pf, &d)?;
    let start = parse_state(&args.start, &d.vars).map_err(input_error)?;
    if args.exhaustive {
        exhaustive(&mut pf, &d, &start)
    } else {
        random(&mut pf, &d, &start, args.seed, args.max_steps)
    }
}

/// The plan file must name the same variables and system actions as the domain.
fn check_match(pf: &PlanFile, d: &Domain) -> CliResult<()> {
    let vars_match = pf.vars.len() == d.vars.len()
        && pf
            .vars
            .iter()
            .zip(&d.vars)
            .all(|(a, b)| a.name == b.name && a.kind == b.kind);
    let agents: Vec<_> = pf.enc.system_agents().map(|(_, a)| a).collect();
    let agents_match = agents.len() == d.system.len()
        && agents.iter().zip(&d.system).all(|(a, b)| {
            a.name == b.name && a.actions.iter().eq(b.actions.iter().map(|x| &x.name))
        });
    if vars_match && agents_match {
        Ok(())
    } else {
        Err(Failure::Input("plan file does not match the domain".into()))
    }
}

fn is_goal(d: &Domain, s: &[u64]) -> bool {
    d.goal.eval(s, s).unwrap_or(false)
}

fn advice(pf: &mut PlanFile, s: &[u64]) -> CliResult<Vec<Vec<usize>>> {
    advised_in(&mut pf.mgr, &pf.enc, pf.rules, s).map_err(|e| Failure::Planning(e.to_string()))
}

/// One trace: the executor takes the first advised joint action, the
/// environment completion and outcome are drawn uniformly from the
/// transitions of that action.
fn random(
    pf: &mut PlanFile,
    d: &Domain,
    start: &[u64],
    seed: u64,
    max_steps: usize,
) -> CliResult<()> {
    let mut rng = StdRng::seed_from_u64(seed);
    println!("seed {seed}");
    let mut s = start.to_vec();
    for step in 1..=max_steps + 1 {
        if is_goal(d, &s) {
            println!("GOAL steps={}", step - 1);
            return Ok(());
        }
        if step > max_steps {
            break;
        }
        let Some(action) = advice(pf, &s)?.into_iter().next() else {
            return Err(Failure::Planning(format!(
                "coverage gap at {}",
                format_state(&s, &d.vars)
            )));
        };
        let transitions: Vec<(Vec<usize>, Vec<u64>)> = step_outcomes(d, &s, &action)
            .into_iter()
            .flat_map(|(env, next)| next.into_iter().map(move |t| (env.clone(), t)))
            .collect();
        let Some((env, next)) = transitions.choose(&mut rng).cloned() else {
            return Err(Failure::Planning(format!(
                "advised action cannot execute at {}",
                format_state(&s, &d.vars)
            )));
        };
        let env_named: Vec<(String, String)> = d
            .environment
            .iter()
            .zip(&env)
            .map(|(a, &i)| (a.name.clone(), a.actions[i].name.clone()))
            .collect();
        let env_text = if env_named.is_empty() {
            "-".to_string()
        } else {
            format_joint_action(&env_named)
        };
        println!(
            "step {step} state {} action {} env {} next {}",
            format_state(&s, &d.vars),
            format_joint_action(&name_joint_action(&pf.enc, &action)),
            env_text,
            format_state(&next, &d.vars)
        );
        s = next;
    }
    Err(Failure::Planning(format!(
        "no goal state within {max_steps} steps"
    )))
}

fn exhaustive(pf: &mut PlanFile, d: &Domain, start: &[u64]) -> CliResult<()> {
    let nfa =
        ExplicitNfa::expand(d, Caps::default()).map_err(|e| Failure::Planning(e.to_string()))?;
    let mut rules = PairSet::new();
    for s in 0..nfa.num_states() {
        for ids in advice(pf, &nfa.state(s))? {
            rules.insert((s, nfa.input_index(&ids)));
        }
    }
    let Some((best, worst)) = evaluate_plan(&nfa, &rules).of(nfa.state_index(start)) else {
        return Err(Failure::Planning(format!(
            "start state {} is not covered",
            format_state(start, &d.vars)
        )));
    };
    println!("best {best}");
    println!("worst {worst}");
    Ok(())
}
