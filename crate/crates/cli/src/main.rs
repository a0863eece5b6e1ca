//! `uniplan`: generate domains, synthesise universal plans, and query or
//! execute them.
//!
//! Exit codes: 0 success, 1 planning or execution failure, 2 malformed
//! input (domain, parameters, plan file, state), 3 I/O error.

mod simulate;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use uniplan::domains::{generate, DomainSpec, DOMAIN_NAMES};
use uniplan::encode::{PartitionMode, TransitionSystem, DEFAULT_BUDGET};
use uniplan::nadl::{self, Domain};
use uniplan::plan::{
    self, count_states, name_joint_action, sequential_plan, states_of, Algorithm, PlanOptions,
    PlanOutcome,
};
use uniplan::planfile::{write_plan, PlanFile};
use uniplan::state::{format_state, parse_state};

#[derive(Parser)]
#[command(
    name = "uniplan",
    version,
    about = "Symbolic universal planning for NADL domains"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a benchmark domain in NADL.
    Gen {
        /// One of: robot-baby, beam-walk, domain1, domain2, gripper, movie,
        /// power-plant, soccer, obstacle.
        domain: String,
        /// Generator parameters as key=value.
        params: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Synthesise a universal plan.
    Plan(PlanArgs),
    /// Print the joint actions a plan advises in a state.
    Query {
        plan: PathBuf,
        /// Full state assignment, e.g. "pos=0,robot_works=true".
        #[arg(short, long)]
        state: String,
    },
    /// Execute a plan against its domain.
    Simulate(simulate::SimulateArgs),
    /// Print encoding statistics as `key value` lines.
    Stats {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        encoding: EncodingArgs,
    },
}

#[derive(Args)]
#[command(group(ArgGroup::new("source").required(true).args(["domain", "generator"])))]
struct Input {
    /// NADL domain file.
    domain: Option<PathBuf>,
    /// Generate the domain instead of reading it.
    #[arg(long = "gen", value_name = "DOMAIN")]
    generator: Option<String>,
    /// Generator parameter key=value (repeatable).
    #[arg(long = "param", value_name = "KEY=VALUE", requires = "generator")]
    params: Vec<String>,
}

#[derive(Args)]
struct EncodingArgs {
    /// Conjunct budget per partition.
    #[arg(short = 'p', long, default_value_t = DEFAULT_BUDGET, conflicts_with = "monolithic")]
    partition: usize,
    /// Use a single monolithic transition relation.
    #[arg(long)]
    monolithic: bool,
}

impl EncodingArgs {
    fn mode(&self) -> PartitionMode {
        if self.monolithic {
            PartitionMode::Monolithic
        } else {
            PartitionMode::Partitioned(self.partition)
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AlgorithmArg {
    Strong,
    StrongCyclic,
    Optimistic,
    /// Optimistic planning followed by sequential plan extraction.
    Deterministic,
}

#[derive(Args)]
struct PlanArgs {
    #[command(flatten)]
    input: Input,
    #[arg(short, long, value_enum)]
    algorithm: AlgorithmArg,
    #[command(flatten)]
    encoding: EncodingArgs,
    /// Plan file to write (also written on failure, holding the partial plan).
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Print per-iteration statistics.
    #[arg(long)]
    stats: bool,
    #[arg(long)]
    max_iterations: Option<usize>,
    /// Start state for deterministic extraction; defaults to the first
    /// initial state.
    #[arg(short, long)]
    start: Option<String>,
    /// Step cap for deterministic extraction.
    #[arg(long, default_value_t = 10_000)]
    max_steps: usize,
}

/// A failure with its exit code.
pub enum Failure {
    Planning(String),
    Input(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Planning(_) => 1,
            Failure::Input(_) => 2,
            Failure::Io(_) => 3,
        }
    }
}

pub type CliResult<T> = Result<T, Failure>;

pub fn input_error(e: impl std::fmt::Display) -> Failure {
    Failure::Input(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen {
            domain,
            params,
            output,
        } => run_gen(&domain, &params, output.as_deref()),
        Command::Plan(args) => run_plan(&args),
        Command::Query { plan, state } => run_query(&plan, &state),
        Command::Simulate(args) => simulate::run(&args),
        Command::Stats { input, encoding } => run_stats(&input, &encoding),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Planning(msg) => println!("{msg}"),
                Failure::Input(msg) | Failure::Io(msg) => eprintln!("{msg}"),
            }
            ExitCode::from(f.code())
        }
    }
}

pub fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn split_params(params: &[String]) -> CliResult<Vec<(String, String)>> {
    params
        .iter()
        .map(|p| {
            p.split_once('=')
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .ok_or_else(|| Failure::Input(format!("parameter `{p}` is not key=value")))
        })
        .collect()
}

fn generated(name: &str, params: &[String]) -> CliResult<String> {
    let spec = DomainSpec::from_params(name, &split_params(params)?)
        .map_err(|e| Failure::Input(format!("{e} (domains: {})", DOMAIN_NAMES.join(", "))))?;
    generate(spec).map_err(input_error)
}

pub fn load_domain(src: &str) -> CliResult<Domain> {
    nadl::load(src).map_err(input_error)
}

fn load_input(input: &Input) -> CliResult<Domain> {
    let src = match (&input.domain, &input.generator) {
        (Some(path), _) => read(path)?,
        (None, Some(name)) => generated(name, &input.params)?,
        (None, None) => unreachable!("clap requires an input"),
    };
    load_domain(&src)
}

pub fn build(d: &Domain, mode: PartitionMode) -> CliResult<TransitionSystem> {
    TransitionSystem::build(d, mode).map_err(|e| Failure::Planning(e.to_string()))
}

fn run_gen(domain: &str, params: &[String], output: Option<&Path>) -> CliResult<()> {
    let text = generated(domain, params)?;
    match output {
        Some(path) => write(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run_plan(args: &PlanArgs) -> CliResult<()> {
    let d = load_input(&args.input)?;
    let start_state = args
        .start
        .as_deref()
        .map(|s| parse_state(s, &d.vars))
        .transpose()
        .map_err(input_error)?;
    let started = Instant::now();
    let mut ts = build(&d, args.encoding.mode())?;
    let algorithm = match args.algorithm {
        AlgorithmArg::Strong => Algorithm::Strong,
        AlgorithmArg::StrongCyclic => Algorithm::StrongCyclic,
        AlgorithmArg::Optimistic | AlgorithmArg::Deterministic => Algorithm::Optimistic,
    };
    let opts = PlanOptions {
        max_iterations: args.max_iterations,
    };
    let planning = |e: uniplan::encode::EncodeError| Failure::Planning(e.to_string());
    let outcome = plan::plan(&mut ts, algorithm, opts).map_err(planning)?;
    let p = outcome.plan();

    if args.stats {
        println!("state_bits {}", ts.enc.state_bits());
        println!("bdd_vars {}", ts.enc.num_vars);
        println!("partitions {}", ts.partitions.len());
        for (k, s) in p.stats.iter().enumerate() {
            let new = s
                .new_states
                .map_or("overflow".to_string(), |n| n.to_string());
            println!(
                "iter {} new_states {new} plan_nodes {}",
                k + 1,
                s.plan_nodes
            );
        }
        println!("time_ms {}", started.elapsed().as_millis());
    }
    if let Some(path) = &args.output {
        write(path, &write_plan(&ts, &outcome).map_err(planning)?)?;
    }
    let PlanOutcome::Success(p) = &outcome else {
        let PlanOutcome::Failure { reason, .. } = &outcome else {
            unreachable!()
        };
        return Err(Failure::Planning(reason.to_string()));
    };

    let covered = states_of(&mut ts, p.sa).map_err(planning)?;
    let covered = count_states(&ts, covered).map_or("overflow".to_string(), |n| n.to_string());
    let mut summary = format!(
        "SUCCESS iterations={} plan_nodes={} covered_states={covered}",
        p.iterations,
        ts.mgr.node_count(p.sa)
    );

    if args.algorithm == AlgorithmArg::Deterministic {
        let start = match start_state {
            Some(s) => s,
            None => first_state(&ts, ts.init)
                .ok_or_else(|| Failure::Planning("no initial state".into()))?,
        };
        let steps = sequential_plan(&mut ts, p.sa, &start, args.max_steps)
            .map_err(|e| Failure::Planning(e.to_string()))?;
        for (k, step) in steps.iter().enumerate() {
            let action = format_joint_action(&name_joint_action(&ts.enc, &step.action));
            println!(
                "step {} {action} -> {}",
                k + 1,
                format_state(&step.state, &d.vars)
            );
        }
        summary.push_str(&format!(" length={}", steps.len()));
    }
    println!("{summary}");
    Ok(())
}

/// Lexicographically first state in `set`.
fn first_state(ts: &TransitionSystem, set: uniplan::bdd::NodeRef) -> Option<Vec<u64>> {
    let cur = ts.enc.cur_vars();
    let item = ts.mgr.enumerate_sat(set, &cur).ok()?.next()?;
    Some(ts.enc.decode_state(&ts.enc.scatter(&cur, &item), false))
}

pub fn format_joint_action(named: &[(String, String)]) -> String {
    let parts: Vec<String> = named
        .iter()
        .map(|(agent, action)| format!("{agent}={action}"))
        .collect();
    parts.join(" ")
}

fn run_query(path: &Path, state: &str) -> CliResult<()> {
    let mut pf = PlanFile::parse(&read(path)?).map_err(input_error)?;
    let state = parse_state(state, &pf.vars).map_err(input_error)?;
    let advice = pf
        .query(&state)
        .map_err(|e| Failure::Planning(e.to_string()))?;
    for joint in advice {
        println!("{}", format_joint_action(&joint));
    }
    Ok(())
}

fn run_stats(input: &Input, encoding: &EncodingArgs) -> CliResult<()> {
    let d = load_input(input)?;
    let started = Instant::now();
    let mut ts = build(&d, encoding.mode())?;
    let count = |n: Option<u128>| n.map_or("overflow".to_string(), |n| n.to_string());
    println!("state_vars {}", d.vars.len());
    println!("state_bits {}", ts.enc.state_bits());
    println!("sys_action_bits {}", ts.enc.sys_action_vars().len());
    println!("env_action_bits {}", ts.enc.env_action_vars().len());
    println!("bdd_vars {}", ts.enc.num_vars);
    println!("states {}", count(d.state_count()));
    println!("init_states {}", count(count_states(&ts, ts.init)));
    println!("goal_states {}", count(count_states(&ts, ts.goal)));
    println!("basic_partitions {}", ts.basic.len());
    println!("partitions {}", ts.partitions.len());
    for (k, part) in ts.partitions.iter().enumerate() {
        println!(
            "partition {k} nodes {} quantified {}",
            ts.mgr.node_count(part.relation),
            part.quantify.len()
        );
    }
    let rel = ts
        .monolithic_relation()
        .map_err(|e| Failure::Planning(e.to_string()))?;
    println!("relation_nodes {}", ts.mgr.node_count(rel));
    println!("manager_nodes {}", ts.mgr.total_nodes());
    println!("time_ms {}", started.elapsed().as_millis());
    Ok(())
}
