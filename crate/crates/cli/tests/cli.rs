use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const POWER_PLANT_BAD_STATE: &str = "okh1=1,okh2=1,okh3=0,okh4=0,b1=0,b2=0,b3=0,b4=0,\
    okt1=1,okt2=1,okt3=1,okt4=1,s1=0,s2=0,s3=0,s4=0,v1=1,v2=1,v3=1,v4=1,p=1,f=2";

fn uniplan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_uniplan"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Generates `domain` into the temp dir and returns its path.
fn gen(dir: &TempDir, domain: &str, params: &[&str]) -> PathBuf {
    let path = dir.path().join(format!("{domain}.nadl"));
    let mut args = vec!["gen", domain];
    args.extend(params);
    args.extend(["-o", path_str(&path)]);
    assert_eq!(code(&uniplan(&args)), 0);
    path
}

fn plan(domain: &Path, algorithm: &str, out: &Path) -> Output {
    uniplan(&[
        "plan",
        path_str(domain),
        "-a",
        algorithm,
        "-o",
        path_str(out),
    ])
}

#[test]
fn robot_baby_verdicts_and_queries() {
    let dir = TempDir::new().unwrap();
    let d = gen(&dir, "robot-baby", &[]);
    let plan_file = dir.path().join("rb.plan");

    let strong = plan(&d, "strong", &plan_file);
    assert_eq!(code(&strong), 1);
    assert_eq!(stdout(&strong).trim(), "No strong plan exists");
    assert!(std::fs::read_to_string(&plan_file)
        .unwrap()
        .contains("outcome failure No strong plan exists"));

    let optimistic = plan(&d, "optimistic", &plan_file);
    assert_eq!(code(&optimistic), 0);
    assert!(
        stdout(&optimistic).starts_with("SUCCESS iterations=3 plan_nodes="),
        "{}",
        stdout(&optimistic)
    );

    let query = |state: &str| uniplan(&["query", path_str(&plan_file), "-s", state]);
    let q = query("pos=0,robot_works=true");
    assert_eq!(
        (code(&q), stdout(&q)),
        (0, "Robot=Lift-Block\n".to_string())
    );
    // a goal state and an uncovered dead end
    for state in ["pos=3,robot_works=true", "pos=0,robot_works=false"] {
        let q = query(state);
        assert_eq!((code(&q), stdout(&q)), (0, String::new()), "{state}");
    }
    assert_eq!(code(&query("pos=0")), 2);
    assert_eq!(code(&query("pos=0,robot_works=true,speed=1")), 2);
}

#[test]
fn power_plant_single_iteration_and_bad_state_query() {
    let dir = TempDir::new().unwrap();
    let d = gen(&dir, "power-plant", &["heat=4", "turbines=4"]);
    let plan_file = dir.path().join("pp.plan");
    let out = uniplan(&[
        "plan",
        path_str(&d),
        "-a",
        "optimistic",
        "--stats",
        "-o",
        path_str(&plan_file),
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("\nSUCCESS iterations=1 "), "{text}");
    assert!(
        text.lines()
            .any(|l| l.starts_with("iter 1 new_states ") && l.contains(" plan_nodes ")),
        "{text}"
    );
    assert!(text.contains("state_bits 24\n"));

    let q = uniplan(&["query", path_str(&plan_file), "-s", POWER_PLANT_BAD_STATE]);
    assert_eq!(code(&q), 0);
    let lines: Vec<String> = stdout(&q).lines().map(String::from).collect();
    assert_eq!(lines.len(), 1);
    let active: Vec<&str> = lines[0]
        .split(' ')
        .filter(|a| !a.contains("=Idle"))
        .collect();
    assert_eq!(active, ["H3=Block3", "H4=Block4", "Reactor=Set2"]);
}

#[test]
fn exhaustive_simulation_reports_plan_lengths() {
    let dir = TempDir::new().unwrap();
    let d = gen(&dir, "domain1", &["n=5"]);
    let plan_file = dir.path().join("d1.plan");
    assert_eq!(code(&plan(&d, "optimistic", &plan_file)), 0);
    let out = uniplan(&[
        "simulate",
        path_str(&plan_file),
        path_str(&d),
        "-s",
        "pos=0",
        "--exhaustive",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "best 1\nworst ∞\n");
}

#[test]
fn deterministic_gripper_traces() {
    let dir = TempDir::new().unwrap();
    let d = gen(&dir, "gripper", &["problem=1"]);
    let plan_file = dir.path().join("g.plan");
    let out = plan(&d, "deterministic", &plan_file);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.starts_with("step ")).count(), 11);
    assert!(text.trim_end().ends_with("length=11"), "{text}");

    let start = "robby=0,ball1=0,ball2=0,ball3=0,ball4=0";
    let sim = uniplan(&[
        "simulate",
        path_str(&plan_file),
        path_str(&d),
        "-s",
        start,
        "--seed",
        "7",
    ]);
    assert_eq!(code(&sim), 0);
    let text = stdout(&sim);
    assert!(text.starts_with("seed 7\n"));
    assert_eq!(text.lines().filter(|l| l.starts_with("step ")).count(), 11);
    assert!(text.ends_with("GOAL steps=11\n"));

    let goal = "robby=0,ball1=1,ball2=1,ball3=1,ball4=1";
    let sim = uniplan(&["simulate", path_str(&plan_file), path_str(&d), "-s", goal]);
    assert_eq!(
        (code(&sim), stdout(&sim)),
        (0, "seed 0\nGOAL steps=0\n".to_string())
    );
}

#[test]
fn random_simulation_is_reproducible_and_reports_gaps() {
    let dir = TempDir::new().unwrap();
    let d = gen(&dir, "beam-walk", &["n=6"]);
    let plan_file = dir.path().join("bw.plan");
    assert_eq!(code(&plan(&d, "strong-cyclic", &plan_file)), 0);
    let run = |seed: &str| {
        uniplan(&[
            "simulate",
            path_str(&plan_file),
            path_str(&d),
            "-s",
            "pos=0,up=true",
            "--seed",
            seed,
        ])
    };
    let (a, b) = (run("5"), run("5"));
    assert_eq!(code(&a), 0);
    assert_eq!(stdout(&a), stdout(&b));

    let rb = gen(&dir, "robot-baby", &[]);
    let rb_plan = dir.path().join("rb.plan");
    assert_eq!(code(&plan(&rb, "optimistic", &rb_plan)), 0);
    // pos=2 with a working robot: one lift reaches the goal either way
    let ok = uniplan(&[
        "simulate",
        path_str(&rb_plan),
        path_str(&rb),
        "-s",
        "pos=2,robot_works=1",
    ]);
    assert!(stdout(&ok).ends_with("GOAL steps=1\n"));
    let gap = uniplan(&[
        "simulate",
        path_str(&rb_plan),
        path_str(&rb),
        "-s",
        "pos=1,robot_works=0",
    ]);
    assert_eq!(code(&gap), 1);
    assert!(
        stdout(&gap).contains("coverage gap at pos=1,robot_works=false"),
        "{}",
        stdout(&gap)
    );
    // a plan for another domain
    let wrong = uniplan(&[
        "simulate",
        path_str(&plan_file),
        path_str(&rb),
        "-s",
        "pos=0,robot_works=1",
    ]);
    assert_eq!(code(&wrong), 2);
}

#[test]
fn exit_codes_by_failure_class() {
    let dir = TempDir::new().unwrap();
    let missing = dir.path().join("missing.nadl");
    assert_eq!(
        code(&uniplan(&["plan", path_str(&missing), "-a", "strong"])),
        3
    );

    let bad = dir.path().join("bad.nadl");
    std::fs::write(&bad, "variables\n  bool p\nsystem\ninitially p\ngoal p\n").unwrap();
    let out = uniplan(&["plan", path_str(&bad), "-a", "strong"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("ERROR 4:1 no-system-agent"));

    assert_eq!(code(&uniplan(&["gen", "logistics"])), 2);
    assert_eq!(code(&uniplan(&["gen", "beam-walk", "n=1"])), 2);
    assert_eq!(
        code(&uniplan(&[
            "plan",
            "--gen",
            "beam-walk",
            "--param",
            "n=4",
            "-a",
            "strong"
        ])),
        1
    );
    let garbage = dir.path().join("garbage.plan");
    std::fs::write(&garbage, "not a plan\n").unwrap();
    assert_eq!(
        code(&uniplan(&["query", path_str(&garbage), "-s", "x=1"])),
        2
    );
}

#[test]
fn partition_modes_give_the_same_plan_file() {
    let dir = TempDir::new().unwrap();
    let d = gen(&dir, "soccer", &["width=3", "height=2", "players=2"]);
    let mut texts = Vec::new();
    for mode in [&["--monolithic"][..], &["-p", "1"], &["-p", "10"]] {
        let out = dir.path().join("s.plan");
        let mut args = vec![
            "plan",
            path_str(&d),
            "-a",
            "optimistic",
            "-o",
            path_str(&out),
        ];
        args.extend(mode);
        uniplan(&args);
        texts.push(std::fs::read_to_string(&out).unwrap());
    }
    assert!(texts.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn stats_lines() {
    let out = uniplan(&["stats", "--gen", "gripper", "--param", "problem=1"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    for key in [
        "state_bits 9",
        "states 512",
        "init_states 1",
        "goal_states 2",
        "basic_partitions 5",
    ] {
        assert!(text.lines().any(|l| l == key), "{key}\n{text}");
    }
}
