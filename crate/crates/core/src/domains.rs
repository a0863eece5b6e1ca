//! Generators for the benchmark domains, emitting NADL text.

use std::fmt::Write as _;

use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DomainSpec {
    RobotBaby,
    /// Beam of `n` positions.
    BeamWalk {
        n: u64,
    },
    /// Positions `0..=n`, deterministic solid chain plus a looping dashed shortcut.
    Domain1 {
        n: u64,
    },
    /// As [`DomainSpec::Domain1`] with non-deterministic solid steps and a
    /// dead end reachable through the dashed shortcut.
    Domain2 {
        n: u64,
    },
    /// AIPS'98 gripper problem number; problem `k` has `4 + 2(k-1)` balls.
    Gripper {
        problem: u64,
    },
    /// Movie domain with `objects` items of every food type.
    Movie {
        objects: u64,
    },
    PowerPlant {
        heat_exchangers: u64,
        turbines: u64,
    },
    /// `players` attackers against as many defenders on a `width × height` field.
    Soccer {
        width: u64,
        height: u64,
        players: u64,
    },
    /// Robot on an 8×4 grid with `obstacles` static obstacles.
    Obstacle {
        obstacles: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("unknown domain `{0}`")]
    UnknownDomain(String),
    #[error("unknown parameter `{param}` for domain `{domain}`")]
    UnknownParam { domain: &'static str, param: String },
    #[error("parameter `{0}` is not a number")]
    BadNumber(String),
    #[error("invalid parameters: {0}")]
    Invalid(String),
}

pub const DOMAIN_NAMES: &[&str] = &[
    "robot-baby",
    "beam-walk",
    "domain1",
    "domain2",
    "gripper",
    "movie",
    "power-plant",
    "soccer",
    "obstacle",
];

impl DomainSpec {
    /// Builds a spec from a domain name and `key=value` parameters; missing
    /// parameters take small defaults.
    pub fn from_params(name: &str, params: &[(String, String)]) -> Result<Self, GenError> {
        let (canonical, keys): (&'static str, &[(&str, u64)]) = match name {
            "robot-baby" => ("robot-baby", &[]),
            "beam-walk" => ("beam-walk", &[("n", 4)]),
            "domain1" => ("domain1", &[("n", 5)]),
            "domain2" => ("domain2", &[("n", 5)]),
            "gripper" => ("gripper", &[("problem", 1)]),
            "movie" => ("movie", &[("objects", 5)]),
            "power-plant" => ("power-plant", &[("heat", 4), ("turbines", 4)]),
            "soccer" => ("soccer", &[("width", 4), ("height", 3), ("players", 1)]),
            "obstacle" => ("obstacle", &[("obstacles", 1)]),
            other => return Err(GenError::UnknownDomain(other.to_string())),
        };
        let mut values: Vec<u64> = keys.iter().map(|k| k.1).collect();
        for (k, v) in params {
            let i = keys.iter().position(|(name, _)| name == k).ok_or_else(|| {
                GenError::UnknownParam {
                    domain: canonical,
                    param: k.clone(),
                }
            })?;
            values[i] = v.parse().map_err(|_| GenError::BadNumber(k.clone()))?;
        }
        let spec = match canonical {
            "robot-baby" => DomainSpec::RobotBaby,
            "beam-walk" => DomainSpec::BeamWalk { n: values[0] },
            "domain1" => DomainSpec::Domain1 { n: values[0] },
            "domain2" => DomainSpec::Domain2 { n: values[0] },
            "gripper" => DomainSpec::Gripper { problem: values[0] },
            "movie" => DomainSpec::Movie { objects: values[0] },
            "power-plant" => DomainSpec::PowerPlant {
                heat_exchangers: values[0],
                turbines: values[1],
            },
            "soccer" => DomainSpec::Soccer {
                width: values[0],
                height: values[1],
                players: values[2],
            },
            _ => DomainSpec::Obstacle {
                obstacles: values[0],
            },
        };
        Ok(spec)
    }

    pub fn name(&self) -> &'static str {
        match self {
            DomainSpec::RobotBaby => "robot-baby",
            DomainSpec::BeamWalk { .. } => "beam-walk",
            DomainSpec::Domain1 { .. } => "domain1",
            DomainSpec::Domain2 { .. } => "domain2",
            DomainSpec::Gripper { .. } => "gripper",
            DomainSpec::Movie { .. } => "movie",
            DomainSpec::PowerPlant { .. } => "power-plant",
            DomainSpec::Soccer { .. } => "soccer",
            DomainSpec::Obstacle { .. } => "obstacle",
        }
    }
}

fn invalid(msg: &str) -> GenError {
    GenError::Invalid(msg.to_string())
}

/// NADL text for `spec`.
pub fn generate(spec: DomainSpec) -> Result<String, GenError> {
    match spec {
        DomainSpec::RobotBaby => Ok(ROBOT_BABY.to_string()),
        DomainSpec::BeamWalk { n } if n >= 2 => Ok(beam_walk(n)),
        DomainSpec::Domain1 { n } if n >= 2 => Ok(domain1(n)),
        DomainSpec::Domain2 { n } if n >= 2 => Ok(domain2(n)),
        DomainSpec::Gripper { problem } if problem >= 1 => Ok(gripper(4 + 2 * (problem - 1))),
        DomainSpec::Movie { objects } if objects >= 1 => Ok(movie(objects)),
        DomainSpec::PowerPlant {
            heat_exchangers: h,
            turbines: t,
        } if h >= 1 && t >= 1 => Ok(power_plant(h, t)),
        DomainSpec::Soccer {
            width,
            height,
            players,
        } if width >= 2 && height >= 1 && players >= 1 => Ok(soccer(width, height, players)),
        DomainSpec::Obstacle { obstacles } if obstacles >= 1 => Ok(obstacle(obstacles)),
        DomainSpec::BeamWalk { .. } | DomainSpec::Domain1 { .. } | DomainSpec::Domain2 { .. } => {
            Err(invalid("n must be at least 2"))
        }
        DomainSpec::Soccer { .. } => Err(invalid(
            "soccer needs width >= 2, height >= 1, players >= 1",
        )),
        _ => Err(invalid("parameters must be positive")),
    }
}

pub const ROBOT_BABY: &str = "\
variables
  nat(4) pos
  bool robot_works
system
  agt: Robot
    Lift-Block
      con: pos
      pre: pos < 3
      eff: robot_works -> pos' = pos + 1, pos' = pos
    Lower-Block
      con: pos
      pre: pos > 0
      eff: robot_works -> pos' = pos - 1, pos' = pos
environment
  agt: Baby
    Hit-Robot
      con: robot_works
      pre: true
      eff: ~robot_works => ~robot_works'
initially
  pos = 0 /\\ robot_works
goal
  pos = 3
";

fn beam_walk(n: u64) -> String {
    format!(
        "\
% beam walk with {n} positions; a step on the beam may end on the ground
% below the next position, and the way back leads to the ladder at 0
variables
  nat({n}) pos
  bool up
system
  agt: Walker
    Walk
      con: pos, up
      pre: ~up \\/ pos < {last}
      eff: up -> pos' = pos + 1,
           (pos = 0 -> up' /\\ pos' = 0, ~up' /\\ pos' = pos - 1)
initially
  up /\\ pos = 0
goal
  up /\\ pos = {last}
",
        last = n - 1
    )
}

fn domain1(n: u64) -> String {
    format!(
        "\
% states 0..{n}; solid steps forward, dashed jumps to the goal or stays put
variables
  nat({size}) pos
system
  agt: Agent
    Solid
      con: pos
      pre: pos < {n}
      eff: pos' = pos + 1
    Dashed
      con: pos
      pre: pos = 0
      eff: pos' = 0 \\/ pos' = {n}
initially
  pos = 0
goal
  pos = {n}
",
        size = n + 1
    )
}

fn domain2(n: u64) -> String {
    format!(
        "\
% states 0..{n} plus the dead end {dead}; solid may fail to advance
variables
  nat({size}) pos
system
  agt: Agent
    Solid
      con: pos
      pre: pos < {n}
      eff: pos' = pos \\/ pos' = pos + 1
    Dashed
      con: pos
      pre: pos = 0
      eff: pos' = 0 \\/ pos' = {n} \\/ pos' = {dead}
initially
  pos = 0
goal
  pos = {n}
",
        dead = n + 1,
        size = n + 2
    )
}

fn gripper(balls: u64) -> String {
    // room: 0 = A, 1 = B; ball position adds 2 = left gripper, 3 = right gripper
    let mut s = format!("% gripper with {balls} balls\nvariables\n  nat(2) robby\n");
    for i in 1..=balls {
        writeln!(s, "  nat(4) ball{i}").unwrap();
    }
    s.push_str("system\n  agt: Robot\n    Move\n      con: robby\n      pre: true\n      eff: robby' != robby\n");
    let free = |g: u64| {
        (1..=balls)
            .map(|j| format!("ball{j} != {g}"))
            .collect::<Vec<_>>()
            .join(" /\\ ")
    };
    for i in 1..=balls {
        for (side, g) in [("Left", 2), ("Right", 3)] {
            writeln!(
                s,
                "    Pick{side}{i}\n      con: ball{i}\n      pre: ball{i} = robby /\\ {}\n      eff: ball{i}' = {g}",
                free(g)
            )
            .unwrap();
        }
        writeln!(
            s,
            "    Drop{i}\n      con: ball{i}\n      pre: ball{i} >= 2\n      eff: ball{i}' = robby"
        )
        .unwrap();
    }
    let all = |room: u64| {
        (1..=balls)
            .map(|j| format!("ball{j} = {room}"))
            .collect::<Vec<_>>()
            .join(" /\\ ")
    };
    writeln!(
        s,
        "initially\n  robby = 0 /\\ {}\ngoal\n  {}",
        all(0),
        all(1)
    )
    .unwrap();
    s
}

const FOODS: [&str; 5] = ["chips", "dip", "pop", "cheese", "crackers"];

fn movie(objects: u64) -> String {
    let mut s = format!(
        "% movie domain, {objects} objects of each food\nvariables\n  bool rewound counter_zero\n"
    );
    for f in FOODS {
        writeln!(s, "  nat({}) {f}", objects + 1).unwrap();
    }
    s.push_str(
        "\
system
  agt: Watcher
    Rewind
      con: rewound, counter_zero
      pre: true
      eff: rewound' /\\ ~counter_zero'
    ResetCounter
      con: counter_zero
      pre: true
      eff: rewound -> counter_zero', counter_zero' <=> counter_zero
",
    );
    for f in FOODS {
        let cap = |c: &str| c[..1].to_uppercase() + &c[1..];
        writeln!(
            s,
            "    Get{}\n      con: {f}\n      pre: {f} < {objects}\n      eff: {f}' = {f} + 1",
            cap(f)
        )
        .unwrap();
    }
    let zero: Vec<String> = FOODS.iter().map(|f| format!("{f} = 0")).collect();
    let have: Vec<String> = FOODS.iter().map(|f| format!("{f} > 0")).collect();
    writeln!(
        s,
        "initially\n  ~rewound /\\ ~counter_zero /\\ {}\ngoal\n  rewound /\\ counter_zero /\\ {}",
        zero.join(" /\\ "),
        have.join(" /\\ ")
    )
    .unwrap();
    s
}

fn power_plant(h: u64, t: u64) -> String {
    let hs: Vec<u64> = (1..=h).collect();
    let ts: Vec<u64> = (1..=t).collect();
    let join = |parts: Vec<String>, sep: &str| parts.join(sep);
    let mut s = String::from("variables\n");
    for i in &hs {
        writeln!(s, "  bool okh{i} b{i}").unwrap();
    }
    for i in &ts {
        writeln!(s, "  bool okt{i} s{i} v{i}").unwrap();
    }
    s.push_str("  nat(4) p f\nsystem\n");
    for i in &hs {
        writeln!(
            s,
            "  agt: H{i}\n    IdleH{i}\n      con:\n      pre: true\n      eff: true\n    Block{i}\n      con: b{i}\n      pre: ~okh{i} /\\ ~b{i}\n      eff: b{i}'"
        )
        .unwrap();
    }
    for i in &ts {
        writeln!(
            s,
            "  agt: T{i}\n    IdleT{i}\n      con:\n      pre: true\n      eff: true\n    \
             Stop{i}\n      con: s{i}\n      pre: ~okt{i} /\\ ~s{i}\n      eff: s{i}'\n    \
             Open{i}\n      con: v{i}\n      pre: okt{i} /\\ ~v{i}\n      eff: v{i}'"
        )
        .unwrap();
    }
    s.push_str("  agt: Reactor\n");
    for k in 1..=3 {
        writeln!(
            s,
            "    Set{k}\n      con: p\n      pre: true\n      eff: p' = {k}"
        )
        .unwrap();
    }
    let oks: Vec<String> = hs
        .iter()
        .map(|i| format!("okh{i}"))
        .chain(ts.iter().map(|i| format!("okt{i}")))
        .collect();
    let keep: Vec<String> = oks.iter().map(|v| format!("(~{v} => ~{v}')")).collect();
    writeln!(
        s,
        "environment\n  agt: Failures\n    Fail\n      con: {}\n      pre: true\n      eff: {}",
        oks.join(", "),
        join(keep, " /\\\n           ")
    )
    .unwrap();

    let safety = join(
        vec![
            format!(
                "({})",
                join(hs.iter().map(|i| format!("okh{i}")).collect(), " \\/ ")
            ),
            format!(
                "({})",
                join(ts.iter().map(|i| format!("okt{i}")).collect(), " \\/ ")
            ),
        ]
        .into_iter()
        .chain(hs.iter().map(|i| format!("(~okh{i} => b{i})")))
        .chain(ts.iter().map(|i| format!("(~okt{i} => s{i})")))
        .collect(),
        " /\\\n  ",
    );
    let activity = join(
        std::iter::once("p = f".to_string())
            .chain(ts.iter().map(|i| format!("(okt{i} => v{i})")))
            .collect(),
        " /\\\n  ",
    );
    let failed = format!(
        "({}) \\/ ({})",
        join(hs.iter().map(|i| format!("~okh{i}")).collect(), " /\\ "),
        join(ts.iter().map(|i| format!("~okt{i}")).collect(), " /\\ ")
    );
    let good = format!(
        "{} /\\ {}",
        safety.replace('\n', " "),
        activity.replace('\n', " ")
    );
    writeln!(
        s,
        "initially\n  % bad: neither good nor failed, with a positive demand\n  \
         ~({good}) /\\ ~({failed}) /\\ f > 0\ngoal\n  % safety\n  {safety} /\\\n  % activity\n  {activity}",
    )
    .unwrap();
    s
}

fn soccer(w: u64, h: u64, players: u64) -> String {
    let mut s = format!("% soccer on a {w}x{h} field, {players} against {players}\nvariables\n");
    for i in 1..=players {
        writeln!(s, "  nat({w}) ax{i} dx{i}\n  nat({h}) ay{i} dy{i}").unwrap();
    }
    let passing = players > 1;
    if passing {
        writeln!(s, "  nat({}) carrier", players + 1).unwrap();
    }
    let moves = |s: &mut String, x: &str, y: &str| {
        let dirs = [
            (
                "North",
                y,
                format!("{y} < {}", h - 1),
                format!("{y}' = {y} + 1"),
            ),
            ("South", y, format!("{y} > 0"), format!("{y}' = {y} - 1")),
            (
                "East",
                x,
                format!("{x} < {}", w - 1),
                format!("{x}' = {x} + 1"),
            ),
            ("West", x, format!("{x} > 0"), format!("{x}' = {x} - 1")),
        ];
        for (name, var, pre, eff) in dirs {
            if pre.ends_with("< 0") {
                continue;
            }
            writeln!(
                s,
                "    {name}\n      con: {var}\n      pre: {pre}\n      eff: {eff}"
            )
            .unwrap();
        }
    };
    s.push_str("system\n");
    for i in 1..=players {
        writeln!(s, "  agt: Attacker{i}").unwrap();
        moves(&mut s, &format!("ax{i}"), &format!("ay{i}"));
        for j in (1..=players).filter(|&j| j != i) {
            writeln!(s, "    PassTo{j}\n      con: carrier\n      pre: carrier = {i}\n      eff: carrier' = {j}").unwrap();
        }
    }
    s.push_str("environment\n");
    for i in 1..=players {
        writeln!(s, "  agt: Defender{i}").unwrap();
        moves(&mut s, &format!("dx{i}"), &format!("dy{i}"));
    }
    // goal area: the middle cells of the right edge
    let mid: Vec<u64> = if h.is_multiple_of(2) && h > 1 {
        vec![h / 2 - 1, h / 2]
    } else {
        vec![h / 2]
    };
    let in_area = |x: &str, y: &str| {
        let rows: Vec<String> = mid.iter().map(|r| format!("{y} = {r}")).collect();
        format!("({x} = {} /\\ ({}))", w - 1, rows.join(" \\/ "))
    };
    let scorer: Vec<String> = (1..=players)
        .map(|i| {
            let at = in_area(&format!("ax{i}"), &format!("ay{i}"));
            if passing {
                format!("(carrier = {i} /\\ {at})")
            } else {
                at
            }
        })
        .collect();
    let clear: Vec<String> = (1..=players)
        .map(|i| format!("~{}", in_area(&format!("dx{i}"), &format!("dy{i}"))))
        .collect();
    let goal = format!("({}) /\\ {}", scorer.join(" \\/ "), clear.join(" /\\ "));
    let valid_carrier = if passing {
        "carrier > 0 /\\ ".to_string()
    } else {
        String::new()
    };
    writeln!(s, "initially\n  {valid_carrier}~({goal})\ngoal\n  {goal}").unwrap();
    s
}

fn obstacle(n: u64) -> String {
    let mut s = format!("% 8x4 grid, {n} static obstacles at unknown positions\nvariables\n  nat(8) rx\n  nat(4) ry\n");
    for k in 1..=n {
        writeln!(s, "  nat(8) ox{k}\n  nat(4) oy{k}").unwrap();
    }
    let free = |x: &str, y: &str| {
        (1..=n)
            .map(|k| format!("~(ox{k} = {x} /\\ oy{k} = {y})"))
            .collect::<Vec<_>>()
            .join(" /\\ ")
    };
    s.push_str("system\n  agt: Robot\n");
    let dirs = [
        (
            "North",
            "ry",
            "ry < 3",
            free("rx", "ry + 1"),
            "ry' = ry + 1",
        ),
        (
            "South",
            "ry",
            "ry > 0",
            free("rx", "ry - 1"),
            "ry' = ry - 1",
        ),
        ("East", "rx", "rx < 7", free("rx + 1", "ry"), "rx' = rx + 1"),
        ("West", "rx", "rx > 0", free("rx - 1", "ry"), "rx' = rx - 1"),
    ];
    for (name, var, bound, clear, eff) in dirs {
        writeln!(
            s,
            "    {name}\n      con: {var}\n      pre: {bound} /\\ {clear}\n      eff: {eff}"
        )
        .unwrap();
    }
    s.push_str("initially\n  ~(rx = 7 /\\ ry = 3)\ngoal\n  rx = 7 /\\ ry = 3\n");
    s
}
