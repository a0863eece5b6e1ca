use std::fmt;

use super::ast::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ViolationKind {
    NoSystemAgent,
    EmptyAgent,
    Overlap,
    PrimedInStateFormula,
    PrimedOutsideCon,
    RangeTooSmall,
    UnsupportedOperator,
}

impl ViolationKind {
    pub fn code(self) -> &'static str {
        match self {
            ViolationKind::NoSystemAgent => "no-system-agent",
            ViolationKind::EmptyAgent => "empty-agent",
            ViolationKind::Overlap => "overlap",
            ViolationKind::PrimedInStateFormula => "primed-in-state-formula",
            ViolationKind::PrimedOutsideCon => "primed-outside-con",
            ViolationKind::RangeTooSmall => "range-too-small",
            ViolationKind::UnsupportedOperator => "unsupported-operator",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub pos: Pos,
    pub kind: ViolationKind,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ERROR {} {} {}",
            self.pos,
            self.kind.code(),
            self.message
        )
    }
}

/// Checks every well-formedness rule that the grammar alone does not
/// enforce. All violations are reported, ordered by position.
pub fn validate(d: &Domain) -> Result<(), Vec<Violation>> {
    let mut out = Vec::new();
    let mut report = |pos, kind, message: String| out.push(Violation { pos, kind, message });

    for v in &d.vars {
        if let VarKind::Nat(k) = v.kind {
            if k < 2 {
                report(
                    v.pos,
                    ViolationKind::RangeTooSmall,
                    format!("`{}` needs at least 2 values, declared nat({k})", v.name),
                );
            }
        }
    }
    if d.system.is_empty() {
        report(
            d.init_pos,
            ViolationKind::NoSystemAgent,
            "the domain declares no system agent".into(),
        );
    }

    let check_state_formula =
        |f: &Formula, what: &str, report: &mut dyn FnMut(Pos, ViolationKind, String)| {
            f.visit_vars(&mut |r| {
                if r.primed {
                    report(
                        r.pos,
                        ViolationKind::PrimedInStateFormula,
                        format!("{what} refers to next-state `{}'`", d.vars[r.var].name),
                    );
                }
            });
            f.visit_arith_ops(&mut |op, pos| {
                if !matches!(op, ArithOp::Add | ArithOp::Sub) {
                    report(
                        pos,
                        ViolationKind::UnsupportedOperator,
                        format!("arithmetic operator `{}` is not supported", op.symbol()),
                    );
                }
            });
        };

    for (agent, _) in d.agents() {
        if agent.actions.is_empty() {
            report(
                agent.pos,
                ViolationKind::EmptyAgent,
                format!("agent `{}` has no actions", agent.name),
            );
        }
        for a in &agent.actions {
            check_state_formula(
                &a.pre,
                &format!("precondition of `{}`", a.name),
                &mut report,
            );
            a.eff.visit_vars(&mut |r| {
                if r.primed && !a.con.contains(&r.var) {
                    let name = &d.vars[r.var].name;
                    report(
                        r.pos,
                        ViolationKind::PrimedOutsideCon,
                        format!(
                            "primed variable `{name}'` is outside the constrained set of `{}`",
                            a.name
                        ),
                    );
                }
            });
            a.eff.visit_arith_ops(&mut |op, pos| {
                if !matches!(op, ArithOp::Add | ArithOp::Sub) {
                    report(
                        pos,
                        ViolationKind::UnsupportedOperator,
                        format!("arithmetic operator `{}` is not supported", op.symbol()),
                    );
                }
            });
        }
    }
    check_state_formula(&d.init, "initial condition", &mut report);
    check_state_formula(&d.goal, "goal condition", &mut report);

    let constrained = |agents: &[Agent]| {
        let mut set = vec![false; d.vars.len()];
        for a in agents.iter().flat_map(|g| &g.actions) {
            for &v in &a.con {
                set[v] = true;
            }
        }
        set
    };
    let sys = constrained(&d.system);
    for a in d.environment.iter().flat_map(|g| &g.actions) {
        for &v in &a.con {
            if sys[v] {
                report(
                    a.pos,
                    ViolationKind::Overlap,
                    format!(
                        "`{}` is constrained by both system and environment actions (`{}`)",
                        d.vars[v].name, a.name
                    ),
                );
            }
        }
    }

    out.sort_by_key(|v| (v.pos, v.kind));
    out.dedup();
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}
