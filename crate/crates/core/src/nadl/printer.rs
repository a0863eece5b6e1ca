use std::fmt::Write as _;

use super::ast::*;

/// Renders a domain back to NADL text that parses to the same tree.
pub fn print_domain(d: &Domain) -> String {
    let mut out = String::from("variables\n");
    for v in &d.vars {
        match v.kind {
            VarKind::Bool => writeln!(out, "  bool {}", v.name),
            VarKind::Nat(k) => writeln!(out, "  nat({k}) {}", v.name),
        }
        .unwrap();
    }
    let agents = |out: &mut String, agents: &[Agent]| {
        for g in agents {
            writeln!(out, "  agt: {}", g.name).unwrap();
            for a in &g.actions {
                let con: Vec<&str> = a.con.iter().map(|&v| d.vars[v].name.as_str()).collect();
                writeln!(out, "    {}", a.name).unwrap();
                writeln!(out, "      con: {}", con.join(", ")).unwrap();
                writeln!(out, "      pre: {}", print_formula(&a.pre, &d.vars)).unwrap();
                writeln!(out, "      eff: {}", print_formula(&a.eff, &d.vars)).unwrap();
            }
        }
    };
    out.push_str("system\n");
    agents(&mut out, &d.system);
    if !d.environment.is_empty() {
        out.push_str("environment\n");
        agents(&mut out, &d.environment);
    }
    writeln!(out, "initially\n  {}", print_formula(&d.init, &d.vars)).unwrap();
    writeln!(out, "goal\n  {}", print_formula(&d.goal, &d.vars)).unwrap();
    out
}

/// Renders a formula with the fewest parentheses the grammar allows.
pub fn print_formula(f: &Formula, vars: &[VarDecl]) -> String {
    let mut out = String::new();
    formula(&mut out, f, vars, 0);
    out
}

// binding levels, loosest first
const ITE: u8 = 0;
const IFF: u8 = 1;
const IMPLIES: u8 = 2;
const OR: u8 = 3;
const AND: u8 = 4;
const NOT: u8 = 5;

fn level(f: &Formula) -> u8 {
    match f {
        Formula::Ite(..) => ITE,
        Formula::Bin(Conn::Iff, ..) => IFF,
        Formula::Bin(Conn::Implies, ..) => IMPLIES,
        Formula::Bin(Conn::Or, ..) => OR,
        Formula::Bin(Conn::And, ..) => AND,
        _ => NOT,
    }
}

fn var(out: &mut String, r: &VarRef, vars: &[VarDecl]) {
    out.push_str(&vars[r.var].name);
    if r.primed {
        out.push('\'');
    }
}

fn formula(out: &mut String, f: &Formula, vars: &[VarDecl], min: u8) {
    let paren = level(f) < min;
    if paren {
        out.push('(');
    }
    match f {
        Formula::Const(b) => out.push_str(if *b { "true" } else { "false" }),
        Formula::Prop(r) => var(out, r, vars),
        Formula::Rel(op, a, b) => {
            arith(out, a, vars, 1);
            write!(out, " {} ", op.symbol()).unwrap();
            arith(out, b, vars, 1);
        }
        Formula::Not(a) => {
            out.push('~');
            formula(out, a, vars, NOT);
        }
        Formula::Bin(c, a, b) => {
            let (l, r) = match c {
                Conn::Implies => (OR, IMPLIES),
                _ => (level(f), level(f) + 1),
            };
            formula(out, a, vars, l);
            write!(out, " {} ", c.symbol()).unwrap();
            formula(out, b, vars, r);
        }
        Formula::Ite(c, t, e) => {
            formula(out, c, vars, IFF);
            out.push_str(" -> ");
            formula(out, t, vars, ITE);
            out.push_str(", ");
            formula(out, e, vars, ITE);
        }
    }
    if paren {
        out.push(')');
    }
}

fn arith(out: &mut String, a: &Arith, vars: &[VarDecl], min: u8) {
    match a {
        Arith::Num(n) => write!(out, "{n}").unwrap(),
        Arith::Var(r) => var(out, r, vars),
        Arith::Bin(op, l, r, _) => {
            let lvl = if matches!(op, ArithOp::Add | ArithOp::Sub) {
                1
            } else {
                2
            };
            if lvl < min {
                out.push('(');
            }
            arith(out, l, vars, lvl);
            write!(out, " {} ", op.symbol()).unwrap();
            arith(out, r, vars, lvl + 1);
            if lvl < min {
                out.push(')');
            }
        }
    }
}
