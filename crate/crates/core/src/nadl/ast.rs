use std::fmt;

/// 1-based source position.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pos {
    pub line: u32,
    pub col: u32,
}

impl Pos {
    pub fn new(line: u32, col: u32) -> Self {
        Pos { line, col }
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarKind {
    Bool,
    /// `nat(k)`: values `0..k`.
    Nat(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarDecl {
    pub name: String,
    pub kind: VarKind,
    pub pos: Pos,
}

impl VarDecl {
    /// Number of values the variable can take.
    pub fn range(&self) -> u64 {
        match self.kind {
            VarKind::Bool => 2,
            VarKind::Nat(k) => k,
        }
    }

    pub fn is_bool(&self) -> bool {
        self.kind == VarKind::Bool
    }
}

/// Occurrence of a state variable, by index into [`Domain::vars`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VarRef {
    pub var: usize,
    pub primed: bool,
    pub pos: Pos,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Mod,
}

impl ArithOp {
    pub fn symbol(self) -> &'static str {
        match self {
            ArithOp::Add => "+",
            ArithOp::Sub => "-",
            ArithOp::Mul => "*",
            ArithOp::Div => "/",
            ArithOp::Mod => "mod",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Arith {
    Num(u64),
    Var(VarRef),
    Bin(ArithOp, Box<Arith>, Box<Arith>, Pos),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelOp {
    Lt,
    Gt,
    Le,
    Ge,
    Eq,
    Ne,
}

impl RelOp {
    pub fn symbol(self) -> &'static str {
        match self {
            RelOp::Lt => "<",
            RelOp::Gt => ">",
            RelOp::Le => "<=",
            RelOp::Ge => ">=",
            RelOp::Eq => "=",
            RelOp::Ne => "!=",
        }
    }

    pub fn holds<T: Ord>(self, a: T, b: T) -> bool {
        match self {
            RelOp::Lt => a < b,
            RelOp::Gt => a > b,
            RelOp::Le => a <= b,
            RelOp::Ge => a >= b,
            RelOp::Eq => a == b,
            RelOp::Ne => a != b,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Conn {
    And,
    Or,
    Implies,
    Iff,
}

impl Conn {
    pub fn symbol(self) -> &'static str {
        match self {
            Conn::And => "/\\",
            Conn::Or => "\\/",
            Conn::Implies => "=>",
            Conn::Iff => "<=>",
        }
    }

    pub fn holds(self, a: bool, b: bool) -> bool {
        match self {
            Conn::And => a && b,
            Conn::Or => a || b,
            Conn::Implies => !a || b,
            Conn::Iff => a == b,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Formula {
    Const(bool),
    Prop(VarRef),
    Rel(RelOp, Arith, Arith),
    Not(Box<Formula>),
    Bin(Conn, Box<Formula>, Box<Formula>),
    /// `c -> t, e`
    Ite(Box<Formula>, Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::Bin(Conn::And, Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Bin(Conn::Or, Box::new(a), Box::new(b))
    }

    /// Calls `f` on every variable occurrence, arithmetic ones included.
    pub fn visit_vars(&self, f: &mut impl FnMut(VarRef)) {
        match self {
            Formula::Const(_) => {}
            Formula::Prop(v) => f(*v),
            Formula::Rel(_, a, b) => {
                a.visit_vars(f);
                b.visit_vars(f);
            }
            Formula::Not(a) => a.visit_vars(f),
            Formula::Bin(_, a, b) => {
                a.visit_vars(f);
                b.visit_vars(f);
            }
            Formula::Ite(c, t, e) => {
                c.visit_vars(f);
                t.visit_vars(f);
                e.visit_vars(f);
            }
        }
    }

    /// Calls `f` on every arithmetic operator node.
    pub fn visit_arith_ops(&self, f: &mut impl FnMut(ArithOp, Pos)) {
        match self {
            Formula::Const(_) | Formula::Prop(_) => {}
            Formula::Rel(_, a, b) => {
                a.visit_ops(f);
                b.visit_ops(f);
            }
            Formula::Not(a) => a.visit_arith_ops(f),
            Formula::Bin(_, a, b) => {
                a.visit_arith_ops(f);
                b.visit_arith_ops(f);
            }
            Formula::Ite(c, t, e) => {
                c.visit_arith_ops(f);
                t.visit_arith_ops(f);
                e.visit_arith_ops(f);
            }
        }
    }

    /// Truth value in a state pair; `None` when an operator outside `+`/`-`
    /// is reached.
    pub fn eval(&self, cur: &[u64], next: &[u64]) -> Option<bool> {
        Some(match self {
            Formula::Const(b) => *b,
            Formula::Prop(v) => (if v.primed { next } else { cur })[v.var] != 0,
            Formula::Rel(op, a, b) => op.holds(a.eval(cur, next)?, b.eval(cur, next)?),
            Formula::Not(a) => !a.eval(cur, next)?,
            Formula::Bin(c, a, b) => c.holds(a.eval(cur, next)?, b.eval(cur, next)?),
            Formula::Ite(c, t, e) => {
                if c.eval(cur, next)? {
                    t.eval(cur, next)?
                } else {
                    e.eval(cur, next)?
                }
            }
        })
    }

    fn erase_positions(&mut self) {
        match self {
            Formula::Const(_) => {}
            Formula::Prop(v) => v.pos = Pos::default(),
            Formula::Rel(_, a, b) => {
                a.erase_positions();
                b.erase_positions();
            }
            Formula::Not(a) => a.erase_positions(),
            Formula::Bin(_, a, b) => {
                a.erase_positions();
                b.erase_positions();
            }
            Formula::Ite(c, t, e) => {
                c.erase_positions();
                t.erase_positions();
                e.erase_positions();
            }
        }
    }
}

impl Arith {
    pub fn visit_vars(&self, f: &mut impl FnMut(VarRef)) {
        match self {
            Arith::Num(_) => {}
            Arith::Var(v) => f(*v),
            Arith::Bin(_, a, b, _) => {
                a.visit_vars(f);
                b.visit_vars(f);
            }
        }
    }

    fn visit_ops(&self, f: &mut impl FnMut(ArithOp, Pos)) {
        if let Arith::Bin(op, a, b, pos) = self {
            f(*op, *pos);
            a.visit_ops(f);
            b.visit_ops(f);
        }
    }

    pub fn eval(&self, cur: &[u64], next: &[u64]) -> Option<i128> {
        match self {
            Arith::Num(n) => Some(*n as i128),
            Arith::Var(v) => Some((if v.primed { next } else { cur })[v.var] as i128),
            Arith::Bin(op, a, b, _) => {
                let (a, b) = (a.eval(cur, next)?, b.eval(cur, next)?);
                match op {
                    ArithOp::Add => Some(a + b),
                    ArithOp::Sub => Some(a - b),
                    _ => None,
                }
            }
        }
    }

    fn erase_positions(&mut self) {
        match self {
            Arith::Num(_) => {}
            Arith::Var(v) => v.pos = Pos::default(),
            Arith::Bin(_, a, b, pos) => {
                *pos = Pos::default();
                a.erase_positions();
                b.erase_positions();
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Action {
    pub name: String,
    /// Constrained variables, by index, in declaration order of the `con:` list.
    pub con: Vec<usize>,
    pub pre: Formula,
    pub eff: Formula,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Agent {
    pub name: String,
    pub actions: Vec<Action>,
    pub pos: Pos,
}

/// A parsed domain description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Domain {
    pub vars: Vec<VarDecl>,
    pub system: Vec<Agent>,
    pub environment: Vec<Agent>,
    pub init: Formula,
    pub goal: Formula,
    pub init_pos: Pos,
    pub goal_pos: Pos,
}

impl Domain {
    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    /// All agents, environment first (the order of their action-id blocks).
    pub fn agents(&self) -> impl Iterator<Item = (&Agent, bool)> {
        self.environment
            .iter()
            .map(|a| (a, false))
            .chain(self.system.iter().map(|a| (a, true)))
    }

    /// Number of distinct states: the product of all variable ranges.
    pub fn state_count(&self) -> Option<u128> {
        self.vars
            .iter()
            .try_fold(1u128, |acc, v| acc.checked_mul(v.range() as u128))
    }

    /// Copy with every source position reset, for structural comparison.
    pub fn without_positions(&self) -> Domain {
        let mut d = self.clone();
        d.init_pos = Pos::default();
        d.goal_pos = Pos::default();
        d.init.erase_positions();
        d.goal.erase_positions();
        for v in &mut d.vars {
            v.pos = Pos::default();
        }
        for agent in d.system.iter_mut().chain(d.environment.iter_mut()) {
            agent.pos = Pos::default();
            for a in &mut agent.actions {
                a.pos = Pos::default();
                a.pre.erase_positions();
                a.eff.erase_positions();
            }
        }
        d
    }
}

impl std::ops::Not for Formula {
    type Output = Formula;

    fn not(self) -> Formula {
        Formula::Not(Box::new(self))
    }
}
