use std::collections::HashSet;

use super::ast::*;
use super::lexer::{tokenize, Tok, Token};
use super::ParseError;

const KEYWORDS: &[&str] = &[
    "variables",
    "nat",
    "bool",
    "system",
    "environment",
    "agt",
    "con",
    "pre",
    "eff",
    "initially",
    "goal",
    "true",
    "false",
    "mod",
];

/// Parses a complete domain description.
pub fn parse(src: &str) -> Result<Domain, ParseError> {
    let mut p = Parser {
        toks: tokenize(src)?,
        at: 0,
        vars: Vec::new(),
    };
    p.domain()
}

/// Parses a single formula against an existing variable table.
pub fn parse_formula(src: &str, vars: &[VarDecl]) -> Result<Formula, ParseError> {
    let mut p = Parser {
        toks: tokenize(src)?,
        at: 0,
        vars: vars.to_vec(),
    };
    let f = p.formula()?;
    p.expect_eof()?;
    Ok(f)
}

// Untyped expression tree; formulas and arithmetic share one precedence
// climb and are separated afterwards.
enum Expr {
    Num(u64, Pos),
    Bool(bool, Pos),
    Var(String, bool, Pos),
    Not(Box<Expr>),
    Conn(Conn, Box<Expr>, Box<Expr>),
    Ite(Box<Expr>, Box<Expr>, Box<Expr>),
    Rel(RelOp, Box<Expr>, Box<Expr>),
    Arith(ArithOp, Box<Expr>, Box<Expr>, Pos),
}

impl Expr {
    fn pos(&self) -> Pos {
        match self {
            Expr::Num(_, p) | Expr::Bool(_, p) | Expr::Var(_, _, p) | Expr::Arith(.., p) => *p,
            Expr::Not(e) => e.pos(),
            Expr::Conn(_, a, _) | Expr::Rel(_, a, _) => a.pos(),
            Expr::Ite(c, _, _) => c.pos(),
        }
    }
}

struct Parser {
    toks: Vec<Token>,
    at: usize,
    vars: Vec<VarDecl>,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.at]
    }

    fn peek_at(&self, k: usize) -> &Token {
        &self.toks[(self.at + k).min(self.toks.len() - 1)]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::new(self.peek().pos, msg))
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(&self.peek().tok, Tok::Ident(s) if s == kw)
    }

    fn at_name(&self) -> bool {
        matches!(&self.peek().tok, Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()))
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if &self.peek().tok == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<Pos, ParseError> {
        if self.peek().tok == tok {
            Ok(self.bump().pos)
        } else {
            self.error(format!("expected {tok}, found {}", self.peek().tok))
        }
    }

    fn expect_keyword(&mut self, kw: &str, what: &str) -> Result<Pos, ParseError> {
        if self.is_keyword(kw) {
            Ok(self.bump().pos)
        } else {
            self.error(format!("expected {what} `{kw}`, found {}", self.peek().tok))
        }
    }

    fn expect_labelled(&mut self, kw: &str) -> Result<Pos, ParseError> {
        let pos = self.expect_keyword(kw, "")?;
        self.expect(Tok::Colon)?;
        Ok(pos)
    }

    fn expect_eof(&mut self) -> Result<(), ParseError> {
        if self.peek().tok == Tok::Eof {
            Ok(())
        } else {
            self.error(format!("unexpected {}", self.peek().tok))
        }
    }

    fn ident(&mut self, what: &str) -> Result<(String, Pos), ParseError> {
        if self.at_name() {
            let t = self.bump();
            let Tok::Ident(s) = t.tok else { unreachable!() };
            Ok((s, t.pos))
        } else {
            self.error(format!("expected {what}, found {}", self.peek().tok))
        }
    }

    /// Agent and action names may contain hyphens written without spaces
    /// (`Lift-Block`, `Open-2`).
    fn name(&mut self, what: &str) -> Result<(String, Pos), ParseError> {
        let (mut name, pos) = self.ident(what)?;
        while self.peek().tok == Tok::Minus
            && !self.peek().spaced
            && matches!(self.peek_at(1).tok, Tok::Ident(_) | Tok::Num(_))
            && !self.peek_at(1).spaced
        {
            self.bump();
            let part = match self.bump().tok {
                Tok::Ident(part) => part,
                Tok::Num(n) => n.to_string(),
                _ => unreachable!(),
            };
            name.push('-');
            name.push_str(&part);
        }
        Ok((name, pos))
    }

    fn domain(&mut self) -> Result<Domain, ParseError> {
        self.expect_keyword("variables", "section")?;
        self.variables()?;
        self.expect_keyword("system", "section")?;
        let mut names = HashSet::new();
        let system = self.agents(&mut names)?;
        let environment = if self.is_keyword("environment") {
            self.bump();
            self.agents(&mut names)?
        } else {
            Vec::new()
        };
        let init_pos = self.expect_keyword("initially", "section")?;
        let init = self.formula()?;
        let goal_pos = self.expect_keyword("goal", "section")?;
        let goal = self.formula()?;
        self.expect_eof()?;
        Ok(Domain {
            vars: std::mem::take(&mut self.vars),
            system,
            environment,
            init,
            goal,
            init_pos,
            goal_pos,
        })
    }

    fn variables(&mut self) -> Result<(), ParseError> {
        loop {
            let kind = if self.is_keyword("nat") {
                self.bump();
                self.expect(Tok::LParen)?;
                let k = match self.bump().tok {
                    Tok::Num(k) => k,
                    other => {
                        return Err(ParseError::new(
                            self.toks[self.at - 1].pos,
                            format!("expected range size, found {other}"),
                        ))
                    }
                };
                self.expect(Tok::RParen)?;
                VarKind::Nat(k)
            } else if self.is_keyword("bool") {
                self.bump();
                VarKind::Bool
            } else {
                return Ok(());
            };
            if !self.at_name() {
                return self.error("expected variable name");
            }
            while self.at_name() {
                let (name, pos) = self.ident("variable name")?;
                if self.vars.iter().any(|v| v.name == name) {
                    return Err(ParseError::new(pos, format!("duplicate variable `{name}`")));
                }
                self.vars.push(VarDecl { name, kind, pos });
                self.eat(&Tok::Comma);
            }
        }
    }

    fn agents(&mut self, names: &mut HashSet<String>) -> Result<Vec<Agent>, ParseError> {
        let mut agents = Vec::new();
        while self.is_keyword("agt") {
            self.bump();
            self.expect(Tok::Colon)?;
            let (name, pos) = self.name("agent name")?;
            if !names.insert(name.clone()) {
                return Err(ParseError::new(pos, format!("duplicate agent `{name}`")));
            }
            let mut actions: Vec<Action> = Vec::new();
            while self.at_name() {
                let action = self.action()?;
                if actions.iter().any(|a| a.name == action.name) {
                    return Err(ParseError::new(
                        action.pos,
                        format!("duplicate action `{}` in agent `{name}`", action.name),
                    ));
                }
                actions.push(action);
            }
            agents.push(Agent { name, actions, pos });
        }
        Ok(agents)
    }

    fn action(&mut self) -> Result<Action, ParseError> {
        let (name, pos) = self.name("action name")?;
        self.expect_labelled("con")?;
        let mut con = Vec::new();
        while self.at_name() {
            let (v, vpos) = self.ident("variable name")?;
            let idx = self.lookup(&v, vpos)?;
            if con.contains(&idx) {
                return Err(ParseError::new(
                    vpos,
                    format!("duplicate variable `{v}` in con list"),
                ));
            }
            con.push(idx);
            self.eat(&Tok::Comma);
        }
        self.expect_labelled("pre")?;
        let pre = self.formula()?;
        self.expect_labelled("eff")?;
        let eff = self.formula()?;
        Ok(Action {
            name,
            con,
            pre,
            eff,
            pos,
        })
    }

    fn lookup(&self, name: &str, pos: Pos) -> Result<usize, ParseError> {
        self.vars
            .iter()
            .position(|v| v.name == name)
            .ok_or_else(|| ParseError::new(pos, format!("unknown variable `{name}`")))
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let e = self.ite()?;
        self.to_formula(e)
    }

    fn ite(&mut self) -> Result<Expr, ParseError> {
        let c = self.iff()?;
        if self.eat(&Tok::Arrow) {
            let t = self.ite()?;
            self.expect(Tok::Comma)?;
            let e = self.ite()?;
            return Ok(Expr::Ite(Box::new(c), Box::new(t), Box::new(e)));
        }
        Ok(c)
    }

    fn iff(&mut self) -> Result<Expr, ParseError> {
        let mut a = self.implies()?;
        while self.eat(&Tok::Iff) {
            let b = self.implies()?;
            a = Expr::Conn(Conn::Iff, Box::new(a), Box::new(b));
        }
        Ok(a)
    }

    fn implies(&mut self) -> Result<Expr, ParseError> {
        let a = self.or()?;
        if self.eat(&Tok::Implies) {
            let b = self.implies()?;
            return Ok(Expr::Conn(Conn::Implies, Box::new(a), Box::new(b)));
        }
        Ok(a)
    }

    fn or(&mut self) -> Result<Expr, ParseError> {
        let mut a = self.and()?;
        while self.eat(&Tok::Or) {
            let b = self.and()?;
            a = Expr::Conn(Conn::Or, Box::new(a), Box::new(b));
        }
        Ok(a)
    }

    fn and(&mut self) -> Result<Expr, ParseError> {
        let mut a = self.not()?;
        while self.eat(&Tok::And) {
            let b = self.not()?;
            a = Expr::Conn(Conn::And, Box::new(a), Box::new(b));
        }
        Ok(a)
    }

    fn not(&mut self) -> Result<Expr, ParseError> {
        if self.eat(&Tok::Not) {
            return Ok(Expr::Not(Box::new(self.not()?)));
        }
        self.relation()
    }

    fn relation(&mut self) -> Result<Expr, ParseError> {
        let a = self.additive()?;
        let op = match self.peek().tok {
            Tok::Lt => RelOp::Lt,
            Tok::Gt => RelOp::Gt,
            Tok::Le => RelOp::Le,
            Tok::Ge => RelOp::Ge,
            Tok::Eq => RelOp::Eq,
            Tok::Ne => RelOp::Ne,
            _ => return Ok(a),
        };
        self.bump();
        let b = self.additive()?;
        Ok(Expr::Rel(op, Box::new(a), Box::new(b)))
    }

    fn additive(&mut self) -> Result<Expr, ParseError> {
        let mut a = self.multiplicative()?;
        loop {
            let op = match self.peek().tok {
                Tok::Plus => ArithOp::Add,
                Tok::Minus => ArithOp::Sub,
                _ => return Ok(a),
            };
            let pos = self.bump().pos;
            let b = self.multiplicative()?;
            a = Expr::Arith(op, Box::new(a), Box::new(b), pos);
        }
    }

    fn multiplicative(&mut self) -> Result<Expr, ParseError> {
        let mut a = self.primary()?;
        loop {
            let op = match &self.peek().tok {
                Tok::Star => ArithOp::Mul,
                Tok::Slash => ArithOp::Div,
                Tok::Ident(s) if s == "mod" => ArithOp::Mod,
                _ => return Ok(a),
            };
            let pos = self.bump().pos;
            let b = self.primary()?;
            a = Expr::Arith(op, Box::new(a), Box::new(b), pos);
        }
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        let t = self.peek().clone();
        match t.tok {
            Tok::Num(n) => {
                self.bump();
                Ok(Expr::Num(n, t.pos))
            }
            Tok::LParen => {
                self.bump();
                let e = self.ite()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::Ident(ref s) if s == "true" || s == "false" => {
                self.bump();
                Ok(Expr::Bool(s == "true", t.pos))
            }
            Tok::Ident(_) if self.at_name() => {
                let (name, pos) = self.ident("variable")?;
                let primed = self.eat(&Tok::Prime);
                Ok(Expr::Var(name, primed, pos))
            }
            _ => self.error(format!("expected formula or expression, found {}", t.tok)),
        }
    }

    fn var_ref(
        &self,
        name: &str,
        primed: bool,
        pos: Pos,
        want_bool: bool,
    ) -> Result<VarRef, ParseError> {
        let var = self.lookup(name, pos)?;
        let is_bool = self.vars[var].is_bool();
        if is_bool != want_bool {
            let msg = if is_bool {
                format!("`{name}` is propositional; expected an arithmetic expression")
            } else {
                format!("`{name}` is numerical; expected a formula")
            };
            return Err(ParseError::new(pos, msg));
        }
        Ok(VarRef { var, primed, pos })
    }

    fn to_formula(&self, e: Expr) -> Result<Formula, ParseError> {
        Ok(match e {
            Expr::Bool(b, _) => Formula::Const(b),
            Expr::Var(name, primed, pos) => Formula::Prop(self.var_ref(&name, primed, pos, true)?),
            Expr::Not(a) => Formula::Not(Box::new(self.to_formula(*a)?)),
            Expr::Conn(c, a, b) => Formula::Bin(
                c,
                Box::new(self.to_formula(*a)?),
                Box::new(self.to_formula(*b)?),
            ),
            Expr::Ite(c, t, f) => Formula::Ite(
                Box::new(self.to_formula(*c)?),
                Box::new(self.to_formula(*t)?),
                Box::new(self.to_formula(*f)?),
            ),
            Expr::Rel(op, a, b) => Formula::Rel(op, self.to_arith(*a)?, self.to_arith(*b)?),
            Expr::Num(_, pos) | Expr::Arith(.., pos) => {
                return Err(ParseError::new(
                    pos,
                    "expected a formula, found an arithmetic expression",
                ))
            }
        })
    }

    fn to_arith(&self, e: Expr) -> Result<Arith, ParseError> {
        Ok(match e {
            Expr::Num(n, _) => Arith::Num(n),
            Expr::Var(name, primed, pos) => Arith::Var(self.var_ref(&name, primed, pos, false)?),
            Expr::Arith(op, a, b, pos) => Arith::Bin(
                op,
                Box::new(self.to_arith(*a)?),
                Box::new(self.to_arith(*b)?),
                pos,
            ),
            other => {
                return Err(ParseError::new(
                    other.pos(),
                    "expected an arithmetic expression, found a formula",
                ))
            }
        })
    }
}
