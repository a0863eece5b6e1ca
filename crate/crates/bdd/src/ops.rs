use rustc_hash::FxHashMap;

use crate::manager::{ONE_IDX, TERMINAL_VAR, ZERO_IDX};
use crate::{BddError, BddManager, NodeRef, Result, Var, VarPairing, VarSet};

/// Binary boolean connectives accepted by [`BddManager::apply`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BinOp {
    And,
    Or,
    Xor,
    Implies,
    Iff,
    /// `f ∧ ¬g`
    Diff,
}

impl BinOp {
    pub fn eval(self, a: bool, b: bool) -> bool {
        match self {
            BinOp::And => a && b,
            BinOp::Or => a || b,
            BinOp::Xor => a != b,
            BinOp::Implies => !a || b,
            BinOp::Iff => a == b,
            BinOp::Diff => a && !b,
        }
    }

    fn commutative(self) -> bool {
        matches!(self, BinOp::And | BinOp::Or | BinOp::Xor | BinOp::Iff)
    }

    fn tag(self) -> u32 {
        match self {
            BinOp::And => 1,
            BinOp::Or => 2,
            BinOp::Xor => 3,
            BinOp::Implies => 4,
            BinOp::Iff => 5,
            BinOp::Diff => 6,
        }
    }
}

const TAG_NOT: u32 = 7;

enum Shortcut {
    Done(u32),
    Negate(u32),
    Recurse,
}

fn terminal_case(op: BinOp, f: u32, g: u32) -> Shortcut {
    use Shortcut::*;
    const Z: u32 = ZERO_IDX;
    const O: u32 = ONE_IDX;
    match op {
        BinOp::And => match (f, g) {
            (Z, _) | (_, Z) => Done(Z),
            (O, x) | (x, O) => Done(x),
            _ if f == g => Done(f),
            _ => Recurse,
        },
        BinOp::Or => match (f, g) {
            (O, _) | (_, O) => Done(O),
            (Z, x) | (x, Z) => Done(x),
            _ if f == g => Done(f),
            _ => Recurse,
        },
        BinOp::Xor => match (f, g) {
            _ if f == g => Done(Z),
            (Z, x) | (x, Z) => Done(x),
            (O, x) | (x, O) => Negate(x),
            _ => Recurse,
        },
        BinOp::Iff => match (f, g) {
            _ if f == g => Done(O),
            (O, x) | (x, O) => Done(x),
            (Z, x) | (x, Z) => Negate(x),
            _ => Recurse,
        },
        BinOp::Implies => match (f, g) {
            (Z, _) | (_, O) => Done(O),
            (O, x) => Done(x),
            _ if f == g => Done(O),
            (x, Z) => Negate(x),
            _ => Recurse,
        },
        BinOp::Diff => match (f, g) {
            (Z, _) | (_, O) => Done(Z),
            (x, Z) => Done(x),
            _ if f == g => Done(Z),
            (O, x) => Negate(x),
            _ => Recurse,
        },
    }
}

impl BddManager {
    /// Canonical diagram of `op(f, g)`.
    pub fn apply(&mut self, op: BinOp, f: NodeRef, g: NodeRef) -> Result<NodeRef> {
        let (f, g) = (self.check(f)?, self.check(g)?);
        let r = self.apply_rec(op, f, g);
        Ok(self.wrap(r))
    }

    pub fn and(&mut self, f: NodeRef, g: NodeRef) -> Result<NodeRef> {
        self.apply(BinOp::And, f, g)
    }

    pub fn or(&mut self, f: NodeRef, g: NodeRef) -> Result<NodeRef> {
        self.apply(BinOp::Or, f, g)
    }

    pub fn xor(&mut self, f: NodeRef, g: NodeRef) -> Result<NodeRef> {
        self.apply(BinOp::Xor, f, g)
    }

    pub fn implies(&mut self, f: NodeRef, g: NodeRef) -> Result<NodeRef> {
        self.apply(BinOp::Implies, f, g)
    }

    pub fn iff(&mut self, f: NodeRef, g: NodeRef) -> Result<NodeRef> {
        self.apply(BinOp::Iff, f, g)
    }

    pub fn diff(&mut self, f: NodeRef, g: NodeRef) -> Result<NodeRef> {
        self.apply(BinOp::Diff, f, g)
    }

    /// Conjunction of all operands; `ONE` for an empty list.
    pub fn and_all(&mut self, fs: impl IntoIterator<Item = NodeRef>) -> Result<NodeRef> {
        let mut acc = NodeRef::ONE;
        for f in fs {
            acc = self.and(acc, f)?;
        }
        Ok(acc)
    }

    /// Disjunction of all operands; `ZERO` for an empty list.
    pub fn or_all(&mut self, fs: impl IntoIterator<Item = NodeRef>) -> Result<NodeRef> {
        let mut acc = NodeRef::ZERO;
        for f in fs {
            acc = self.or(acc, f)?;
        }
        Ok(acc)
    }

    pub fn not(&mut self, f: NodeRef) -> Result<NodeRef> {
        let f = self.check(f)?;
        let r = self.not_rec(f);
        Ok(self.wrap(r))
    }

    /// `(c ∧ t) ∨ (¬c ∧ e)`
    pub fn ite(&mut self, c: NodeRef, t: NodeRef, e: NodeRef) -> Result<NodeRef> {
        let a = self.and(c, t)?;
        let b = self.diff(e, c)?;
        self.or(a, b)
    }

    /// True iff `f ⊆ g` as sets of assignments.
    pub fn leq(&mut self, f: NodeRef, g: NodeRef) -> Result<bool> {
        Ok(self.diff(f, g)?.is_zero())
    }

    fn apply_rec(&mut self, op: BinOp, mut f: u32, mut g: u32) -> u32 {
        match terminal_case(op, f, g) {
            Shortcut::Done(r) => return r,
            Shortcut::Negate(x) => return self.not_rec(x),
            Shortcut::Recurse => {}
        }
        if op.commutative() && f > g {
            std::mem::swap(&mut f, &mut g);
        }
        if self.cache_enabled {
            if let Some(r) = self.cache.get(op.tag(), f, g, 0) {
                return r;
            }
        }
        let (nf, ng) = (self.node(f), self.node(g));
        let var = nf.var.min(ng.var);
        let (f0, f1) = if nf.var == var {
            (nf.low, nf.high)
        } else {
            (f, f)
        };
        let (g0, g1) = if ng.var == var {
            (ng.low, ng.high)
        } else {
            (g, g)
        };
        let low = self.apply_rec(op, f0, g0);
        let high = self.apply_rec(op, f1, g1);
        let r = self.mk(var, low, high);
        if self.cache_enabled {
            self.cache.put(op.tag(), f, g, 0, r);
        }
        r
    }

    fn not_rec(&mut self, f: u32) -> u32 {
        match f {
            ZERO_IDX => return ONE_IDX,
            ONE_IDX => return ZERO_IDX,
            _ => {}
        }
        if self.cache_enabled {
            if let Some(r) = self.cache.get(TAG_NOT, f, 0, 0) {
                return r;
            }
        }
        let n = self.node(f);
        let low = self.not_rec(n.low);
        let high = self.not_rec(n.high);
        let r = self.mk(n.var, low, high);
        if self.cache_enabled {
            self.cache.put(TAG_NOT, f, 0, 0, r);
        }
        r
    }

    /// Cofactor of `f` with `var` fixed to `value`.
    pub fn restrict(&mut self, f: NodeRef, var: Var, value: bool) -> Result<NodeRef> {
        self.check_var(var)?;
        let f = self.check(f)?;
        let mut memo = FxHashMap::default();
        let r = self.restrict_rec(f, var, value, &mut memo);
        Ok(self.wrap(r))
    }

    fn restrict_rec(
        &mut self,
        f: u32,
        var: Var,
        value: bool,
        memo: &mut FxHashMap<u32, u32>,
    ) -> u32 {
        let n = self.node(f);
        if n.var > var {
            // terminals have TERMINAL_VAR and fall in here too
            return f;
        }
        if n.var == var {
            return if value { n.high } else { n.low };
        }
        if let Some(&r) = memo.get(&f) {
            return r;
        }
        let low = self.restrict_rec(n.low, var, value, memo);
        let high = self.restrict_rec(n.high, var, value, memo);
        let r = self.mk(n.var, low, high);
        memo.insert(f, r);
        r
    }

    /// Existential quantification of `vars` out of `f`.
    pub fn exists(&mut self, f: NodeRef, vars: &VarSet) -> Result<NodeRef> {
        let f = self.check(f)?;
        let Some(last) = vars.max() else {
            return Ok(self.wrap(f));
        };
        let mut memo = FxHashMap::default();
        let r = self.exists_rec(f, vars, last, &mut memo);
        Ok(self.wrap(r))
    }

    fn exists_rec(
        &mut self,
        f: u32,
        vars: &VarSet,
        last: Var,
        memo: &mut FxHashMap<u32, u32>,
    ) -> u32 {
        let n = self.node(f);
        if n.var == TERMINAL_VAR || n.var > last {
            return f;
        }
        if let Some(&r) = memo.get(&f) {
            return r;
        }
        let low = self.exists_rec(n.low, vars, last, memo);
        let r = if vars.contains(n.var) {
            if low == ONE_IDX {
                ONE_IDX
            } else {
                let high = self.exists_rec(n.high, vars, last, memo);
                self.apply_rec(BinOp::Or, low, high)
            }
        } else {
            let high = self.exists_rec(n.high, vars, last, memo);
            self.mk(n.var, low, high)
        };
        memo.insert(f, r);
        r
    }

    /// Universal quantification of `vars` out of `f`.
    pub fn forall(&mut self, f: NodeRef, vars: &VarSet) -> Result<NodeRef> {
        let nf = self.not(f)?;
        let e = self.exists(nf, vars)?;
        self.not(e)
    }

    /// `∃ vars . f ∧ g` in a single traversal.
    pub fn and_exists(&mut self, f: NodeRef, g: NodeRef, vars: &VarSet) -> Result<NodeRef> {
        let (f, g) = (self.check(f)?, self.check(g)?);
        let last = vars.max();
        let mut memo = FxHashMap::default();
        let r = self.and_exists_rec(f, g, vars, last, &mut memo);
        Ok(self.wrap(r))
    }

    fn and_exists_rec(
        &mut self,
        mut f: u32,
        mut g: u32,
        vars: &VarSet,
        last: Option<Var>,
        memo: &mut FxHashMap<(u32, u32), u32>,
    ) -> u32 {
        if f == ZERO_IDX || g == ZERO_IDX {
            return ZERO_IDX;
        }
        if f == ONE_IDX && g == ONE_IDX {
            return ONE_IDX;
        }
        if f > g {
            std::mem::swap(&mut f, &mut g);
        }
        let (nf, ng) = (self.node(f), self.node(g));
        let var = nf.var.min(ng.var);
        let Some(last) = last.filter(|&l| var <= l) else {
            // nothing left to quantify below this point
            return self.apply_rec(BinOp::And, f, g);
        };
        if let Some(&r) = memo.get(&(f, g)) {
            return r;
        }
        let (f0, f1) = if nf.var == var {
            (nf.low, nf.high)
        } else {
            (f, f)
        };
        let (g0, g1) = if ng.var == var {
            (ng.low, ng.high)
        } else {
            (g, g)
        };
        let low = self.and_exists_rec(f0, g0, vars, Some(last), memo);
        let r = if vars.contains(var) {
            if low == ONE_IDX {
                ONE_IDX
            } else {
                let high = self.and_exists_rec(f1, g1, vars, Some(last), memo);
                self.apply_rec(BinOp::Or, low, high)
            }
        } else {
            let high = self.and_exists_rec(f1, g1, vars, Some(last), memo);
            self.mk(var, low, high)
        };
        memo.insert((f, g), r);
        r
    }

    /// Substitutes each `from` variable of `pairing` with its `to` variable.
    ///
    /// Fails when a target variable already occurs in `f` (unless it is
    /// itself renamed away by the same pairing).
    pub fn rename(&mut self, f: NodeRef, pairing: &VarPairing) -> Result<NodeRef> {
        let fi = self.check(f)?;
        if pairing.is_empty() {
            return Ok(f);
        }
        let mut map = FxHashMap::default();
        for &(from, to) in pairing.pairs() {
            self.check_var(from)?;
            self.check_var(to)?;
            map.insert(from, to);
        }
        let support = self.support(f);
        for &(_, to) in pairing.pairs() {
            if support.contains(to) && !map.contains_key(&to) {
                return Err(BddError::RenameConflict { var: to });
            }
        }
        let mut memo = FxHashMap::default();
        let r = self.rename_rec(fi, &map, &mut memo);
        Ok(self.wrap(r))
    }

    fn rename_rec(
        &mut self,
        f: u32,
        map: &FxHashMap<Var, Var>,
        memo: &mut FxHashMap<u32, u32>,
    ) -> u32 {
        if f <= ONE_IDX {
            return f;
        }
        if let Some(&r) = memo.get(&f) {
            return r;
        }
        let n = self.node(f);
        let low = self.rename_rec(n.low, map, memo);
        let high = self.rename_rec(n.high, map, memo);
        let var = map.get(&n.var).copied().unwrap_or(n.var);
        let r = if var < self.var_of(low) && var < self.var_of(high) {
            self.mk(var, low, high)
        } else {
            // the new variable is out of place: rebuild as ite(var, high, low)
            let v = self.mk(var, ZERO_IDX, ONE_IDX);
            let a = self.apply_rec(BinOp::And, v, high);
            let b = self.apply_rec(BinOp::Diff, low, v);
            self.apply_rec(BinOp::Or, a, b)
        };
        memo.insert(f, r);
        r
    }
}
