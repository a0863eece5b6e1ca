use rustc_hash::FxHashMap;

use crate::manager::{ONE_IDX, TERMINAL_VAR, ZERO_IDX};
use crate::{BddError, BddManager, NodeRef, Result, Var, VarSet};

impl BddManager {
    /// Value of `f` under `assignment`, indexed by variable.
    ///
    /// Only the variables on the evaluated path need to be covered.
    pub fn evaluate(&self, f: NodeRef, assignment: &[bool]) -> Result<bool> {
        let mut i = self.check(f)?;
        loop {
            let n = self.node(i);
            if n.var == TERMINAL_VAR {
                return Ok(i == ONE_IDX);
            }
            let value = *assignment
                .get(n.var as usize)
                .ok_or(BddError::MissingAssignment { var: n.var })?;
            i = if value { n.high } else { n.low };
        }
    }

    /// Number of assignments to `vars` that satisfy `f`.
    pub fn count_sat(&self, f: NodeRef, vars: &VarSet) -> Result<u128> {
        let root = self.check(f)?;
        let len = vars.len();
        if len > 127 {
            return Err(BddError::CountOverflow { len });
        }
        if let Some(v) = self.support(f).iter().find(|v| !vars.contains(*v)) {
            return Err(BddError::SupportNotCovered { var: v });
        }
        // rank[v] = number of members of `vars` strictly below v in the order
        let sorted: Vec<Var> = vars.iter().collect();
        let rank = |v: Var| -> u32 {
            if v == TERMINAL_VAR {
                len as u32
            } else {
                sorted.partition_point(|&x| x < v) as u32
            }
        };
        let mut memo: FxHashMap<u32, u128> = FxHashMap::default();
        // iterative post-order so deep diagrams don't blow the stack
        let mut stack = vec![(root, false)];
        while let Some((i, expanded)) = stack.pop() {
            if i <= ONE_IDX || memo.contains_key(&i) {
                continue;
            }
            let n = self.node(i);
            if !expanded {
                stack.push((i, true));
                stack.push((n.low, false));
                stack.push((n.high, false));
                continue;
            }
            let r = rank(n.var);
            let child = |c: u32, memo: &FxHashMap<u32, u128>| -> u128 {
                let base = match c {
                    ZERO_IDX => 0,
                    ONE_IDX => 1,
                    _ => memo[&c],
                };
                base << (rank(self.var_of(c)) - r - 1)
            };
            let total = child(n.low, &memo) + child(n.high, &memo);
            memo.insert(i, total);
        }
        let base = match root {
            ZERO_IDX => 0,
            ONE_IDX => 1,
            _ => memo[&root],
        };
        Ok(base << rank(self.var_of(root)))
    }

    /// Satisfying assignments of `f` over `vars`, in lexicographic order with
    /// `false < true` and the lowest variable most significant.
    ///
    /// Each item is aligned with `vars.iter()`.
    pub fn enumerate_sat(&self, f: NodeRef, vars: &VarSet) -> Result<SatIter<'_>> {
        let root = self.check(f)?;
        if let Some(v) = self.support(f).iter().find(|v| !vars.contains(*v)) {
            return Err(BddError::SupportNotCovered { var: v });
        }
        let vars: Vec<Var> = vars.iter().collect();
        let mut it = SatIter {
            mgr: self,
            vars,
            stack: Vec::new(),
            done: false,
        };
        if root == ZERO_IDX {
            it.done = true;
        } else {
            it.stack.push(Frame {
                pos: 0,
                node: root,
                value: false,
            });
        }
        Ok(it)
    }

    /// One satisfying assignment over `vars` (the lexicographically smallest).
    pub fn pick_sat(&self, f: NodeRef, vars: &VarSet) -> Result<Option<Vec<bool>>> {
        Ok(self.enumerate_sat(f, vars)?.next())
    }
}

struct Frame {
    pos: usize,
    node: u32,
    value: bool,
}

/// Iterator returned by [`BddManager::enumerate_sat`].
pub struct SatIter<'a> {
    mgr: &'a BddManager,
    vars: Vec<Var>,
    // each frame is the choice made at vars[pos]; `value` is the branch taken
    stack: Vec<Frame>,
    done: bool,
}

impl SatIter<'_> {
    fn child(&self, node: u32, var: Var, value: bool) -> u32 {
        let n = self.mgr.node(node);
        if n.var == var {
            if value {
                n.high
            } else {
                n.low
            }
        } else {
            node
        }
    }

    /// Descends from the top frame taking `false` branches, backtracking on
    /// dead ends. Returns true when a full satisfying path is on the stack.
    fn settle(&mut self) -> bool {
        loop {
            let Some(top) = self.stack.last() else {
                return false;
            };
            let (pos, node, value) = (top.pos, top.node, top.value);
            if pos == self.vars.len() {
                if node == ONE_IDX {
                    return true;
                }
                self.stack.pop();
                if !self.flip_top() {
                    return false;
                }
                continue;
            }
            let next = self.child(node, self.vars[pos], value);
            if next == ZERO_IDX {
                if !self.flip_top() {
                    return false;
                }
                continue;
            }
            self.stack.push(Frame {
                pos: pos + 1,
                node: next,
                value: false,
            });
        }
    }

    // switch the deepest frame still on `false` to `true`, popping others
    fn flip_top(&mut self) -> bool {
        while let Some(top) = self.stack.last_mut() {
            if top.pos < self.vars.len() && !top.value {
                top.value = true;
                return true;
            }
            self.stack.pop();
        }
        false
    }
}

impl Iterator for SatIter<'_> {
    type Item = Vec<bool>;

    fn next(&mut self) -> Option<Vec<bool>> {
        if self.done {
            return None;
        }
        if !self.settle() {
            self.done = true;
            return None;
        }
        let out: Vec<bool> = self.stack[..self.vars.len()]
            .iter()
            .map(|f| f.value)
            .collect();
        // drop the leaf frame and move to the next branch
        self.stack.pop();
        if !self.flip_top() {
            self.done = true;
        }
        Some(out)
    }
}
