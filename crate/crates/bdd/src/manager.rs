use std::collections::HashMap;
use std::sync::atomic::{AtomicU32, Ordering};

use rustc_hash::FxBuildHasher;

use crate::cache::OpCache;
use crate::{BddError, Result, VarSet};

/// Decision variable index; equal to its position in the variable order.
pub type Var = u32;

pub(crate) const TERMINAL_VAR: Var = Var::MAX;
pub(crate) const ZERO_IDX: u32 = 0;
pub(crate) const ONE_IDX: u32 = 1;

// owner 0 is reserved for the two terminals, which every manager shares
static NEXT_MANAGER_ID: AtomicU32 = AtomicU32::new(1);

/// Handle to a node owned by a [`BddManager`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct NodeRef {
    owner: u32,
    index: u32,
}

impl NodeRef {
    pub const ZERO: NodeRef = NodeRef {
        owner: 0,
        index: ZERO_IDX,
    };
    pub const ONE: NodeRef = NodeRef {
        owner: 0,
        index: ONE_IDX,
    };

    pub fn is_zero(self) -> bool {
        self.index == ZERO_IDX
    }

    pub fn is_one(self) -> bool {
        self.index == ONE_IDX
    }

    pub fn is_terminal(self) -> bool {
        self.index <= ONE_IDX
    }

    /// Position of the node in its manager's store.
    pub fn index(self) -> u32 {
        self.index
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Node {
    pub(crate) var: Var,
    pub(crate) low: u32,
    pub(crate) high: u32,
}

/// Owner of a shared, reduced, ordered decision diagram store.
pub struct BddManager {
    id: u32,
    num_vars: u32,
    pub(crate) nodes: Vec<Node>,
    unique: HashMap<(Var, u32, u32), u32, FxBuildHasher>,
    pub(crate) cache: OpCache,
    pub(crate) cache_enabled: bool,
}

impl BddManager {
    /// Creates a manager over variables `0..num_vars`.
    pub fn new(num_vars: u32) -> Self {
        let terminal = |i| Node {
            var: TERMINAL_VAR,
            low: i,
            high: i,
        };
        BddManager {
            id: NEXT_MANAGER_ID.fetch_add(1, Ordering::Relaxed),
            num_vars,
            nodes: vec![terminal(ZERO_IDX), terminal(ONE_IDX)],
            unique: HashMap::with_hasher(FxBuildHasher),
            cache: OpCache::new(),
            cache_enabled: true,
        }
    }

    /// Disables (or re-enables) the operation cache. Results are identical
    /// either way; only running time changes.
    pub fn set_cache_enabled(&mut self, enabled: bool) {
        self.cache_enabled = enabled;
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    /// Number of nodes ever created, terminals included.
    pub fn total_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn zero(&self) -> NodeRef {
        NodeRef::ZERO
    }

    pub fn one(&self) -> NodeRef {
        NodeRef::ONE
    }

    pub fn constant(&self, value: bool) -> NodeRef {
        if value {
            NodeRef::ONE
        } else {
            NodeRef::ZERO
        }
    }

    /// The function that is true iff `var` is true.
    pub fn var(&mut self, var: Var) -> Result<NodeRef> {
        self.check_var(var)?;
        let i = self.mk(var, ZERO_IDX, ONE_IDX);
        Ok(self.wrap(i))
    }

    /// The function that is true iff `var` is false.
    pub fn nvar(&mut self, var: Var) -> Result<NodeRef> {
        self.check_var(var)?;
        let i = self.mk(var, ONE_IDX, ZERO_IDX);
        Ok(self.wrap(i))
    }

    /// `var` when `value` holds, its negation otherwise.
    pub fn literal(&mut self, var: Var, value: bool) -> Result<NodeRef> {
        if value {
            self.var(var)
        } else {
            self.nvar(var)
        }
    }

    /// Conjunction of literals; `bits` pairs each variable with its value.
    pub fn cube(&mut self, bits: &[(Var, bool)]) -> Result<NodeRef> {
        let mut sorted = bits.to_vec();
        sorted.sort_unstable_by_key(|b| std::cmp::Reverse(b.0));
        let mut acc = ONE_IDX;
        for (var, value) in sorted {
            self.check_var(var)?;
            let node = self.nodes[acc as usize];
            if node.var == var {
                // repeated variable: consistent values keep acc, others contradict
                let keep = if value {
                    node.low == ZERO_IDX
                } else {
                    node.high == ZERO_IDX
                };
                if !keep {
                    return Ok(NodeRef::ZERO);
                }
                continue;
            }
            acc = if value {
                self.mk(var, ZERO_IDX, acc)
            } else {
                self.mk(var, acc, ZERO_IDX)
            };
        }
        Ok(self.wrap(acc))
    }

    /// Top variable of `f`, or `None` for terminals.
    pub fn top_var(&self, f: NodeRef) -> Option<Var> {
        let v = self.nodes[f.index as usize].var;
        (v != TERMINAL_VAR).then_some(v)
    }

    /// Low and high children of an internal node.
    pub fn children(&self, f: NodeRef) -> Option<(NodeRef, NodeRef)> {
        let n = self.nodes[f.index as usize];
        (n.var != TERMINAL_VAR).then(|| (self.wrap(n.low), self.wrap(n.high)))
    }

    /// Number of distinct internal nodes reachable from `f`.
    pub fn node_count(&self, f: NodeRef) -> usize {
        self.reachable(f.index).len()
    }

    /// Variables `f` depends on.
    pub fn support(&self, f: NodeRef) -> VarSet {
        self.reachable(f.index)
            .into_iter()
            .map(|i| self.nodes[i as usize].var)
            .collect()
    }

    /// Checks the ordering and reduction rules on every node reachable from
    /// `f`, returning a description of the first violation found.
    pub fn audit(&self, f: NodeRef) -> std::result::Result<(), String> {
        let mut seen = HashMap::new();
        for i in self.reachable(f.index) {
            let n = self.nodes[i as usize];
            if n.low == n.high {
                return Err(format!("node {i} has identical children"));
            }
            for child in [n.low, n.high] {
                let cv = self.nodes[child as usize].var;
                if cv != TERMINAL_VAR && cv <= n.var {
                    return Err(format!("node {i} (var {}) has child with var {cv}", n.var));
                }
            }
            if let Some(other) = seen.insert((n.var, n.low, n.high), i) {
                return Err(format!("nodes {other} and {i} are duplicates"));
            }
        }
        Ok(())
    }

    pub(crate) fn reachable(&self, root: u32) -> Vec<u32> {
        let mut seen = rustc_hash::FxHashSet::default();
        let mut stack = vec![root];
        let mut out = Vec::new();
        while let Some(i) = stack.pop() {
            if i <= ONE_IDX || !seen.insert(i) {
                continue;
            }
            out.push(i);
            let n = self.nodes[i as usize];
            stack.push(n.high);
            stack.push(n.low);
        }
        out
    }

    pub(crate) fn check_var(&self, var: Var) -> Result<()> {
        if var >= self.num_vars {
            return Err(BddError::VarOutOfRange {
                var,
                num_vars: self.num_vars,
            });
        }
        Ok(())
    }

    pub(crate) fn check(&self, f: NodeRef) -> Result<u32> {
        if f.owner != 0 && f.owner != self.id {
            return Err(BddError::ForeignNode);
        }
        if f.index as usize >= self.nodes.len() {
            return Err(BddError::ForeignNode);
        }
        Ok(f.index)
    }

    pub(crate) fn wrap(&self, index: u32) -> NodeRef {
        let owner = if index <= ONE_IDX { 0 } else { self.id };
        NodeRef { owner, index }
    }

    #[inline]
    pub(crate) fn var_of(&self, index: u32) -> Var {
        self.nodes[index as usize].var
    }

    #[inline]
    pub(crate) fn node(&self, index: u32) -> Node {
        self.nodes[index as usize]
    }

    /// Find-or-create with both reduction rules applied.
    pub(crate) fn mk(&mut self, var: Var, low: u32, high: u32) -> u32 {
        if low == high {
            return low;
        }
        debug_assert!(var < self.var_of(low) && var < self.var_of(high));
        if let Some(&i) = self.unique.get(&(var, low, high)) {
            return i;
        }
        let i = self.nodes.len() as u32;
        self.nodes.push(Node { var, low, high });
        self.unique.insert((var, low, high), i);
        self.cache.fit_to(self.nodes.len());
        i
    }
}

impl std::fmt::Debug for BddManager {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BddManager")
            .field("num_vars", &self.num_vars)
            .field("nodes", &self.nodes.len())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_var_semantics() {
        let mut m = BddManager::new(4);
        let x0 = m.var(0).unwrap();
        assert!(m.evaluate(x0, &[true]).unwrap());
        assert!(!m.evaluate(x0, &[false]).unwrap());
        let x3 = m.var(3).unwrap();
        assert_eq!(m.node_count(x3), 1);
        assert_eq!(
            m.var(4),
            Err(BddError::VarOutOfRange {
                var: 4,
                num_vars: 4
            })
        );
    }

    #[test]
    fn unique_table_shares_nodes() {
        let mut m = BddManager::new(2);
        assert_eq!(m.var(1).unwrap(), m.var(1).unwrap());
        assert_eq!(m.node_count(NodeRef::ONE), 0);
        assert_eq!(m.node_count(NodeRef::ZERO), 0);
    }

    #[test]
    fn foreign_nodes_are_rejected() {
        let mut a = BddManager::new(2);
        let mut b = BddManager::new(2);
        let fa = a.var(0).unwrap();
        let fb = b.var(1).unwrap();
        assert_eq!(a.and(fa, fb), Err(BddError::ForeignNode));
        // terminals are shared
        assert_eq!(b.and(fb, NodeRef::ONE).unwrap(), fb);
    }

    #[test]
    fn cube_handles_repeats() {
        let mut m = BddManager::new(3);
        let c = m.cube(&[(2, true), (0, false), (2, true)]).unwrap();
        let x0 = m.nvar(0).unwrap();
        let x2 = m.var(2).unwrap();
        assert_eq!(c, m.and(x0, x2).unwrap());
        assert!(m.cube(&[(1, true), (1, false)]).unwrap().is_zero());
    }
}
