//! Plain-text serialisation of a single diagram.
//!
//! ```text
//! node <id> <var> <low> <high>
//! ...
//! root <id>
//! ```
//!
//! Ids `0` and `1` are the terminals; internal nodes are numbered from `2`
//! and every node line precedes any line that references it. Blank lines and
//! lines starting with `#` are ignored.

use std::fmt::Write as _;

use rustc_hash::FxHashMap;

use crate::manager::{ONE_IDX, TERMINAL_VAR, ZERO_IDX};
use crate::{BddError, BddManager, NodeRef, Result};

impl BddManager {
    /// Writes `f` in the dump format.
    pub fn dump(&self, f: NodeRef) -> Result<String> {
        let root = self.check(f)?;
        let mut ids: FxHashMap<u32, u32> = FxHashMap::default();
        ids.insert(ZERO_IDX, 0);
        ids.insert(ONE_IDX, 1);
        let mut out = String::new();
        let mut stack = vec![(root, false)];
        while let Some((i, expanded)) = stack.pop() {
            if ids.contains_key(&i) {
                continue;
            }
            let n = self.node(i);
            if !expanded {
                stack.push((i, true));
                stack.push((n.high, false));
                stack.push((n.low, false));
                continue;
            }
            let id = ids.len() as u32;
            ids.insert(i, id);
            writeln!(out, "node {id} {} {} {}", n.var, ids[&n.low], ids[&n.high]).unwrap();
        }
        writeln!(out, "root {}", ids[&root]).unwrap();
        Ok(out)
    }

    /// Rebuilds a diagram written by [`BddManager::dump`] inside this manager.
    pub fn load(&mut self, text: &str) -> Result<NodeRef> {
        let err = |line: usize, message: &str| BddError::Dump {
            line,
            message: message.to_string(),
        };
        let mut map: Vec<u32> = vec![ZERO_IDX, ONE_IDX];
        let mut root = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let raw = raw.trim();
            if raw.is_empty() || raw.starts_with('#') {
                continue;
            }
            if root.is_some() {
                return Err(err(line, "content after root line"));
            }
            let mut words = raw.split_ascii_whitespace();
            let keyword = words.next().unwrap_or_default();
            let nums: Vec<u64> = words
                .map(|w| {
                    w.parse::<u64>()
                        .map_err(|_| err(line, &format!("bad number `{w}`")))
                })
                .collect::<Result<_>>()?;
            let lookup = |id: u64| -> Result<u32> {
                map.get(id as usize)
                    .copied()
                    .ok_or_else(|| err(line, &format!("unknown node id {id}")))
            };
            match (keyword, nums.as_slice()) {
                ("node", &[id, var, low, high]) => {
                    if id != map.len() as u64 {
                        return Err(err(
                            line,
                            &format!("expected node id {}, found {id}", map.len()),
                        ));
                    }
                    if var >= self.num_vars() as u64 {
                        return Err(err(line, &format!("variable {var} out of range")));
                    }
                    let var = var as u32;
                    let (low, high) = (lookup(low)?, lookup(high)?);
                    if low == high {
                        return Err(err(line, "node has identical children"));
                    }
                    for c in [low, high] {
                        let cv = self.var_of(c);
                        if cv != TERMINAL_VAR && cv <= var {
                            return Err(err(line, "children must test later variables"));
                        }
                    }
                    let idx = self.mk(var, low, high);
                    map.push(idx);
                }
                ("root", &[id]) => root = Some(lookup(id)?),
                _ => return Err(err(line, &format!("malformed line `{raw}`"))),
            }
        }
        let root = root.ok_or_else(|| err(text.lines().count().max(1), "missing root line"))?;
        Ok(self.wrap(root))
    }

    /// Graphviz rendering of `f`; `names` labels variables when provided.
    pub fn to_dot(&self, f: NodeRef, names: Option<&dyn Fn(u32) -> String>) -> Result<String> {
        let root = self.check(f)?;
        let mut out = String::from(
            "digraph bdd {\n  n0 [shape=box,label=\"0\"];\n  n1 [shape=box,label=\"1\"];\n",
        );
        for i in self.reachable(root) {
            let n = self.node(i);
            let label = names.map_or_else(|| format!("x{}", n.var), |g| g(n.var));
            writeln!(out, "  n{i} [label=\"{label}\"];").unwrap();
            writeln!(out, "  n{i} -> n{} [style=dashed];", n.low).unwrap();
            writeln!(out, "  n{i} -> n{};", n.high).unwrap();
        }
        out.push_str("}\n");
        Ok(out)
    }
}
