//! Every operation is checked against an explicit truth table.

use proptest::prelude::*;
use uniplan_bdd::{BddManager, BinOp, NodeRef, VarPairing, VarSet};

/// Truth table over `n` variables: bit `r` is the value at row `r`, where
/// variable `v` takes bit `v` of `r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Table {
    n: u32,
    bits: [u64; 4],
}

impl Table {
    fn rows(self) -> u32 {
        1 << self.n
    }

    fn get(self, row: u32) -> bool {
        self.bits[(row / 64) as usize] >> (row % 64) & 1 == 1
    }

    fn from_fn(n: u32, f: impl Fn(u32) -> bool) -> Table {
        let mut bits = [0u64; 4];
        for r in 0..1u32 << n {
            if f(r) {
                bits[(r / 64) as usize] |= 1 << (r % 64);
            }
        }
        Table { n, bits }
    }

    fn build(self, m: &mut BddManager) -> NodeRef {
        // Shannon expansion straight from the table, variable 0 on top
        fn go(t: Table, m: &mut BddManager, var: u32, fixed: u32) -> NodeRef {
            if var == t.n {
                return m.constant(t.get(fixed));
            }
            let lo = go(t, m, var + 1, fixed);
            let hi = go(t, m, var + 1, fixed | 1 << var);
            let x = m.var(var).unwrap();
            m.ite(x, hi, lo).unwrap()
        }
        go(self, m, 0, 0)
    }

    fn count(self) -> u128 {
        (0..self.rows()).filter(|&r| self.get(r)).count() as u128
    }
}

fn assignment(n: u32, row: u32) -> Vec<bool> {
    (0..n).map(|v| row >> v & 1 == 1).collect()
}

fn matches(m: &BddManager, f: NodeRef, t: Table) -> bool {
    (0..t.rows()).all(|r| m.evaluate(f, &assignment(t.n, r)).unwrap() == t.get(r))
}

fn table(n: u32) -> impl Strategy<Value = Table> {
    any::<[u64; 4]>().prop_map(move |bits| {
        let t = Table { n, bits };
        Table::from_fn(n, |r| t.get(r))
    })
}

const OPS: [BinOp; 6] = [
    BinOp::And,
    BinOp::Or,
    BinOp::Xor,
    BinOp::Implies,
    BinOp::Iff,
    BinOp::Diff,
];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn or_matches_truth_table(f in table(5), g in table(5)) {
        let mut m = BddManager::new(5);
        let (bf, bg) = (f.build(&mut m), g.build(&mut m));
        let r = m.apply(BinOp::Or, bf, bg).unwrap();
        prop_assert!(matches(&m, r, Table::from_fn(5, |x| f.get(x) || g.get(x))));
    }

    #[test]
    fn and_exists_is_fused_exists_of_and(f in table(8), g in table(8), q in any::<u8>()) {
        let mut m = BddManager::new(8);
        let (bf, bg) = (f.build(&mut m), g.build(&mut m));
        let vars: VarSet = (0..8).filter(|v| q >> v & 1 == 1).collect();
        let fused = m.and_exists(bf, bg, &vars).unwrap();
        let conj = m.and(bf, bg).unwrap();
        prop_assert_eq!(fused, m.exists(conj, &vars).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn every_binop_matches_truth_table(f in table(6), g in table(6)) {
        let mut m = BddManager::new(6);
        let (bf, bg) = (f.build(&mut m), g.build(&mut m));
        for op in OPS {
            let r = m.apply(op, bf, bg).unwrap();
            prop_assert!(matches(&m, r, Table::from_fn(6, |x| op.eval(f.get(x), g.get(x)))), "{:?}", op);
            m.audit(r).unwrap();
        }
    }

    #[test]
    fn canonicity(f in table(8), g in table(8), same in any::<bool>()) {
        let g = if same { f } else { g };
        let mut m = BddManager::new(8);
        let (bf, bg) = (f.build(&mut m), g.build(&mut m));
        prop_assert_eq!(f == g, bf == bg);
        m.audit(bf).unwrap();
    }

    #[test]
    fn commutative_ops_ignore_argument_order(f in table(6), g in table(6)) {
        let mut m = BddManager::new(6);
        let (bf, bg) = (f.build(&mut m), g.build(&mut m));
        for op in [BinOp::And, BinOp::Or, BinOp::Xor, BinOp::Iff] {
            prop_assert_eq!(m.apply(op, bf, bg).unwrap(), m.apply(op, bg, bf).unwrap());
        }
    }

    #[test]
    fn negation(f in table(6)) {
        let mut m = BddManager::new(6);
        let bf = f.build(&mut m);
        let nf = m.not(bf).unwrap();
        prop_assert!(matches(&m, nf, Table::from_fn(6, |x| !f.get(x))));
        prop_assert_eq!(m.not(nf).unwrap(), bf);
    }

    #[test]
    fn restrict_selects_rows(f in table(6), var in 0u32..6, value in any::<bool>()) {
        let mut m = BddManager::new(6);
        let bf = f.build(&mut m);
        let r = m.restrict(bf, var, value).unwrap();
        let bit = (value as u32) << var;
        prop_assert!(matches(&m, r, Table::from_fn(6, |x| f.get((x & !(1 << var)) | bit))));
        prop_assert!(!m.support(r).contains(var));
    }

    #[test]
    fn exists_is_or_of_cofactors(f in table(7), q in any::<u8>()) {
        let mut m = BddManager::new(7);
        let bf = f.build(&mut m);
        let vars: VarSet = (0..7).filter(|v| q >> v & 1 == 1).collect();
        let e = m.exists(bf, &vars).unwrap();
        let mut expected = bf;
        for v in vars.iter() {
            let lo = m.restrict(expected, v, false).unwrap();
            let hi = m.restrict(expected, v, true).unwrap();
            expected = m.or(lo, hi).unwrap();
        }
        prop_assert_eq!(e, expected);
        prop_assert!(!m.support(e).intersects(&vars));
        let qmask = q as u32 & 0x7f;
        let table = Table::from_fn(7, |x| {
            let base = x & !qmask;
            (0..128u32).filter(|s| s & !qmask == 0).any(|s| f.get(base | s))
        });
        prop_assert!(matches(&m, e, table));
    }

    #[test]
    fn rename_relabels(f in table(3)) {
        // f over 0..3 moved to 3..6 and back
        let mut m = BddManager::new(6);
        let bf = f.build(&mut m);
        let up = VarPairing::new([(0, 3), (1, 4), (2, 5)]).unwrap();
        let g = m.rename(bf, &up).unwrap();
        prop_assert!(matches(&m, g, Table::from_fn(6, |x| f.get(x >> 3))));
        prop_assert_eq!(m.rename(g, &up.inverse()).unwrap(), bf);
    }

    #[test]
    fn rename_reversing_order(f in table(3)) {
        let mut m = BddManager::new(6);
        let bf = f.build(&mut m);
        let rev = VarPairing::new([(0, 5), (1, 4), (2, 3)]).unwrap();
        let g = m.rename(bf, &rev).unwrap();
        let perm = |x: u32| (x >> 5 & 1) | (x >> 4 & 1) << 1 | (x >> 3 & 1) << 2;
        prop_assert!(matches(&m, g, Table::from_fn(6, |x| f.get(perm(x)))));
        m.audit(g).unwrap();
    }

    #[test]
    fn count_and_enumerate(f in table(8)) {
        let mut m = BddManager::new(8);
        let bf = f.build(&mut m);
        let all: VarSet = (0..8).collect();
        prop_assert_eq!(m.count_sat(bf, &all).unwrap(), f.count());
        let rows: Vec<Vec<bool>> = m.enumerate_sat(bf, &all).unwrap().collect();
        // lexicographic with variable 0 most significant
        let mut expected: Vec<Vec<bool>> =
            (0..256).filter(|&r| f.get(r)).map(|r| assignment(8, r)).collect();
        expected.sort();
        prop_assert_eq!(rows, expected);
    }

    #[test]
    fn path_evaluation_matches_shannon_recursion(f in table(6), row in 0u32..64) {
        let mut m = BddManager::new(6);
        let bf = f.build(&mut m);
        let a = assignment(6, row);
        fn shannon(m: &BddManager, f: NodeRef, a: &[bool]) -> bool {
            match (m.top_var(f), m.children(f)) {
                (Some(v), Some((lo, hi))) => shannon(m, if a[v as usize] { hi } else { lo }, a),
                _ => f.is_one(),
            }
        }
        prop_assert_eq!(m.evaluate(bf, &a).unwrap(), shannon(&m, bf, &a));
    }

    #[test]
    fn cache_does_not_change_results(f in table(7), g in table(7), q in any::<u8>()) {
        let run = |cache: bool| {
            let mut m = BddManager::new(7);
            m.set_cache_enabled(cache);
            let (bf, bg) = (f.build(&mut m), g.build(&mut m));
            let vars: VarSet = (0..7).filter(|v| q >> v & 1 == 1).collect();
            let x = m.xor(bf, bg).unwrap();
            let r = m.and_exists(x, bf, &vars).unwrap();
            let n = m.not(r).unwrap();
            m.dump(n).unwrap()
        };
        prop_assert_eq!(run(true), run(false));
    }

    #[test]
    fn dump_round_trip(f in table(6)) {
        let mut a = BddManager::new(6);
        let bf = f.build(&mut a);
        let text = a.dump(bf).unwrap();
        let mut b = BddManager::new(6);
        let g = b.load(&text).unwrap();
        prop_assert!(matches(&b, g, f));
    }
}

#[test]
fn conjunction_of_two_variables() {
    let mut m = BddManager::new(2);
    let x1 = m.var(0).unwrap();
    let x2 = m.var(1).unwrap();
    let f = m.apply(BinOp::And, x1, x2).unwrap();
    assert_eq!(m.node_count(f), 2);
    assert_eq!(m.top_var(f), Some(0));
    let (lo, hi) = m.children(f).unwrap();
    assert!(lo.is_zero());
    assert_eq!(hi, x2);
    assert!(m.evaluate(f, &[true, true]).unwrap());
    assert!(!m.evaluate(NodeRef::ZERO, &[true, true]).unwrap());
    assert_eq!(m.count_sat(f, &[0, 1].into_iter().collect()).unwrap(), 1);
    assert_eq!(m.count_sat(NodeRef::ONE, &(0..2).collect()).unwrap(), 4);
    let x1_rows: Vec<_> = m
        .enumerate_sat(x1, &[0, 1].into_iter().collect())
        .unwrap()
        .collect();
    assert_eq!(x1_rows, vec![vec![true, false], vec![true, true]]);
}

/// `(x1 ∧ y1) ∨ (x2 ∧ y2) ∨ (x3 ∧ y3)` under a pairing of variables to
/// positions.
fn pair_sum(m: &mut BddManager, pos: impl Fn(u32, bool) -> u32) -> NodeRef {
    let mut acc = NodeRef::ZERO;
    for i in 0..3 {
        let x = m.var(pos(i, false)).unwrap();
        let y = m.var(pos(i, true)).unwrap();
        let t = m.and(x, y).unwrap();
        acc = m.or(acc, t).unwrap();
    }
    acc
}

#[test]
fn related_variables_adjacent_stay_linear() {
    let mut m = BddManager::new(6);
    let interleaved = pair_sum(&mut m, |i, y| 2 * i + y as u32);
    let separated = pair_sum(&mut m, |i, y| i + 3 * y as u32);
    assert_eq!(m.node_count(interleaved), 6);
    assert!(m.node_count(separated) > m.node_count(interleaved));
    assert_eq!(m.node_count(separated), 14);
}
