//! Random formulas over a fixed variable table, shared by the property tests.

use proptest::prelude::*;

use uniplan::nadl::{Arith, ArithOp, Conn, Formula, Pos, RelOp, VarDecl, VarKind, VarRef};

/// `bool a b`, `nat(4) n`, `nat(3) m`.
pub fn vars() -> Vec<VarDecl> {
    let decl = |name: &str, kind| VarDecl {
        name: name.to_string(),
        kind,
        pos: Pos::default(),
    };
    vec![
        decl("a", VarKind::Bool),
        decl("b", VarKind::Bool),
        decl("n", VarKind::Nat(4)),
        decl("m", VarKind::Nat(3)),
    ]
}

fn var_ref(var: usize, primed: bool) -> VarRef {
    VarRef {
        var,
        primed,
        pos: Pos::default(),
    }
}

/// Arithmetic over `n` and `m` with `+`/`-` only, so the encoder accepts it.
pub fn arith(primes: bool) -> impl Strategy<Value = Arith> {
    let leaf = prop_oneof![
        (0u64..7).prop_map(Arith::Num),
        (2usize..4, any::<bool>()).prop_map(move |(v, p)| Arith::Var(var_ref(v, p && primes))),
    ];
    leaf.prop_recursive(2, 6, 2, |inner| {
        (
            inner.clone(),
            inner,
            prop_oneof![Just(ArithOp::Add), Just(ArithOp::Sub)],
        )
            .prop_map(|(a, b, op)| Arith::Bin(op, Box::new(a), Box::new(b), Pos::default()))
    })
}

pub fn formula(primes: bool) -> impl Strategy<Value = Formula> {
    let rel = prop_oneof![
        Just(RelOp::Lt),
        Just(RelOp::Gt),
        Just(RelOp::Le),
        Just(RelOp::Ge),
        Just(RelOp::Eq),
        Just(RelOp::Ne)
    ];
    let leaf = prop_oneof![
        any::<bool>().prop_map(Formula::Const),
        (0usize..2, any::<bool>()).prop_map(move |(v, p)| Formula::Prop(var_ref(v, p && primes))),
        (rel, arith(primes), arith(primes)).prop_map(|(op, a, b)| Formula::Rel(op, a, b)),
    ];
    leaf.prop_recursive(4, 24, 3, |inner| {
        let conn = prop_oneof![
            Just(Conn::And),
            Just(Conn::Or),
            Just(Conn::Implies),
            Just(Conn::Iff)
        ];
        prop_oneof![
            inner.clone().prop_map(|f| !f),
            (conn, inner.clone(), inner.clone()).prop_map(|(c, a, b)| Formula::Bin(
                c,
                Box::new(a),
                Box::new(b)
            )),
            (inner.clone(), inner.clone(), inner).prop_map(|(c, t, e)| Formula::Ite(
                Box::new(c),
                Box::new(t),
                Box::new(e)
            )),
        ]
    })
}
