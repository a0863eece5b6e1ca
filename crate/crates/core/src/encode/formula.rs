use crate::bdd::{BddManager, NodeRef};
use crate::nadl::{Arith, ArithOp, Conn, Formula, RelOp};

use super::{BitVector, EncodeError, Encoding, Result};

pub fn encode_arith(mgr: &mut BddManager, enc: &Encoding, e: &Arith) -> Result<BitVector> {
    match e {
        Arith::Num(n) => Ok(BitVector::constant(mgr, *n)),
        Arith::Var(r) => {
            let v = &enc.vars[r.var];
            let bits = if r.primed { &v.next } else { &v.cur };
            let bits = bits
                .iter()
                .map(|&b| mgr.var(b))
                .collect::<crate::bdd::Result<_>>()?;
            Ok(BitVector::unsigned(bits))
        }
        Arith::Bin(op, a, b, pos) => {
            let (a, b) = (encode_arith(mgr, enc, a)?, encode_arith(mgr, enc, b)?);
            match op {
                ArithOp::Add => BitVector::add(mgr, &a, &b),
                ArithOp::Sub => BitVector::sub(mgr, &a, &b),
                _ => Err(EncodeError::Unsupported { op: *op, pos: *pos }),
            }
        }
    }
}

pub fn encode_formula(mgr: &mut BddManager, enc: &Encoding, f: &Formula) -> Result<NodeRef> {
    Ok(match f {
        Formula::Const(b) => mgr.constant(*b),
        Formula::Prop(r) => {
            let v = &enc.vars[r.var];
            mgr.var(if r.primed { v.next[0] } else { v.cur[0] })?
        }
        Formula::Rel(op, a, b) => {
            let (a, b) = (encode_arith(mgr, enc, a)?, encode_arith(mgr, enc, b)?);
            match op {
                RelOp::Eq => BitVector::eq(mgr, &a, &b)?,
                RelOp::Ne => {
                    let eq = BitVector::eq(mgr, &a, &b)?;
                    mgr.not(eq)?
                }
                RelOp::Lt => BitVector::lt(mgr, &a, &b)?,
                RelOp::Gt => BitVector::lt(mgr, &b, &a)?,
                RelOp::Le => {
                    let gt = BitVector::lt(mgr, &b, &a)?;
                    mgr.not(gt)?
                }
                RelOp::Ge => {
                    let lt = BitVector::lt(mgr, &a, &b)?;
                    mgr.not(lt)?
                }
            }
        }
        Formula::Not(a) => {
            let a = encode_formula(mgr, enc, a)?;
            mgr.not(a)?
        }
        Formula::Bin(c, a, b) => {
            let (a, b) = (encode_formula(mgr, enc, a)?, encode_formula(mgr, enc, b)?);
            match c {
                Conn::And => mgr.and(a, b)?,
                Conn::Or => mgr.or(a, b)?,
                Conn::Implies => mgr.implies(a, b)?,
                Conn::Iff => mgr.iff(a, b)?,
            }
        }
        Formula::Ite(c, t, e) => {
            let c = encode_formula(mgr, enc, c)?;
            let t = encode_formula(mgr, enc, t)?;
            let e = encode_formula(mgr, enc, e)?;
            mgr.ite(c, t, e)?
        }
    })
}

/// Codes of state variable `var` (current or next copy) that denote a value.
pub fn range_constraint(
    mgr: &mut BddManager,
    enc: &Encoding,
    var: usize,
    next: bool,
) -> Result<NodeRef> {
    let v = &enc.vars[var];
    if v.range == 1 << v.cur.len() {
        return Ok(mgr.one());
    }
    let bits = if next { &v.next } else { &v.cur };
    let bits = bits
        .iter()
        .map(|&b| mgr.var(b))
        .collect::<crate::bdd::Result<_>>()?;
    let limit = BitVector::constant(mgr, v.range);
    BitVector::lt(mgr, &BitVector::unsigned(bits), &limit)
}
