use crate::bdd::{BddManager, NodeRef};

use super::Result;

/// Integer-valued function of the decision variables as a list of bit
/// diagrams, least significant first.
///
/// Unsigned vectors read as plain binary; signed ones as two's complement.
/// Every operation widens its result so that no value ever wraps around.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitVector {
    pub bits: Vec<NodeRef>,
    pub signed: bool,
}

impl BitVector {
    pub fn unsigned(bits: Vec<NodeRef>) -> Self {
        BitVector {
            bits,
            signed: false,
        }
    }

    /// Shortest unsigned vector holding `value`.
    pub fn constant(mgr: &BddManager, value: u64) -> Self {
        let width = (64 - value.leading_zeros()).max(1) as usize;
        let bits = (0..width)
            .map(|k| mgr.constant((value >> k) & 1 == 1))
            .collect();
        BitVector::unsigned(bits)
    }

    pub fn width(&self) -> usize {
        self.bits.len()
    }

    /// Bit `k` with zero or sign extension past the stored width.
    fn bit(&self, mgr: &BddManager, k: usize) -> NodeRef {
        match self.bits.get(k) {
            Some(&b) => b,
            None if self.signed => *self.bits.last().expect("signed vectors are nonempty"),
            None => mgr.zero(),
        }
    }

    /// Two's-complement copy of width `width`, which must be large enough.
    fn as_signed(&self, mgr: &BddManager, width: usize) -> BitVector {
        BitVector {
            bits: (0..width).map(|k| self.bit(mgr, k)).collect(),
            signed: true,
        }
    }

    /// Width of a signed vector able to hold every value of `self`.
    fn signed_width(&self) -> usize {
        self.width() + !self.signed as usize
    }

    fn ripple(
        mgr: &mut BddManager,
        a: &BitVector,
        b: &BitVector,
        width: usize,
        invert_b: bool,
    ) -> Result<Vec<NodeRef>> {
        let mut carry = mgr.constant(invert_b);
        let mut out = Vec::with_capacity(width);
        for k in 0..width {
            let x = a.bit(mgr, k);
            let mut y = b.bit(mgr, k);
            if invert_b {
                y = mgr.not(y)?;
            }
            let xy = mgr.xor(x, y)?;
            out.push(mgr.xor(xy, carry)?);
            let both = mgr.and(x, y)?;
            let prop = mgr.and(xy, carry)?;
            carry = mgr.or(both, prop)?;
        }
        Ok(out)
    }

    pub fn add(mgr: &mut BddManager, a: &BitVector, b: &BitVector) -> Result<BitVector> {
        if !a.signed && !b.signed {
            let width = a.width().max(b.width()) + 1;
            return Ok(BitVector::unsigned(Self::ripple(mgr, a, b, width, false)?));
        }
        let width = a.signed_width().max(b.signed_width()) + 1;
        let (a, b) = (a.as_signed(mgr, width), b.as_signed(mgr, width));
        Ok(BitVector {
            bits: Self::ripple(mgr, &a, &b, width, false)?,
            signed: true,
        })
    }

    /// Exact difference; the result is always signed.
    pub fn sub(mgr: &mut BddManager, a: &BitVector, b: &BitVector) -> Result<BitVector> {
        let width = a.signed_width().max(b.signed_width()) + 1;
        let (a, b) = (a.as_signed(mgr, width), b.as_signed(mgr, width));
        Ok(BitVector {
            bits: Self::ripple(mgr, &a, &b, width, true)?,
            signed: true,
        })
    }

    pub fn eq(mgr: &mut BddManager, a: &BitVector, b: &BitVector) -> Result<NodeRef> {
        let width = a.signed_width().max(b.signed_width());
        let mut f = mgr.one();
        for k in (0..width).rev() {
            let (x, y) = (a.bit(mgr, k), b.bit(mgr, k));
            let same = mgr.iff(x, y)?;
            f = mgr.and(f, same)?;
        }
        Ok(f)
    }

    /// `a < b`, as the sign of the exact difference.
    pub fn lt(mgr: &mut BddManager, a: &BitVector, b: &BitVector) -> Result<NodeRef> {
        let d = Self::sub(mgr, a, b)?;
        Ok(*d.bits.last().expect("difference is nonempty"))
    }

    /// Integer value under a full assignment.
    pub fn value(&self, mgr: &BddManager, assignment: &[bool]) -> Result<i128> {
        let mut v: i128 = 0;
        for (k, &b) in self.bits.iter().enumerate() {
            if mgr.evaluate(b, assignment)? {
                v |= 1 << k;
            }
        }
        if self.signed && v >> (self.width() - 1) & 1 == 1 {
            v -= 1 << self.width();
        }
        Ok(v)
    }
}
