/// Direct-mapped, lossy memo table for binary and ternary operations.
///
/// A slot is overwritten on collision, so a lookup may miss a result that was
/// computed earlier; it never returns a wrong one.
pub(crate) struct OpCache {
    slots: Vec<Slot>,
    mask: usize,
}

#[derive(Clone, Copy, Default)]
struct Slot {
    // 0 marks an empty slot
    tag: u32,
    a: u32,
    b: u32,
    c: u32,
    result: u32,
}

const MIN_BITS: u32 = 12;
const MAX_BITS: u32 = 22;

impl OpCache {
    pub(crate) fn new() -> Self {
        Self::with_bits(MIN_BITS)
    }

    fn with_bits(bits: u32) -> Self {
        let len = 1usize << bits;
        OpCache {
            slots: vec![Slot::default(); len],
            mask: len - 1,
        }
    }

    fn index(&self, tag: u32, a: u32, b: u32, c: u32) -> usize {
        let mut h = (tag as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
        h ^= (a as u64).wrapping_mul(0xC2B2_AE3D_27D4_EB4F);
        h = h.rotate_left(23) ^ (b as u64).wrapping_mul(0x1656_67B1_9E37_79F9);
        h = h.rotate_left(17) ^ (c as u64).wrapping_mul(0x85EB_CA77_C2B2_AE63);
        (h ^ (h >> 29)) as usize & self.mask
    }

    pub(crate) fn get(&self, tag: u32, a: u32, b: u32, c: u32) -> Option<u32> {
        let s = &self.slots[self.index(tag, a, b, c)];
        (s.tag == tag && s.a == a && s.b == b && s.c == c).then_some(s.result)
    }

    pub(crate) fn put(&mut self, tag: u32, a: u32, b: u32, c: u32, result: u32) {
        let i = self.index(tag, a, b, c);
        self.slots[i] = Slot {
            tag,
            a,
            b,
            c,
            result,
        };
    }

    /// Grows the table (dropping its contents) once the node store outgrows it.
    pub(crate) fn fit_to(&mut self, node_count: usize) {
        let bits = self.mask.count_ones();
        if bits < MAX_BITS && node_count > 2 * self.slots.len() {
            let wanted = (usize::BITS - node_count.leading_zeros()).clamp(MIN_BITS, MAX_BITS);
            *self = Self::with_bits(wanted);
        }
    }
}
