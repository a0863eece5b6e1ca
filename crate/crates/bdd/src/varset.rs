use std::fmt;

use crate::{BddError, Result, Var};

/// A set of decision variables, stored as a bitset.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct VarSet {
    words: Vec<u64>,
}

impl VarSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, var: Var) {
        let (w, b) = (var as usize / 64, var % 64);
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        self.words[w] |= 1 << b;
    }

    pub fn remove(&mut self, var: Var) {
        let (w, b) = (var as usize / 64, var % 64);
        if let Some(word) = self.words.get_mut(w) {
            *word &= !(1 << b);
        }
    }

    pub fn contains(&self, var: Var) -> bool {
        let (w, b) = (var as usize / 64, var % 64);
        self.words.get(w).is_some_and(|word| word & (1 << b) != 0)
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Largest member, if any.
    pub fn max(&self) -> Option<Var> {
        self.words
            .iter()
            .enumerate()
            .rev()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| (i * 64 + 63 - w.leading_zeros() as usize) as Var)
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = Var> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros();
                w &= w - 1;
                Some((i * 64) as Var + b)
            })
        })
    }

    pub fn union(&self, other: &VarSet) -> VarSet {
        let n = self.words.len().max(other.words.len());
        let words = (0..n)
            .map(|i| {
                self.words.get(i).copied().unwrap_or(0) | other.words.get(i).copied().unwrap_or(0)
            })
            .collect();
        VarSet { words }
    }

    pub fn intersects(&self, other: &VarSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn is_subset(&self, other: &VarSet) -> bool {
        self.words
            .iter()
            .enumerate()
            .all(|(i, w)| w & !other.words.get(i).copied().unwrap_or(0) == 0)
    }
}

impl FromIterator<Var> for VarSet {
    fn from_iter<I: IntoIterator<Item = Var>>(iter: I) -> Self {
        let mut set = VarSet::new();
        for v in iter {
            set.insert(v);
        }
        set
    }
}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Disjoint `(from, to)` variable pairs used for substitution.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VarPairing {
    pairs: Vec<(Var, Var)>,
}

impl VarPairing {
    /// Builds a pairing; every variable may occur in at most one pair.
    pub fn new(pairs: impl IntoIterator<Item = (Var, Var)>) -> Result<Self> {
        let pairs: Vec<_> = pairs.into_iter().collect();
        let mut seen = VarSet::new();
        for &(from, to) in &pairs {
            for v in [from, to] {
                if seen.contains(v) {
                    return Err(BddError::PairingOverlap { var: v });
                }
                seen.insert(v);
            }
        }
        Ok(Self { pairs })
    }

    pub fn pairs(&self) -> &[(Var, Var)] {
        &self.pairs
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// The same pairs with direction swapped.
    pub fn inverse(&self) -> VarPairing {
        VarPairing {
            pairs: self.pairs.iter().map(|&(a, b)| (b, a)).collect(),
        }
    }

    pub fn from_vars(&self) -> VarSet {
        self.pairs.iter().map(|p| p.0).collect()
    }

    pub fn to_vars(&self) -> VarSet {
        self.pairs.iter().map(|p| p.1).collect()
    }
}
