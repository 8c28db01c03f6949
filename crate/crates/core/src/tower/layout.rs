use serde::{Deserialize, Serialize};

use super::TowerError;

/// The prime factors `p_1 ≤ ⋯ ≤ p_k` of a stage `n`, one slot per factor,
/// so that `M_n = M_{p_1} ⊗ ⋯ ⊗ M_{p_k}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SlotLayout {
    n: u64,
    slots: Vec<u64>,
}

impl SlotLayout {
    pub fn new(n: u64) -> Result<Self, TowerError> {
        if n == 0 {
            return Err(TowerError::ZeroStage);
        }
        let mut slots = Vec::new();
        let mut rest = n;
        let mut d = 2u64;
        while d * d <= rest {
            while rest.is_multiple_of(d) {
                slots.push(d);
                rest /= d;
            }
            d += 1;
        }
        if rest > 1 {
            slots.push(rest);
        }
        Ok(SlotLayout { n, slots })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.n as usize
    }

    pub fn slots(&self) -> &[u64] {
        &self.slots
    }

    /// Basis tuple of a linear index, leftmost slot most significant.
    pub fn tuple(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.slots.len()];
        for (k, &p) in self.slots.iter().enumerate().rev() {
            out[k] = index % p as usize;
            index /= p as usize;
        }
        out
    }

    pub fn index(&self, tuple: &[usize]) -> usize {
        tuple
            .iter()
            .zip(&self.slots)
            .fold(0, |acc, (&a, &p)| acc * p as usize + a)
    }
}

/// For `n ∣ m`, sends the `k`-th occurrence of each prime among the slots of
/// `n` to the `k`-th occurrence of that prime among the slots of `m`.
/// Entry `i` of the result is the target slot of source slot `i`.
pub fn slot_assignment(n: &SlotLayout, m: &SlotLayout) -> Result<Vec<usize>, TowerError> {
    if !m.n.is_multiple_of(n.n) {
        return Err(TowerError::NotDivisible { n: n.n, m: m.n });
    }
    let mut out = Vec::with_capacity(n.slots.len());
    let mut cursor = 0usize;
    for (i, &p) in n.slots.iter().enumerate() {
        // same prime as the previous source slot: continue after its target
        if i == 0 || n.slots[i - 1] != p {
            cursor = 0;
        }
        let target = (cursor..m.slots.len())
            .find(|&j| m.slots[j] == p)
            .expect("n divides m, so m has enough copies of p");
        out.push(target);
        cursor = target + 1;
    }
    Ok(out)
}
