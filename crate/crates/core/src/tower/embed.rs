use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{slot_assignment, SlotLayout, TowerError, TowerMatrix};

/// `ρ_{n,m}(x)`: the entry at `(R, C)` is `x` at the assigned sub-tuples of
/// `R` and `C`, times the Kronecker delta on the free slots.
pub fn standard_embedding(x: &TowerMatrix, m: u64) -> Result<TowerMatrix, TowerError> {
    let source = x.layout();
    let target = SlotLayout::new(m)?;
    let assigned = slot_assignment(source, &target)?;
    if source == &target {
        return Ok(x.clone());
    }
    let mut is_assigned = vec![false; target.slots().len()];
    for &t in &assigned {
        is_assigned[t] = true;
    }
    let free: Vec<usize> = (0..target.slots().len()).filter(|&s| !is_assigned[s]).collect();
    let free_count: usize = free.iter().map(|&s| target.slots()[s] as usize).product();

    let mut entries = BTreeMap::new();
    let mut row = vec![0usize; target.slots().len()];
    let mut col = vec![0usize; target.slots().len()];
    for ((i, j), v) in x.entries() {
        let ti = source.tuple(*i);
        let tj = source.tuple(*j);
        for (k, &t) in assigned.iter().enumerate() {
            row[t] = ti[k];
            col[t] = tj[k];
        }
        for mut f in 0..free_count {
            for &s in free.iter().rev() {
                let p = target.slots()[s] as usize;
                row[s] = f % p;
                col[s] = f % p;
                f /= p;
            }
            entries.insert((target.index(&row), target.index(&col)), v.clone());
        }
    }
    Ok(TowerMatrix::from_entries(target, entries))
}

/// `tr'(x) = tr(x) / n`, so that `tr'(1) = 1` at every stage.
pub fn normalized_trace(x: &TowerMatrix) -> BigRational {
    x.trace() / BigRational::from_integer(BigInt::from(x.dim()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};

    fn layout(n: u64) -> SlotLayout {
        SlotLayout::new(n).unwrap()
    }

    #[test]
    fn rho_2_4_of_e01() {
        let x = TowerMatrix::unit(layout(2), 0, 1);
        let y = standard_embedding(&x, 4).unwrap();
        let ones: Vec<_> = y.entries().map(|(k, _)| *k).collect();
        assert_eq!(ones, vec![(0, 2), (1, 3)]);
    }

    #[test]
    fn unital_and_identity_on_same_stage() {
        let id = TowerMatrix::identity(layout(3));
        assert_eq!(standard_embedding(&id, 12).unwrap(), TowerMatrix::identity(layout(12)));
        let x = TowerMatrix::unit(layout(6), 2, 5);
        assert_eq!(standard_embedding(&x, 6).unwrap(), x);
        assert!(standard_embedding(&x, 8).is_err());
    }

    #[test]
    fn functoriality_2_6_12() {
        for i in 0..2 {
            for j in 0..2 {
                let u = TowerMatrix::unit(layout(2), i, j);
                let two_step = standard_embedding(&standard_embedding(&u, 6).unwrap(), 12).unwrap();
                assert_eq!(two_step, standard_embedding(&u, 12).unwrap());
            }
        }
    }

    #[test]
    fn traces() {
        assert!(normalized_trace(&TowerMatrix::identity(layout(6))).is_one());
        let e = TowerMatrix::unit(layout(2), 0, 0);
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(normalized_trace(&e), half);
        assert_eq!(normalized_trace(&standard_embedding(&e, 4).unwrap()), half);
        assert!(normalized_trace(&TowerMatrix::zeros(layout(5))).is_zero());
    }
}
