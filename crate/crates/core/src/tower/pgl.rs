use std::fmt;
use std::hash::{Hash, Hasher};


use super::matrix::invert;
use super::{standard_embedding, SlotLayout, TowerError, TowerMatrix};

/// An invertible stage matrix, read modulo nonzero scalars.
#[derive(Debug, Clone)]
pub struct PglElement {
    matrix: TowerMatrix,
    inverse: TowerMatrix,
}

impl PglElement {
    pub fn new(matrix: TowerMatrix) -> Result<Self, TowerError> {
        let inv = invert(&matrix.to_dense()).ok_or(TowerError::Singular)?;
        let inverse = TowerMatrix::from_dense(matrix.layout().clone(), inv)?;
        Ok(PglElement { matrix, inverse })
    }

    pub fn identity(layout: SlotLayout) -> Self {
        let id = TowerMatrix::identity(layout);
        PglElement {
            matrix: id.clone(),
            inverse: id,
        }
    }

    pub fn matrix(&self) -> &TowerMatrix {
        &self.matrix
    }

    pub fn stage(&self) -> &SlotLayout {
        self.matrix.layout()
    }

    pub fn inverse(&self) -> PglElement {
        PglElement {
            matrix: self.inverse.clone(),
            inverse: self.matrix.clone(),
        }
    }

    pub fn compose(&self, other: &PglElement) -> Result<PglElement, TowerError> {
        Ok(PglElement {
            matrix: self.matrix.mul(&other.matrix)?,
            inverse: other.inverse.mul(&self.inverse)?,
        })
    }

    /// Conjugation `g x g⁻¹`.
    pub fn act(&self, x: &TowerMatrix) -> Result<TowerMatrix, TowerError> {
        self.matrix.mul(x)?.mul(&self.inverse)
    }

    /// The representative whose first nonzero entry (row-major) is 1.
    pub fn normalized(&self) -> TowerMatrix {
        let lead = self
            .matrix
            .entries()
            .next()
            .map(|(_, v)| v.clone())
            .expect("invertible matrices are nonzero");
        self.matrix.scale(&lead.recip())
    }

    pub fn is_identity(&self) -> bool {
        self.normalized() == TowerMatrix::identity(self.stage().clone())
    }
}

impl PartialEq for PglElement {
    fn eq(&self, other: &Self) -> bool {
        self.stage() == other.stage() && self.normalized() == other.normalized()
    }
}

impl Eq for PglElement {}

impl Hash for PglElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.normalized().hash(state);
    }
}

impl fmt::Display for PglElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.normalized())
    }
}

/// `g ∼_n h`: both act the same way on `ρ_{n,m}(M_n)`, which holds iff
/// `g⁻¹h` commutes with that image. The units `e_{i,i+1}` and `e_{i+1,i}`
/// generate `M_n` as an algebra, so commuting with their images suffices.
pub fn pgl_equiv_n(g: &PglElement, h: &PglElement, n: u64) -> Result<bool, TowerError> {
    if g.stage() != h.stage() {
        return Err(TowerError::StageMismatch {
            left: g.stage().n(),
            right: h.stage().n(),
        });
    }
    let m = g.stage().n();
    let small = SlotLayout::new(n)?;
    if !m.is_multiple_of(n) {
        return Err(TowerError::NotDivisible { n, m });
    }
    let q = g.inverse.mul(&h.matrix)?;
    for i in 1..small.dim() {
        for (a, b) in [(i - 1, i), (i, i - 1)] {
            let u = standard_embedding(&TowerMatrix::unit(small.clone(), a, b), m)?;
            if q.mul(&u)? != u.mul(&q)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn layout(n: u64) -> SlotLayout {
        SlotLayout::new(n).unwrap()
    }

    fn int(n: u64, rows: &[Vec<i64>]) -> TowerMatrix {
        TowerMatrix::from_integers(layout(n), rows).unwrap()
    }

    #[test]
    fn scalar_equality() {
        let a = PglElement::new(int(2, &[vec![1, 1], vec![0, 1]])).unwrap();
        let b = PglElement::new(int(2, &[vec![3, 3], vec![0, 3]])).unwrap();
        assert_eq!(a, b);
        assert!(PglElement::new(int(2, &[vec![3, 0], vec![0, 3]])).unwrap().is_identity());
        assert!(PglElement::new(int(2, &[vec![1, 2], vec![2, 4]])).is_err());
        assert!(a.compose(&a.inverse()).unwrap().is_identity());
    }

    #[test]
    fn centralizer_element_is_equivalent() {
        // I_2 ⊗ h with h = [[1,1],[0,1]]
        let g = PglElement::new(int(
            4,
            &[
                vec![1, 1, 0, 0],
                vec![0, 1, 0, 0],
                vec![0, 0, 1, 1],
                vec![0, 0, 0, 1],
            ],
        ))
        .unwrap();
        let one = PglElement::identity(layout(4));
        assert!(pgl_equiv_n(&g, &one, 2).unwrap());
        assert!(!pgl_equiv_n(&g, &one, 4).unwrap());
    }

    #[test]
    fn slot_swap_is_not() {
        let swap = PglElement::new(int(
            4,
            &[
                vec![1, 0, 0, 0],
                vec![0, 0, 1, 0],
                vec![0, 1, 0, 0],
                vec![0, 0, 0, 1],
            ],
        ))
        .unwrap();
        let one = PglElement::identity(layout(4));
        assert!(!pgl_equiv_n(&swap, &one, 2).unwrap());
        assert!(pgl_equiv_n(&swap, &one, 1).unwrap());
        assert!(pgl_equiv_n(&swap, &one, 3).is_err());
    }
}
