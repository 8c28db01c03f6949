use num_rational::BigRational;

use super::matrix::{dense_mul_vec, invert, rref};
use super::{standard_embedding, PglElement, SlotLayout, TowerError, TowerMatrix};

/// A unital algebra map `M_n → M_m`, given by the images of the `n²`
/// matrix units (`images[i * n + j]` is the image of `e_{ij}`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingData {
    source: SlotLayout,
    target: SlotLayout,
    images: Vec<TowerMatrix>,
}

impl EmbeddingData {
    /// Checks `φ(e_{i0})φ(e_{0j}) = φ(e_{ij})`, `φ(e_{0i})φ(e_{j0}) = δ_{ij}φ(e_{00})`
    /// and `Σ φ(e_{ii}) = 1`, which together force full multiplicativity.
    pub fn new(n: u64, images: Vec<TowerMatrix>) -> Result<Self, TowerError> {
        let source = SlotLayout::new(n)?;
        let d = source.dim();
        if images.len() != d * d {
            return Err(TowerError::NotAnEmbedding(format!(
                "expected {} unit images, got {}",
                d * d,
                images.len()
            )));
        }
        let target = images[0].layout().clone();
        if !target.n().is_multiple_of(n) {
            return Err(TowerError::NotDivisible { n, m: target.n() });
        }
        if let Some(bad) = images.iter().find(|x| x.layout() != &target) {
            return Err(TowerError::StageMismatch {
                left: target.n(),
                right: bad.layout().n(),
            });
        }
        let at = |i: usize, j: usize| &images[i * d + j];
        let zero = TowerMatrix::zeros(target.clone());
        let mut sum = zero.clone();
        for i in 0..d {
            sum = sum.add(at(i, i))?;
            for j in 0..d {
                if at(i, 0).mul(at(0, j))? != *at(i, j) {
                    return Err(TowerError::NotAnEmbedding(format!(
                        "image of e{i}0 times image of e0{j} is not the image of e{i}{j}"
                    )));
                }
                let expect = if i == j { at(0, 0) } else { &zero };
                if at(0, i).mul(at(j, 0))? != *expect {
                    return Err(TowerError::NotAnEmbedding(format!(
                        "image of e0{i} times image of e{j}0 is wrong"
                    )));
                }
            }
        }
        if sum != TowerMatrix::identity(target.clone()) {
            return Err(TowerError::NotAnEmbedding("not unital".into()));
        }
        Ok(EmbeddingData {
            source,
            target,
            images,
        })
    }

    pub fn standard(n: u64, m: u64) -> Result<Self, TowerError> {
        let source = SlotLayout::new(n)?;
        let mut images = Vec::with_capacity(source.dim() * source.dim());
        for i in 0..source.dim() {
            for j in 0..source.dim() {
                images.push(standard_embedding(&TowerMatrix::unit(source.clone(), i, j), m)?);
            }
        }
        Self::new(n, images)
    }

    /// `g φ(·) g⁻¹`.
    pub fn conjugated(&self, g: &PglElement) -> Result<Self, TowerError> {
        let images = self.images.iter().map(|x| g.act(x)).collect::<Result<_, _>>()?;
        Self::new(self.source.n(), images)
    }

    pub fn source(&self) -> &SlotLayout {
        &self.source
    }

    pub fn target(&self) -> &SlotLayout {
        &self.target
    }

    pub fn image(&self, i: usize, j: usize) -> &TowerMatrix {
        &self.images[i * self.source.dim() + j]
    }

    pub fn images(&self) -> &[TowerMatrix] {
        &self.images
    }

    /// Columns `φ(e_{i0}) v_t`, where `v_t` are the pivot columns of `φ(e_{00})`.
    fn adapted_basis(&self) -> Vec<Vec<BigRational>> {
        let e = self.image(0, 0).to_dense();
        let mut reduced = e.clone();
        let pivots = rref(&mut reduced);
        let mut columns = Vec::with_capacity(self.target.dim());
        for i in 0..self.source.dim() {
            let lift = self.image(i, 0).to_dense();
            for &c in &pivots {
                let v: Vec<BigRational> = e.iter().map(|row| row[c].clone()).collect();
                columns.push(dense_mul_vec(&lift, &v));
            }
        }
        columns
    }
}

/// Some `g` with `g φ(u) g⁻¹ = ψ(u)` for every matrix unit `u`.
pub fn skolem_noether_conjugator(
    phi: &EmbeddingData,
    psi: &EmbeddingData,
) -> Result<PglElement, TowerError> {
    if phi.source != psi.source || phi.target != psi.target {
        return Err(TowerError::StageMismatch {
            left: phi.target.n(),
            right: psi.target.n(),
        });
    }
    let d = phi.target.dim();
    let as_matrix = |cols: Vec<Vec<BigRational>>| -> Result<Vec<Vec<BigRational>>, TowerError> {
        if cols.len() != d {
            return Err(TowerError::VerificationFailed);
        }
        Ok((0..d).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect())
    };
    let v = as_matrix(phi.adapted_basis())?;
    let w = as_matrix(psi.adapted_basis())?;
    let v_inv = invert(&v).ok_or(TowerError::VerificationFailed)?;
    let layout = phi.target.clone();
    let g = TowerMatrix::from_dense(layout.clone(), w)?
        .mul(&TowerMatrix::from_dense(layout, v_inv)?)?;
    let g = PglElement::new(g).map_err(|_| TowerError::VerificationFailed)?;
    for (a, b) in phi.images.iter().zip(&psi.images) {
        if g.matrix().mul(a)? != b.mul(g.matrix())? {
            return Err(TowerError::VerificationFailed);
        }
    }
    Ok(g)
}
