// Conjugating one embedding M_n -> M_m onto another, and the relations ~_n.

use std::error::Error;

use bigcell::tower::{
    pgl_equiv_n, skolem_noether_conjugator, EmbeddingData, PglElement, SlotLayout, TowerMatrix,
};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let phi = EmbeddingData::standard(2, 4)?;
    let p = PglElement::new("1 1 0 0; 0 1 0 2; 0 0 1 0; 1 0 0 1".parse()?)?;
    let psi = phi.conjugated(&p)?;
    let g = skolem_noether_conjugator(&phi, &psi)?;
    println!("conjugator: {g}");
    for i in 0..2 {
        for j in 0..2 {
            assert_eq!(g.act(phi.image(i, j))?, *psi.image(i, j));
        }
    }

    // I_2 ⊗ h commutes with the embedded M_2
    let h: TowerMatrix = "1 1 0 0; 0 1 0 0; 0 0 1 1; 0 0 0 1".parse()?;
    let h = PglElement::new(h)?;
    let one = PglElement::identity(SlotLayout::new(4)?);
    println!("h ~_2 1: {}", pgl_equiv_n(&h, &one, 2)?);
    println!("h ~_4 1: {}", pgl_equiv_n(&h, &one, 4)?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("skolem-noether example");
}
