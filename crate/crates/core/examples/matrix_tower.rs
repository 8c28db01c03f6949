// Stage matrices, standard embeddings, normalized trace and truncation.

use std::error::Error;

use bigcell::supernat::Natural;
use bigcell::tower::{
    normalized_trace, slot_assignment, standard_embedding, truncate, Component, ComponentAlgebra,
    SlotLayout, TowerMatrix,
};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let six = SlotLayout::new(6)?;
    let twelve = SlotLayout::new(12)?;
    println!("slots of 12: {:?}", twelve.slots());
    println!("6 -> 12 slot map: {:?}", slot_assignment(&six, &twelve)?);

    let e01 = TowerMatrix::unit(SlotLayout::new(2)?, 0, 1);
    let rho = standard_embedding(&e01, 4)?;
    println!("rho_2,4(e01) = {rho}");

    let x: TowerMatrix = "1 2; 3 1/2".parse()?;
    let far = standard_embedding(&x, 12)?;
    println!("tr'(x) = {}, tr'(rho_2,12(x)) = {}", normalized_trace(&x), normalized_trace(&far));
    assert_eq!(normalized_trace(&x), normalized_trace(&far));

    let a = ComponentAlgebra::new(vec![
        Component { degree: Natural::from_u64(2)?, center: "Q".into() },
        Component { degree: Natural::from_u64(3)?, center: "Q".into() },
    ])?;
    let t = truncate(&a, &"2^inf".parse()?);
    println!("degrees kept at 2^inf: {:?}", t.degrees());
    println!("truncation at 5 is zero: {}", truncate(&a, &"5".parse()?).is_zero());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("matrix tower example");
}
