// Checking matrix assignments against an algebra presentation.

use std::collections::BTreeMap;
use std::error::Error;

use bigcell::tower::{check_representation, push_assignment, AlgebraPresentation, TowerMatrix};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let involution: AlgebraPresentation = "<x | x^2 - 1>".parse()?;
    let mut values = BTreeMap::new();
    values.insert("x".to_string(), "1 0; 0 -1".parse::<TowerMatrix>()?);
    println!("{involution} at stage 2: {}", check_representation(&involution, &values)?);
    let pushed = push_assignment(&values, 6)?;
    println!("pushed to stage 6: {}", check_representation(&involution, &pushed)?);

    let sl2: AlgebraPresentation = "<e, f, h | e*f - f*e - h, h*e - e*h - 2*e>".parse()?;
    let mut values = BTreeMap::new();
    values.insert("e".to_string(), "0 1; 0 0".parse::<TowerMatrix>()?);
    values.insert("f".to_string(), "0 0; 1 0".parse::<TowerMatrix>()?);
    values.insert("h".to_string(), "1 0; 0 -1".parse::<TowerMatrix>()?);
    assert!(check_representation(&sl2, &values)?);
    println!("{sl2}: true");

    // [x, y] = 1 has no finite dimensional solutions; trace rules it out
    let weyl: AlgebraPresentation = "<x, y | x*y - y*x - 1>".parse()?;
    let mut values = BTreeMap::new();
    values.insert("x".to_string(), "0 1; 0 0".parse::<TowerMatrix>()?);
    values.insert("y".to_string(), "0 0; 1 0".parse::<TowerMatrix>()?);
    println!("{weyl}: {}", check_representation(&weyl, &values)?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("representations example");
}
