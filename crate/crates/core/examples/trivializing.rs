// When is the Zariski topology induced by K_S trivializing?

use std::error::Error;

use bigcell::site::is_trivializing_zariski;
use bigcell::spectral::PatchExpr;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for text in ["specz", "powersetprimes", "multiples:2^inf", "divclosure:2^inf*3^inf", "notabove:6"] {
        let patch: PatchExpr = text.parse()?;
        println!("{text:>24}: {}", is_trivializing_zariski(&patch)?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("trivializing example");
}
