// Covering sieves for K_S, pullbacks and finite subcovers.

use std::error::Error;

use bigcell::site::{finite_subcover, is_cover, pullback, uncovered_witness, Sieve};
use bigcell::spectral::PatchExpr;
use bigcell::supernat::Natural;

fn nat(n: u64) -> Natural {
    Natural::from_u64(n).unwrap()
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    // multiples of 2^inf*3^inf: {m} covers n iff m/n only involves 2 and 3
    let patch: PatchExpr = "multiples:2^inf*3^inf".parse()?;
    for m in [12, 20, 36] {
        let sieve = Sieve::new(nat(2), vec![nat(m)])?;
        println!("{sieve} covers: {}", is_cover(&sieve, &patch)?);
    }

    let sieve: Sieve = "base:1 gens:2".parse()?;
    let witness = uncovered_witness(&sieve, &PatchExpr::SpecZ)?;
    println!("{sieve} on spec(Z): uncovered by {}", witness.expect("the point prime to 2"));

    let patch: PatchExpr = "divclosure:2^inf*3^inf".parse()?;
    let sieve: Sieve = "base:1 gens:2,3,4,6,1".parse()?;
    let sub = finite_subcover(&sieve, &patch)?;
    println!("subcover of {sieve}: {sub:?}");

    let back = pullback(&sieve, &nat(10))?;
    println!("pulled back along 10: {back}, covers: {}", is_cover(&back, &patch)?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("covering sieves example");
}
