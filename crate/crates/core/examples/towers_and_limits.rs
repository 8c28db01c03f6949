// Divisibility towers, pcfb limits and cofinal chains.

use std::error::Error;

use bigcell::site::tower_supernatural;
use bigcell::spectral::{cofinal_chain, pcfb_limit, GeometricTail, SequenceSpec};
use bigcell::supernat::{Natural, Supernatural};

fn nat(n: u64) -> Natural {
    Natural::from_u64(n).unwrap()
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let s: Supernatural = "2^inf*3".parse()?;
    let chain = cofinal_chain(&s, 4)?;
    println!("cofinal chain of {s}: {chain:?}");

    let tail = GeometricTail { base: chain.last().unwrap().clone(), ratio: nat(2) };
    let back = tower_supernatural(&chain, Some(tail))?;
    println!("tower limit: {back}");
    assert_eq!(back, s);

    // 3, 6, 12, 24, ...
    let seq = SequenceSpec::with_tail(vec![], nat(3), nat(2));
    println!("limit of 3*2^j: {}", pcfb_limit(&seq)?);

    // 2, 3, 2, 3, ... has no limit
    let bad = SequenceSpec::finite(vec![nat(2), nat(3)]);
    println!("limit of 2,3: {:?}", pcfb_limit(&bad).err());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("towers example");
}
