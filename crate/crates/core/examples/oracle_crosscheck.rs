// The exact solver against brute force over a bounded universe.

use std::error::Error;

use bigcell::oracle::{self, corpus, BoundedUniverse, PredicateSet};
use bigcell::site::is_cover;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let universe = BoundedUniverse::default();
    println!("universe {universe}: {} elements", universe.enumerate()?.len());

    let patches = corpus::patches(7, 20);
    let sieves = corpus::sieves(8, 50, 3);
    let mut agree = 0;
    for p in &patches {
        let restricted = oracle::restrict(p, &universe);
        let set = PredicateSet::from_patch(p.clone());
        for s in &sieves {
            let fast = is_cover(s, &restricted)?;
            let slow = oracle::naive_cover(s.base(), s.generators(), &set, &universe)?;
            assert_eq!(fast, slow, "{p} / {s}");
            agree += 1;
        }
    }
    println!("{agree} cover judgments agree");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("oracle crosscheck example");
}
