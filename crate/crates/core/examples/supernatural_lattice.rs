// Divisibility lattice of supernatural numbers.

use std::error::Error;

use bigcell::supernat::{Natural, Supernatural};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let a: Supernatural = "2^inf*3".parse()?;
    let b: Supernatural = "2^2*5".parse()?;
    println!("gcd({a}, {b}) = {}", a.gcd(&b));
    println!("lcm({a}, {b}) = {}", a.lcm(&b));
    assert_eq!(a.gcd(&b).to_string(), "2^2");

    // every prime at once
    let top = Supernatural::maximal();
    let s5: Supernatural = "5^0;default=inf".parse()?;
    println!("{s5} divides {top}: {}", s5.divides(&top));
    println!("{s5} completely infinite: {}", s5.is_completely_infinite());
    assert!(!top.divides(&s5));

    let v = s5.valuation(&7u32.into())?;
    println!("v_7({s5}) = {v}");

    let n = Natural::from_u64(360)?;
    println!("{n} = {:?}", n.factors());
    println!("{n} divides {a}: {}", n.divides_supernatural(&a));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("supernatural lattice example");
}
