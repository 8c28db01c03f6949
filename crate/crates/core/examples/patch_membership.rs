// Patch expressions, membership and trace witnesses.

use std::error::Error;

use bigcell::spectral::{member, trace_nonempty_witness, PatchExpr};
use bigcell::supernat::{Natural, Supernatural};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let patch: PatchExpr = "union(specz,multiples:2^inf*3,fgopen:(4,9))".parse()?;
    println!("compact: {patch}");
    println!("json:    {}", patch.to_json());
    let again = PatchExpr::from_json(&patch.to_json().to_string())?;
    assert_eq!(again, patch);

    for s in ["2^0;default=inf", "2^inf*3", "6", "12"] {
        let s: Supernatural = s.parse()?;
        println!("{s:>18} in patch: {}", member(&s, &patch));
    }

    // an element of spec(Z) divisible by 1 but not by 6
    let w = trace_nonempty_witness(&Natural::one(), &PatchExpr::SpecZ, &[Natural::from_u64(6)?])?;
    println!("witness avoiding 6: {}", w.as_ref().map_or("none".into(), |w| w.to_string()));
    assert!(w.is_some());

    match "union(specz,bogus)".parse::<PatchExpr>() {
        Err(e) => println!("parse error: {e}"),
        Ok(_) => unreachable!("bogus is not a leaf"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("patch membership example");
}
