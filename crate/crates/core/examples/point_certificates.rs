// Deciding which supernatural numbers are points of the K_S topos.

use std::error::Error;

use bigcell::site::{point_certificate, PointCertificate};
use bigcell::spectral::PatchExpr;
use bigcell::supernat::Supernatural;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let patch = PatchExpr::SpecZ;
    for s in ["2^0;default=inf", "2^inf", "6", "1"] {
        let s: Supernatural = s.parse()?;
        let cert = point_certificate(&s, &patch)?;
        match &cert {
            PointCertificate::Member => println!("{s}: member"),
            PointCertificate::NonPoint { n, family } => {
                println!("{s}: not a point, covering family {family:?} on {n}")
            }
        }
        assert!(cert.verify(&s, &patch)?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("point certificates example");
}
