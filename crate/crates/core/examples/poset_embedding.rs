// Order embeddings of finite posets into divisibility.

use std::error::Error;

use bigcell::poset::{embed_poset, posets_up_to_iso, verify_embedding, FinitePoset};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let diamond = FinitePoset::parse("bot < l < top\nbot < r < top")?;
    let e = embed_poset(&diamond);
    for (label, n) in &e.map {
        println!("{label} -> {n}");
    }
    assert!(verify_embedding(&diamond, &e));

    let mut total = 0;
    for k in 0..=4 {
        let all = posets_up_to_iso(k);
        assert!(all.iter().all(|p| verify_embedding(p, &embed_poset(p))));
        total += all.len();
    }
    println!("embedded all {total} posets on at most 4 elements");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("poset embedding example");
}
