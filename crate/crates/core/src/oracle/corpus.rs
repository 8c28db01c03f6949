//! Seeded random inputs over the primes `{2,3,5}` with exponents at most 2,
//! so every value lives comfortably inside the default universe.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::spectral::PatchExpr;
use crate::supernat::{DefaultExponent, Exponent, Natural, Supernatural};
use crate::site::Sieve;

const PRIMES: [u64; 3] = [2, 3, 5];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The 27 divisors of 900.
pub fn divisors_of_900() -> Vec<Natural> {
    Natural::from_u64(900).expect("positive").divisors()
}

pub fn natural(rng: &mut impl Rng) -> Natural {
    let powers = PRIMES.iter().map(|&p| (p.into(), rng.gen_range(0..=2u64)));
    Natural::from_prime_powers(powers).expect("small primes")
}

/// Each exponent uniform in `{0, 1, 2, ∞}`, default 0.
pub fn supernatural(rng: &mut impl Rng) -> Supernatural {
    let entries = PRIMES.iter().map(|&p| {
        let e = match rng.gen_range(0..4u64) {
            3 => Exponent::Infinite,
            e => Exponent::finite(e),
        };
        (p, e)
    });
    Supernatural::from_u64_exponents(entries, DefaultExponent::Zero).expect("small primes")
}

fn leaf(rng: &mut impl Rng) -> PatchExpr {
    match rng.gen_range(0..16) {
        0..=2 => {
            let k = rng.gen_range(1..=3);
            PatchExpr::FgOpen((0..k).map(|_| natural(rng)).collect())
        }
        3..=5 => PatchExpr::DivisorClosure(supernatural(rng)),
        6..=8 => PatchExpr::MultiplesOf(supernatural(rng)),
        9..=10 => PatchExpr::NotAbove(natural(rng)),
        11..=12 => PatchExpr::PowerSetPrimes,
        13..=14 => PatchExpr::SpecZ,
        _ => {
            if rng.gen_bool(0.5) {
                PatchExpr::Full
            } else {
                PatchExpr::Empty
            }
        }
    }
}

/// A random expression tree of depth at most `depth`.
pub fn patch(rng: &mut impl Rng, depth: u32) -> PatchExpr {
    if depth == 0 || rng.gen_bool(0.35) {
        return leaf(rng);
    }
    let k = rng.gen_range(2..=3);
    let children = (0..k).map(|_| patch(rng, depth - 1)).collect();
    if rng.gen_bool(0.5) {
        PatchExpr::Union(children)
    } else {
        PatchExpr::Intersection(children)
    }
}

/// A sieve on a divisor of 900 with up to `max_gens` generators, each a
/// multiple of the base dividing 900. Generator lists may repeat.
pub fn sieve(rng: &mut impl Rng, max_gens: usize) -> Sieve {
    let divisors = divisors_of_900();
    let base = divisors.choose(rng).expect("nonempty").clone();
    let above: Vec<&Natural> = divisors.iter().filter(|d| base.divides(d)).collect();
    let k = rng.gen_range(0..=max_gens);
    let gens = (0..k)
        .map(|_| (*above.choose(rng).expect("base divides itself")).clone())
        .collect();
    Sieve::new(base, gens).expect("generators are multiples of the base")
}

/// `count` patches from `seed`, always led by a fixed list of landmarks.
pub fn patches(seed: u64, count: usize) -> Vec<PatchExpr> {
    let mut out = landmark_patches();
    let mut r = rng(seed);
    while out.len() < count {
        out.push(patch(&mut r, 3));
    }
    out
}

pub fn sieves(seed: u64, count: usize, max_gens: usize) -> Vec<Sieve> {
    let mut r = rng(seed);
    (0..count).map(|_| sieve(&mut r, max_gens)).collect()
}

fn landmark_patches() -> Vec<PatchExpr> {
    let sn = |s: &str| s.parse::<Supernatural>().expect("literal");
    vec![
        PatchExpr::Full,
        PatchExpr::Empty,
        PatchExpr::SpecZ,
        PatchExpr::PowerSetPrimes,
        PatchExpr::MultiplesOf(sn("2^inf")),
        PatchExpr::MultiplesOf(sn("2^inf*3^inf")),
        PatchExpr::DivisorClosure(sn("2^inf*3")),
        PatchExpr::union([PatchExpr::SpecZ, PatchExpr::MultiplesOf(sn("5^inf"))]),
        PatchExpr::intersection([
            PatchExpr::PowerSetPrimes,
            PatchExpr::NotAbove(Natural::from_u64(6).expect("positive")),
        ]),
    ]
}
