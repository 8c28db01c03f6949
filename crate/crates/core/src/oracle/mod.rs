//! Brute-force reference semantics over a bounded universe of supernatural
//! numbers: support in a fixed prime list, exponents in `{0,…,E,∞}`.
//!
//! These are deliberately naive and only meant to cross-check the solver.

pub mod corpus;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigUint;
use rayon::prelude::*;
use thiserror::Error;

use crate::spectral::PatchExpr;
use crate::supernat::{is_prime_u64, DefaultExponent, Exponent, Natural, Supernatural};

/// Environment variable overriding [`BoundedUniverse::default`], e.g. `2,3,5:2`.
pub const UNIVERSE_ENV: &str = "BIGCELL_UNIVERSE";

/// Largest universe [`BoundedUniverse::enumerate`] will produce.
pub const ENUMERATION_CAP: u128 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("universe has {0} elements, more than the cap of {ENUMERATION_CAP}")]
    TooLarge(u128),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("bad universe description {0:?}, expected e.g. 2,3,5:2")]
    BadDescription(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedUniverse {
    primes: Vec<u64>,
    max_exp: u64,
}

impl Default for BoundedUniverse {
    /// Primes `{2,3,5}`, `E = 2`: 64 elements.
    fn default() -> Self {
        BoundedUniverse {
            primes: vec![2, 3, 5],
            max_exp: 2,
        }
    }
}

impl BoundedUniverse {
    pub fn new(mut primes: Vec<u64>, max_exp: u64) -> Result<Self, OracleError> {
        if let Some(&p) = primes.iter().find(|&&p| !is_prime_u64(p)) {
            return Err(OracleError::NotPrime(p));
        }
        primes.sort_unstable();
        primes.dedup();
        Ok(BoundedUniverse { primes, max_exp })
    }

    /// The default universe, or the one named by `BIGCELL_UNIVERSE`.
    pub fn from_env() -> Result<Self, OracleError> {
        match std::env::var(UNIVERSE_ENV) {
            Ok(v) if !v.trim().is_empty() => v.parse(),
            _ => Ok(Self::default()),
        }
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn max_exp(&self) -> u64 {
        self.max_exp
    }

    /// `(E+2)^|primes|`.
    pub fn size(&self) -> u128 {
        let base = self.max_exp as u128 + 2;
        self.primes
            .iter()
            .try_fold(1u128, |acc, _| acc.checked_mul(base))
            .unwrap_or(u128::MAX)
    }

    /// `s_Σ` for `Σ` the universe's primes; every element divides it.
    pub fn top(&self) -> Supernatural {
        Supernatural::completely_infinite(self.primes.iter().map(|&p| BigUint::from(p)))
            .expect("universe primes are prime")
    }

    /// Every element, lexicographic in exponent tuples ordered
    /// `0 < 1 < ⋯ < E < ∞`, the first prime varying slowest.
    pub fn enumerate(&self) -> Result<Vec<Supernatural>, OracleError> {
        let size = self.size();
        if size > ENUMERATION_CAP {
            return Err(OracleError::TooLarge(size));
        }
        let levels: Vec<Exponent> = (0..=self.max_exp)
            .map(Exponent::finite)
            .chain([Exponent::Infinite])
            .collect();
        let k = self.primes.len();
        let b = levels.len();
        let out = (0..size as usize)
            .into_par_iter()
            .map(|mut index| {
                let mut tuple = vec![0usize; k];
                for slot in tuple.iter_mut().rev() {
                    *slot = index % b;
                    index /= b;
                }
                let entries = self
                    .primes
                    .iter()
                    .zip(&tuple)
                    .map(|(&p, &t)| (p, levels[t].clone()));
                Supernatural::from_u64_exponents(entries, DefaultExponent::Zero)
                    .expect("universe primes are prime")
            })
            .collect();
        Ok(out)
    }
}

impl fmt::Display for BoundedUniverse {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let primes: Vec<String> = self.primes.iter().map(u64::to_string).collect();
        write!(f, "{}:{}", primes.join(","), self.max_exp)
    }
}

impl FromStr for BoundedUniverse {
    type Err = OracleError;

    fn from_str(s: &str) -> Result<Self, OracleError> {
        let bad = || OracleError::BadDescription(s.to_string());
        let (primes, exp) = s.trim().split_once(':').ok_or_else(bad)?;
        let primes = primes
            .split(',')
            .filter(|p| !p.trim().is_empty())
            .map(|p| p.trim().parse::<u64>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        let exp = exp.trim().parse().map_err(|_| bad())?;
        BoundedUniverse::new(primes, exp)
    }
}

/// A membership predicate on supernatural numbers, for sets the patch
/// grammar cannot express.
#[derive(Clone)]
pub struct PredicateSet {
    membership: Arc<dyn Fn(&Supernatural) -> bool + Send + Sync>,
}

impl PredicateSet {
    pub fn new(f: impl Fn(&Supernatural) -> bool + Send + Sync + 'static) -> Self {
        PredicateSet {
            membership: Arc::new(f),
        }
    }

    pub fn from_patch(patch: PatchExpr) -> Self {
        Self::new(move |s| patch.contains(s))
    }

    pub fn empty() -> Self {
        Self::new(|_| false)
    }

    /// `𝕊 ∖ {1}`.
    pub fn all_but_one() -> Self {
        Self::new(|s| !s.is_one())
    }

    pub fn contains(&self, s: &Supernatural) -> bool {
        (self.membership)(s)
    }
}

impl fmt::Debug for PredicateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("PredicateSet(..)")
    }
}

/// Every `s` in the universe with `n ∣ s` and `s ∈ S` is divisible by a
/// generator.
pub fn naive_cover(
    n: &Natural,
    gens: &[Natural],
    set: &PredicateSet,
    universe: &BoundedUniverse,
) -> Result<bool, OracleError> {
    Ok(naive_uncovered(n, gens, set, universe)?.is_none())
}

/// First universe element (in enumeration order) witnessing a failed cover.
pub fn naive_uncovered(
    n: &Natural,
    gens: &[Natural],
    set: &PredicateSet,
    universe: &BoundedUniverse,
) -> Result<Option<Supernatural>, OracleError> {
    Ok(universe.enumerate()?.into_iter().find(|s| {
        n.divides_supernatural(s)
            && set.contains(s)
            && !gens.iter().any(|g| g.divides_supernatural(s))
    }))
}

/// Universe members of `S`.
pub fn naive_members(
    set: &PredicateSet,
    universe: &BoundedUniverse,
) -> Result<Vec<Supernatural>, OracleError> {
    Ok(universe
        .enumerate()?
        .into_iter()
        .filter(|s| set.contains(s))
        .collect())
}

/// Every universe member of `S` is completely infinite.
pub fn naive_trivializing(
    set: &PredicateSet,
    universe: &BoundedUniverse,
) -> Result<bool, OracleError> {
    Ok(naive_members(set, universe)?
        .iter()
        .all(Supernatural::is_completely_infinite))
}

/// `S ∩ closure{s_Σ}`: the part of a patch the universe can see. Questions
/// about this restriction are answered faithfully by the universe as long as
/// the patch mentions only universe primes and exponents at most `E`.
pub fn restrict(patch: &PatchExpr, universe: &BoundedUniverse) -> PatchExpr {
    PatchExpr::Intersection(vec![
        patch.clone(),
        PatchExpr::DivisorClosure(universe.top()),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_examples() {
        let u = BoundedUniverse::new(vec![2], 1).unwrap();
        let all: Vec<String> = u.enumerate().unwrap().iter().map(|s| s.to_string()).collect();
        assert_eq!(all, vec!["1", "2", "2^inf"]);
        assert_eq!(BoundedUniverse::new(vec![2, 3], 1).unwrap().enumerate().unwrap().len(), 9);
        assert_eq!(BoundedUniverse::default().enumerate().unwrap().len(), 64);
        let huge = BoundedUniverse::new(vec![2, 3, 5, 7, 11, 13, 17], 8).unwrap();
        assert!(matches!(huge.enumerate(), Err(OracleError::TooLarge(_))));
    }

    #[test]
    fn universe_descriptions() {
        let u: BoundedUniverse = "5,2,3:2".parse().unwrap();
        assert_eq!(u, BoundedUniverse::default());
        assert_eq!(u.to_string(), "2,3,5:2");
        assert!("2,4:1".parse::<BoundedUniverse>().is_err());
        assert!("2,3".parse::<BoundedUniverse>().is_err());
    }

    #[test]
    fn all_primes_cover_the_punctured_space() {
        let u = BoundedUniverse::default();
        let one = Natural::one();
        let primes: Vec<Natural> = [2, 3, 5].iter().map(|&p| Natural::from_u64(p).unwrap()).collect();
        let s = PredicateSet::all_but_one();
        assert!(naive_cover(&one, &primes, &s, &u).unwrap());
        for skip in 0..3 {
            let mut fewer = primes.clone();
            let omitted = fewer.remove(skip);
            let w = naive_uncovered(&one, &fewer, &s, &u).unwrap().unwrap();
            assert_eq!(w.to_natural(), Some(omitted));
        }
        assert!(naive_cover(&one, &[], &PredicateSet::empty(), &u).unwrap());
    }
}
