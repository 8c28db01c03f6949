//! Primewise convergence from below: basic sets, limits, cofinal chains.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::supernat::{first_primes, DefaultExponent, Exponent, Natural, Supernatural};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PcfbError {
    #[error("{n} does not divide {s}")]
    NotDivisible { n: Natural, s: Supernatural },
    #[error("a sequence needs at least one term")]
    EmptySequence,
    #[error("geometric tail ratio must be at least 2, got {0}")]
    BadRatio(Natural),
    #[error("sequence does not pcfb-converge: {0}")]
    NonConvergent(String),
    #[error("chain length must be at least 1")]
    EmptyChain,
}

/// `(n) ∩ closure{s}` with `n ∣ s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PcfbBasic {
    n: Natural,
    s: Supernatural,
}

impl PcfbBasic {
    pub fn new(n: Natural, s: Supernatural) -> Result<Self, PcfbError> {
        if !n.divides_supernatural(&s) {
            return Err(PcfbError::NotDivisible { n, s });
        }
        Ok(PcfbBasic { n, s })
    }

    pub fn base(&self) -> &Natural {
        &self.n
    }

    pub fn top(&self) -> &Supernatural {
        &self.s
    }

    pub fn contains(&self, x: &Supernatural) -> bool {
        self.n.divides_supernatural(x) && x.divides(&self.s)
    }
}

/// `(lcm(n,n')) ∩ closure{gcd(s,s')}`, or `None` when that set is empty.
pub fn basic_intersect(a: &PcfbBasic, b: &PcfbBasic) -> Option<PcfbBasic> {
    let n = a.n.lcm(&b.n);
    let s = a.s.gcd(&b.s);
    n.divides_supernatural(&s).then_some(PcfbBasic { n, s })
}

/// Terms `base · ratio^j` for `j ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeometricTail {
    pub base: Natural,
    pub ratio: Natural,
}

impl GeometricTail {
    pub fn term(&self, j: u64) -> Natural {
        let mut t = self.base.clone();
        for _ in 0..j {
            t = t.mul(&self.ratio);
        }
        t
    }
}

/// An explicit prefix optionally followed by a geometric tail. Without a
/// tail the last prefix term repeats forever.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceSpec {
    pub prefix: Vec<Natural>,
    pub tail: Option<GeometricTail>,
}

impl SequenceSpec {
    pub fn finite(prefix: Vec<Natural>) -> Self {
        SequenceSpec { prefix, tail: None }
    }

    pub fn with_tail(prefix: Vec<Natural>, base: Natural, ratio: Natural) -> Self {
        SequenceSpec {
            prefix,
            tail: Some(GeometricTail { base, ratio }),
        }
    }

    fn validate(&self) -> Result<(), PcfbError> {
        match &self.tail {
            None if self.prefix.is_empty() => Err(PcfbError::EmptySequence),
            Some(t) if t.ratio.is_one() => Err(PcfbError::BadRatio(t.ratio.clone())),
            _ => Ok(()),
        }
    }

    /// Per-prime supremum of all terms.
    pub fn supremum(&self) -> Result<Supernatural, PcfbError> {
        self.validate()?;
        let mut exps: BTreeMap<BigUint, Exponent> = BTreeMap::new();
        let mut bump = |p: &BigUint, e: Exponent| {
            let slot = exps.entry(p.clone()).or_insert_with(Exponent::zero);
            if e > *slot {
                *slot = e;
            }
        };
        for t in &self.prefix {
            for (p, e) in t.factors() {
                bump(p, Exponent::finite(*e));
            }
        }
        if let Some(tail) = &self.tail {
            for (p, e) in tail.base.factors() {
                bump(p, Exponent::finite(*e));
            }
            for p in tail.ratio.primes() {
                bump(p, Exponent::Infinite);
            }
        }
        Ok(Supernatural::from_parts(exps, DefaultExponent::Zero))
    }
}

/// The pcfb-limit of `seq`: the per-prime supremum `s`, provided every
/// natural divisor of `s` divides some term.
pub fn pcfb_limit(seq: &SequenceSpec) -> Result<Supernatural, PcfbError> {
    let s = seq.supremum()?;
    match &seq.tail {
        None => {
            // s is natural here; it must itself divide a term.
            let top = s.to_natural().expect("finite sequences have natural suprema");
            if !seq.prefix.iter().any(|t| top.divides(t)) {
                return Err(PcfbError::NonConvergent(format!(
                    "supremum {s} divides no term"
                )));
            }
        }
        Some(tail) => {
            // Deep tail terms reach any power of a ratio prime; elsewhere
            // they are stuck at the base's exponent.
            for (p, e) in s.exceptions() {
                if tail.ratio.valuation(p) > 0 {
                    continue;
                }
                let stuck = Exponent::finite(tail.base.valuation(p));
                if *e > stuck {
                    return Err(PcfbError::NonConvergent(format!(
                        "{p}^{e} divides the supremum but the tail only reaches {p}^{stuck}"
                    )));
                }
            }
        }
    }
    debug_assert!(verify_pcfb_limit(seq, &s));
    Ok(s)
}

/// Re-checks both convergence conditions for a candidate limit `s`; the
/// second one on the divisors `∏ p^{min(v_p(s), k)}` for `k` up to one past
/// the largest exponent occurring in the sequence data.
pub fn verify_pcfb_limit(seq: &SequenceSpec, s: &Supernatural) -> bool {
    let mut terms: Vec<&Natural> = seq.prefix.iter().collect();
    if let Some(tail) = &seq.tail {
        terms.push(&tail.base);
        let ratio_ok = tail
            .ratio
            .primes()
            .all(|p| s.exponent_at(p).is_infinite());
        if !ratio_ok {
            return false;
        }
    }
    if !terms.iter().all(|t| t.divides_supernatural(s)) {
        return false;
    }
    if s.default_exponent().is_infinite() {
        return false;
    }
    let max_e = terms
        .iter()
        .flat_map(|t| t.factors().iter().map(|(_, e)| *e))
        .max()
        .unwrap_or(0);
    for k in 1..=max_e + 1 {
        let probe: Vec<(BigUint, u64)> = s
            .exceptions()
            .map(|(p, e)| {
                let cap = match e {
                    Exponent::Infinite => k,
                    Exponent::Finite(f) => f.to_u64().unwrap_or(u64::MAX),
                };
                (p.clone(), cap)
            })
            .collect();
        let probe = Natural::from_prime_powers(probe).expect("primes from a canonical value");
        let hit = seq.prefix.iter().any(|t| probe.divides(t))
            || seq.tail.as_ref().is_some_and(|tail| {
                (0..=k).any(|j| probe.divides(&tail.term(j)))
            });
        if !hit {
            return false;
        }
    }
    true
}

/// `n_1 ∣ n_2 ∣ ⋯ ∣ n_k` with `n_j = ∏_{i≤j} p_i^{min(v_{p_i}(s), j)}` over
/// the ascending primes `p_1 < p_2 < ⋯`.
pub fn cofinal_chain(s: &Supernatural, k: usize) -> Result<Vec<Natural>, PcfbError> {
    if k == 0 {
        return Err(PcfbError::EmptyChain);
    }
    let primes = first_primes(k);
    let mut chain = Vec::with_capacity(k);
    for j in 1..=k {
        let powers = primes[..j].iter().filter_map(|p| {
            let cap = match s.exponent_at(p) {
                Exponent::Infinite => j as u64,
                Exponent::Finite(e) => e.to_u64().unwrap_or(u64::MAX).min(j as u64),
            };
            (cap > 0).then(|| (p.clone(), cap))
        });
        chain.push(Natural::from_prime_powers(powers).expect("first primes are prime"));
    }
    Ok(chain)
}
