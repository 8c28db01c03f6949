//! The big cell as a site.
//!
//! Objects are the positive naturals with a unique arrow `m → n` whenever
//! `n ∣ m`. A finitely generated sieve on `n` is identified with the open
//! ideal of its generators, and for a patch `S` a sieve on `n` covers for
//! `K_S` exactly when it contains every element of `(n) ∩ S`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::spectral::{
    pcfb_limit, trace_nonempty_witness, GeometricTail, PatchExpr, PcfbError, SequenceSpec,
    SolverError,
};
use crate::supernat::{next_prime, Exponent, Natural, Supernatural};
use crate::text::{Cursor, ParseError};

/// Families built by [`point_certificate`] stop growing after this many steps.
pub const POINT_ITERATION_CAP: usize = 1000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SiteError {
    #[error("{generator} is not a multiple of the base {base}")]
    NotAMultiple { base: Natural, generator: Natural },
    #[error("sieve does not cover the patch, witness {0}")]
    NotACover(Supernatural),
    #[error("certificate search exceeded {POINT_ITERATION_CAP} iterations")]
    IterationCap,
    #[error("no separating divisor of {0} among the candidates")]
    NoSeparatingDivisor(Supernatural),
    #[error("chain entries must divide their successors: {0} does not divide {1}")]
    NotAChain(Natural, Natural),
    #[error("empty chain")]
    EmptyChain,
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Pcfb(#[from] PcfbError),
    #[error("parse error {0}")]
    Parse(#[from] ParseError),
}

/// A finitely generated sieve on `base`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Sieve {
    base: Natural,
    generators: Vec<Natural>,
}

impl Sieve {
    pub fn new(base: Natural, generators: Vec<Natural>) -> Result<Self, SiteError> {
        if let Some(g) = generators.iter().find(|g| !base.divides(g)) {
            return Err(SiteError::NotAMultiple {
                base,
                generator: g.clone(),
            });
        }
        Ok(Sieve { base, generators })
    }

    /// The maximal sieve `{n}` on `n`.
    pub fn maximal(base: Natural) -> Self {
        Sieve {
            generators: vec![base.clone()],
            base,
        }
    }

    pub fn empty(base: Natural) -> Self {
        Sieve {
            base,
            generators: Vec::new(),
        }
    }

    pub fn base(&self) -> &Natural {
        &self.base
    }

    pub fn generators(&self) -> &[Natural] {
        &self.generators
    }

    /// Whether the sieve contains `k`, i.e. some generator divides `k`.
    pub fn contains(&self, k: &Natural) -> bool {
        self.generators.iter().any(|g| g.divides(k))
    }

    /// Whether the associated open contains the supernatural `s`.
    pub fn contains_supernatural(&self, s: &Supernatural) -> bool {
        self.generators.iter().any(|g| g.divides_supernatural(s))
    }
}

impl fmt::Display for Sieve {
    /// `base:n gens:m1,m2,...`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "base:{} gens:", self.base)?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

fn natural_at(cur: &mut Cursor<'_>) -> Result<Natural, SiteError> {
    let start = cur.pos();
    let digits = cur
        .digits()
        .ok_or_else(|| cur.error("a positive integer"))?;
    let value: BigUint = digits.parse().expect("digit string");
    Natural::new(value).map_err(|_| ParseError::new(start, "a positive integer", Some('0')).into())
}

impl FromStr for Sieve {
    type Err = SiteError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut cur = Cursor::new(s.trim());
        if !cur.eat_str("base:") {
            return Err(cur.error("'base:'").into());
        }
        let base = natural_at(&mut cur)?;
        cur.skip_ws();
        if !cur.eat_str("gens:") {
            return Err(cur.error("'gens:'").into());
        }
        let mut gens = Vec::new();
        if !cur.at_end() {
            loop {
                gens.push(natural_at(&mut cur)?);
                if !cur.eat(',') {
                    break;
                }
            }
        }
        cur.expect_end()?;
        Sieve::new(base, gens)
    }
}

/// Pullback of `sieve` along `m → base`: generators `lcm(m, g)`.
pub fn pullback(sieve: &Sieve, m: &Natural) -> Result<Sieve, SiteError> {
    if !sieve.base.divides(m) {
        return Err(SiteError::NotAMultiple {
            base: sieve.base.clone(),
            generator: m.clone(),
        });
    }
    let mut generators: Vec<Natural> = Vec::with_capacity(sieve.generators.len());
    for g in &sieve.generators {
        let l = m.lcm(g);
        if !generators.contains(&l) {
            generators.push(l);
        }
    }
    Ok(Sieve {
        base: m.clone(),
        generators,
    })
}

/// An element of `(base) ∩ S` outside the sieve, if there is one.
pub fn uncovered_witness(sieve: &Sieve, patch: &PatchExpr) -> Result<Option<Supernatural>, SiteError> {
    Ok(trace_nonempty_witness(&sieve.base, patch, &sieve.generators)?)
}

/// `K_S`-covering judgment.
pub fn is_cover(sieve: &Sieve, patch: &PatchExpr) -> Result<bool, SiteError> {
    Ok(uncovered_witness(sieve, patch)?.is_none())
}

/// An irredundant covering subfamily of the generators, found by trying to
/// drop generators from the last to the first.
pub fn finite_subcover(sieve: &Sieve, patch: &PatchExpr) -> Result<Vec<Natural>, SiteError> {
    if let Some(w) = uncovered_witness(sieve, patch)? {
        return Err(SiteError::NotACover(w));
    }
    let mut kept = sieve.generators.clone();
    for i in (0..kept.len()).rev() {
        let mut trial = kept.clone();
        trial.remove(i);
        if trace_nonempty_witness(&sieve.base, patch, &trial)?.is_none() {
            kept = trial;
        }
    }
    Ok(kept)
}

/// Either `s ∈ S`, or a covering sieve on a divisor of `s` that misses `s`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PointCertificate {
    Member,
    NonPoint { n: Natural, family: Vec<Natural> },
}

impl PointCertificate {
    /// Re-checks the certificate against `s` and `patch`.
    pub fn verify(&self, s: &Supernatural, patch: &PatchExpr) -> Result<bool, SiteError> {
        match self {
            PointCertificate::Member => Ok(patch.contains(s)),
            PointCertificate::NonPoint { n, family } => {
                if !n.divides_supernatural(s) || family.iter().any(|m| m.divides_supernatural(s)) {
                    return Ok(false);
                }
                let sieve = Sieve::new(n.clone(), family.clone())?;
                is_cover(&sieve, patch)
            }
        }
    }
}

fn exponent_cap(e: &Exponent, bound: u64) -> u64 {
    match e {
        Exponent::Infinite => bound,
        Exponent::Finite(f) => f.to_u64().unwrap_or(u64::MAX).min(bound),
    }
}

/// Candidate divisors of `s`, ascending: products of powers of the relevant
/// primes (plus two generic ones), each exponent at most one past the
/// largest mentioned.
fn separating_candidates(s: &Supernatural, patch: &PatchExpr) -> Vec<Natural> {
    let mut primes = Vec::new();
    patch.mentioned_primes(&mut primes);
    primes.extend(s.exception_primes().cloned());
    primes.sort();
    primes.dedup();
    let mut q = BigUint::from(2u32);
    let mut generic = 0;
    while generic < 2 {
        if primes.binary_search(&q).is_err() {
            primes.push(q.clone());
            generic += 1;
        }
        q = next_prime(&q);
    }
    primes.sort();
    let mentioned_max = patch
        .max_finite_exponent()
        .max(
            s.exceptions()
                .filter_map(|(_, e)| e.as_finite().cloned())
                .max()
                .unwrap_or_default(),
        )
        .to_u64()
        .unwrap_or(u64::MAX);
    let bound = mentioned_max.saturating_add(1);
    let mut out = vec![Natural::one()];
    for p in &primes {
        let cap = exponent_cap(&s.exponent_at(p), bound);
        let mut next = Vec::with_capacity(out.len() * (cap as usize + 1));
        for base in &out {
            let mut power = base.clone();
            next.push(power.clone());
            for _ in 0..cap {
                power = power.mul(&Natural::from_prime_powers([(p.clone(), 1)]).expect("prime"));
                next.push(power.clone());
            }
        }
        out = next;
    }
    out.sort_by(|a, b| a.value().cmp(b.value()));
    out
}

/// Least natural divisor of `w` that does not divide `s`.
fn least_nondividing_divisor(w: &Supernatural, s: &Supernatural) -> Option<Natural> {
    let mut primes: Vec<BigUint> = w.exception_primes().chain(s.exception_primes()).cloned().collect();
    primes.sort();
    primes.dedup();
    let mut q = BigUint::from(2u32);
    while primes.binary_search(&q).is_ok() {
        q = next_prime(&q);
    }
    primes.push(q);
    primes
        .into_iter()
        .filter_map(|p| {
            let vs = s.exponent_at(&p);
            if w.exponent_at(&p) <= vs {
                return None;
            }
            let e = vs.as_finite()?.to_u64()? + 1;
            Natural::from_prime_powers([(p, e)]).ok()
        })
        .min_by(|a, b| a.value().cmp(b.value()))
}

/// Certifies whether `s` is a point of the topos of `K_S`-sheaves.
pub fn point_certificate(s: &Supernatural, patch: &PatchExpr) -> Result<PointCertificate, SiteError> {
    if patch.contains(s) {
        return Ok(PointCertificate::Member);
    }
    let near = PatchExpr::Intersection(vec![patch.clone(), PatchExpr::DivisorClosure(s.clone())]);
    let candidates = separating_candidates(s, patch);
    let largest = candidates.last().expect("1 is always a candidate");
    if trace_nonempty_witness(largest, &near, &[])?.is_some() {
        return Err(SiteError::NoSeparatingDivisor(s.clone()));
    }
    let mut n = None;
    for c in &candidates {
        if trace_nonempty_witness(c, &near, &[])?.is_none() {
            n = Some(c.clone());
            break;
        }
    }
    let n = n.expect("the largest candidate separates");
    let mut family: Vec<Natural> = Vec::new();
    for _ in 0..POINT_ITERATION_CAP {
        let Some(w) = trace_nonempty_witness(&n, patch, &family)? else {
            return Ok(PointCertificate::NonPoint { n, family });
        };
        let d = least_nondividing_divisor(&w, s).ok_or_else(|| {
            SolverError::Internal(format!("witness {w} divides {s} inside a separated trace"))
        })?;
        family.push(n.lcm(&d));
    }
    Err(SiteError::IterationCap)
}

/// Whether the Zariski topology induced by `K_S` is trivializing, i.e.
/// `S` consists of completely infinite supernatural numbers only.
pub fn is_trivializing_zariski(patch: &PatchExpr) -> Result<bool, SiteError> {
    let mut primes = Vec::new();
    patch.mentioned_primes(&mut primes);
    primes.sort();
    primes.dedup();
    let mut q = BigUint::from(2u32);
    while primes.binary_search(&q).is_ok() {
        q = next_prime(&q);
    }
    primes.push(q);
    let bound = patch.max_finite_exponent().to_u64().unwrap_or(u64::MAX).saturating_add(1);
    for p in primes {
        // some member with 1 ≤ v_p(s) ≤ E+1
        let at_most = Supernatural::new(
            [(p.clone(), Exponent::finite(bound))],
            crate::supernat::DefaultExponent::Infinite,
        )
        .expect("prime key");
        let probe = PatchExpr::Intersection(vec![
            patch.clone(),
            PatchExpr::FgOpen(vec![Natural::from_prime_powers([(p, 1)]).expect("prime")]),
            PatchExpr::DivisorClosure(at_most),
        ]);
        if trace_nonempty_witness(&Natural::one(), &probe, &[])?.is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The supernatural number classifying a tower `n_1 ∣ n_2 ∣ ⋯`, optionally
/// continued by a geometric tail.
pub fn tower_supernatural(
    chain: &[Natural],
    tail: Option<GeometricTail>,
) -> Result<Supernatural, SiteError> {
    if chain.is_empty() {
        return Err(SiteError::EmptyChain);
    }
    for w in chain.windows(2) {
        if !w[0].divides(&w[1]) {
            return Err(SiteError::NotAChain(w[0].clone(), w[1].clone()));
        }
    }
    if let Some(t) = &tail {
        let last = chain.last().expect("nonempty");
        if !last.divides(&t.base) {
            return Err(SiteError::NotAChain(last.clone(), t.base.clone()));
        }
    }
    let seq = SequenceSpec {
        prefix: chain.to_vec(),
        tail,
    };
    Ok(pcfb_limit(&seq)?)
}
