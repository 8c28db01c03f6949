//! Decision procedure for traces of patches on principal opens.
//!
//! A query `(n, S, excluded)` asks for some `s` with `n ∣ s`, `s ∈ S` and
//! `m ∤ s` for every excluded `m`. The patch is rewritten into a disjunction
//! of per-prime constraint systems over the *relevant* primes (those
//! dividing `n`, an excluded `m`, or mentioned by a leaf). Every other prime
//! is *generic*: leaves constrain all generic primes uniformly, except that
//! `spec(ℤ)` may single out one generic prime with exponent `0`.
//!
//! Each atomic constraint compares one exponent with a mentioned exponent,
//! so the least admissible value of every bound interval is a witness value
//! and the search never has to invent exponents.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigUint;
use thiserror::Error;

use super::PatchExpr;
use crate::supernat::{next_prime, DefaultExponent, Exponent, Natural, Supernatural};

/// Hard limit on constraint systems explored per query.
pub const DISJUNCT_BUDGET: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error("query expands to more than {DISJUNCT_BUDGET} constraint systems")]
    BudgetExceeded,
    #[error("internal solver defect: {0}")]
    Internal(String),
}

#[derive(Clone, Debug)]
struct Bound {
    lo: Exponent,
    hi: Exponent,
}

#[derive(Clone, Debug)]
struct System {
    bounds: Vec<Bound>,
    /// Every exponent restricted to `{0, ∞}`.
    extreme: bool,
    generic_lo: DefaultExponent,
    generic_hi: DefaultExponent,
    /// One generic prime is `0`, the others `∞`.
    one_generic_zero: bool,
}

impl System {
    fn new(width: usize) -> Self {
        System {
            bounds: vec![
                Bound {
                    lo: Exponent::zero(),
                    hi: Exponent::Infinite,
                };
                width
            ],
            extreme: false,
            generic_lo: DefaultExponent::Zero,
            generic_hi: DefaultExponent::Infinite,
            one_generic_zero: false,
        }
    }

    fn raise(&mut self, i: usize, e: Exponent) {
        if e > self.bounds[i].lo {
            self.bounds[i].lo = e;
        }
    }

    fn cap(&mut self, i: usize, e: Exponent) {
        if e < self.bounds[i].hi {
            self.bounds[i].hi = e;
        }
    }

    fn prime_ok(&self, b: &Bound) -> bool {
        if self.extreme {
            b.lo.is_zero() || b.hi.is_infinite()
        } else {
            b.lo <= b.hi
        }
    }

    fn prime_value(&self, b: &Bound) -> Exponent {
        if self.extreme && !b.lo.is_zero() {
            Exponent::Infinite
        } else {
            b.lo.clone()
        }
    }

    fn generic_ok(&self) -> bool {
        if self.one_generic_zero {
            self.generic_lo == DefaultExponent::Zero
                && self.generic_hi == DefaultExponent::Infinite
        } else {
            self.generic_lo <= self.generic_hi
        }
    }

    fn feasible(&self) -> bool {
        self.generic_ok() && self.bounds.iter().all(|b| self.prime_ok(b))
    }

    fn witness(&self, primes: &[BigUint], generic_rep: &BigUint) -> Supernatural {
        let mut exceptions: BTreeMap<BigUint, Exponent> = primes
            .iter()
            .zip(&self.bounds)
            .map(|(p, b)| (p.clone(), self.prime_value(b)))
            .collect();
        let default = if self.one_generic_zero {
            exceptions.insert(generic_rep.clone(), Exponent::zero());
            DefaultExponent::Infinite
        } else {
            self.generic_lo
        };
        Supernatural::from_parts(exceptions, default)
    }
}

struct Expander<'a> {
    primes: &'a [BigUint],
    explored: usize,
}

impl Expander<'_> {
    fn index(&self, p: &BigUint) -> usize {
        self.primes
            .binary_search(p)
            .expect("relevant primes cover every mentioned prime")
    }

    fn tick(&mut self) -> Result<(), SolverError> {
        self.explored += 1;
        if self.explored > DISJUNCT_BUDGET {
            Err(SolverError::BudgetExceeded)
        } else {
            Ok(())
        }
    }

    fn keep(&mut self, sys: System, out: &mut Vec<System>) -> Result<(), SolverError> {
        self.tick()?;
        if sys.feasible() {
            out.push(sys);
        }
        Ok(())
    }

    fn all_infinite(&self, sys: &mut System, except: Option<usize>) {
        for i in 0..self.primes.len() {
            if Some(i) != except {
                sys.raise(i, Exponent::Infinite);
            }
        }
    }

    /// Refinements of `seed` whose union is `seed ∩ expr`.
    fn expand(&mut self, expr: &PatchExpr, seed: &System) -> Result<Vec<System>, SolverError> {
        let mut out = Vec::new();
        match expr {
            PatchExpr::FgOpen(gens) => {
                for g in gens {
                    let mut sys = seed.clone();
                    for (p, e) in g.factors() {
                        sys.raise(self.index(p), Exponent::finite(*e));
                    }
                    self.keep(sys, &mut out)?;
                }
            }
            PatchExpr::DivisorClosure(t) => {
                let mut sys = seed.clone();
                for (i, p) in self.primes.iter().enumerate() {
                    sys.cap(i, t.exponent_at(p));
                }
                if t.default_exponent() == DefaultExponent::Zero {
                    sys.generic_hi = DefaultExponent::Zero;
                }
                self.keep(sys, &mut out)?;
            }
            PatchExpr::MultiplesOf(t) => {
                let mut sys = seed.clone();
                for (i, p) in self.primes.iter().enumerate() {
                    sys.raise(i, t.exponent_at(p));
                }
                if t.default_exponent() == DefaultExponent::Infinite {
                    sys.generic_lo = DefaultExponent::Infinite;
                }
                self.keep(sys, &mut out)?;
            }
            PatchExpr::NotAbove(n) => {
                for (p, e) in n.factors() {
                    let mut sys = seed.clone();
                    sys.cap(self.index(p), Exponent::finite(e - 1));
                    self.keep(sys, &mut out)?;
                }
            }
            PatchExpr::PowerSetPrimes => {
                let mut sys = seed.clone();
                sys.extreme = true;
                self.keep(sys, &mut out)?;
            }
            PatchExpr::SpecZ => {
                // the maximal element
                let mut sys = seed.clone();
                self.all_infinite(&mut sys, None);
                sys.generic_lo = DefaultExponent::Infinite;
                self.keep(sys, &mut out)?;
                // s_p for a relevant p
                for i in 0..self.primes.len() {
                    let mut sys = seed.clone();
                    self.all_infinite(&mut sys, Some(i));
                    sys.cap(i, Exponent::zero());
                    sys.generic_lo = DefaultExponent::Infinite;
                    self.keep(sys, &mut out)?;
                }
                // s_q for a generic q
                let mut sys = seed.clone();
                self.all_infinite(&mut sys, None);
                sys.one_generic_zero = true;
                self.keep(sys, &mut out)?;
            }
            PatchExpr::Full => self.keep(seed.clone(), &mut out)?,
            PatchExpr::Empty => {}
            PatchExpr::Union(children) => {
                for c in children {
                    out.extend(self.expand(c, seed)?);
                }
            }
            PatchExpr::Intersection(children) => {
                let mut current = vec![seed.clone()];
                for c in children {
                    let mut next = Vec::new();
                    for sys in &current {
                        next.extend(self.expand(c, sys)?);
                    }
                    current = next;
                    if current.is_empty() {
                        break;
                    }
                }
                out = current;
            }
        }
        Ok(out)
    }

    /// Depth-first choice of a violated prime for each excluded multiple.
    /// Failed states are remembered: a state is the position in `excluded`
    /// plus the upper bounds, since only those change along the search.
    fn avoid(
        &mut self,
        sys: &System,
        excluded: &[Natural],
        failed: &mut HashSet<(usize, Vec<Exponent>)>,
    ) -> Result<Option<System>, SolverError> {
        let Some((m, rest)) = excluded.split_first() else {
            return Ok(Some(sys.clone()));
        };
        // already ruled out: the witness value never exceeds an upper bound
        let violated = m
            .factors()
            .iter()
            .any(|(p, e)| sys.bounds[self.index(p)].hi < Exponent::finite(*e));
        if violated {
            return self.avoid(sys, rest, failed);
        }
        let key = (rest.len(), sys.bounds.iter().map(|b| b.hi.clone()).collect::<Vec<_>>());
        if failed.contains(&key) {
            return Ok(None);
        }
        for (p, e) in m.factors() {
            self.tick()?;
            let mut next = sys.clone();
            next.cap(self.index(p), Exponent::finite(e - 1));
            if next.feasible() {
                if let Some(found) = self.avoid(&next, rest, failed)? {
                    return Ok(Some(found));
                }
            }
        }
        failed.insert(key);
        Ok(None)
    }
}

/// The divisibility-minimal members of `excluded`, deduplicated. Avoiding
/// these avoids all of them.
fn minimal_excluded(excluded: &[Natural]) -> Vec<Natural> {
    let mut sorted: Vec<&Natural> = excluded.iter().collect();
    sorted.sort_by(|a, b| a.value().cmp(b.value()));
    let mut out: Vec<Natural> = Vec::new();
    for m in sorted {
        if !out.iter().any(|k| k.divides(m)) {
            out.push(m.clone());
        }
    }
    out
}

/// Relevant primes of a query, sorted and deduplicated.
pub(crate) fn relevant_primes(n: &Natural, patch: &PatchExpr, excluded: &[Natural]) -> Vec<BigUint> {
    let mut primes: Vec<BigUint> = n.primes().cloned().collect();
    for m in excluded {
        primes.extend(m.primes().cloned());
    }
    patch.mentioned_primes(&mut primes);
    primes.sort();
    primes.dedup();
    primes
}

/// Least prime outside a sorted prime list.
pub(crate) fn least_prime_outside(primes: &[BigUint]) -> BigUint {
    let mut q = BigUint::from(2u32);
    while primes.binary_search(&q).is_ok() {
        q = next_prime(&q);
    }
    q
}

/// Some `s` with `n ∣ s`, `s ∈ patch`, and `m ∤ s` for all `m ∈ excluded`,
/// or `None` when no such supernatural number exists.
///
/// The returned witness only uses exponents mentioned by the query (plus
/// `0` and `∞`) and is checked against the direct membership predicate
/// before it is returned.
pub fn trace_nonempty_witness(
    n: &Natural,
    patch: &PatchExpr,
    excluded: &[Natural],
) -> Result<Option<Supernatural>, SolverError> {
    let primes = relevant_primes(n, patch, excluded);
    let mut seed = System::new(primes.len());
    let mut ex = Expander {
        primes: &primes,
        explored: 0,
    };
    for (p, e) in n.factors() {
        seed.raise(ex.index(p), Exponent::finite(*e));
    }
    // An excluded 1 divides everything, so nothing survives.
    if excluded.iter().any(Natural::is_one) {
        return Ok(None);
    }
    let systems = ex.expand(patch, &seed)?;
    let generic_rep = least_prime_outside(&primes);
    let minimal = minimal_excluded(excluded);
    for sys in &systems {
        if let Some(found) = ex.avoid(sys, &minimal, &mut HashSet::new())? {
            let w = found.witness(&primes, &generic_rep);
            let valid = n.divides_supernatural(&w)
                && patch.contains(&w)
                && excluded.iter().all(|m| !m.divides_supernatural(&w));
            if !valid {
                return Err(SolverError::Internal(format!(
                    "witness {w} fails re-verification for n={n}, patch={patch}"
                )));
            }
            return Ok(Some(w));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat(n: u64) -> Natural {
        Natural::from_u64(n).unwrap()
    }

    fn patch(s: &str) -> PatchExpr {
        s.parse().unwrap()
    }

    #[test]
    fn empty_trace_on_divisor_closure() {
        assert_eq!(
            trace_nonempty_witness(&nat(5), &patch("divclosure:8"), &[]).unwrap(),
            None
        );
    }

    #[test]
    fn spec_z_witness_avoids_six() {
        let w = trace_nonempty_witness(&nat(1), &PatchExpr::SpecZ, &[nat(6)])
            .unwrap()
            .unwrap();
        assert_eq!(w.to_string(), "2^0;default=inf");
    }

    #[test]
    fn multiples_cover_law() {
        assert_eq!(
            trace_nonempty_witness(&nat(2), &patch("multiples:2^inf*3^inf"), &[nat(12)]).unwrap(),
            None
        );
        let w = trace_nonempty_witness(&nat(2), &patch("multiples:2^inf*3^inf"), &[nat(10)])
            .unwrap()
            .unwrap();
        assert!(!nat(10).divides_supernatural(&w));
    }

    #[test]
    fn generic_prime_witness() {
        // every s_q for q ∉ {2,3} and the maximal element are multiples of 6
        let w = trace_nonempty_witness(&nat(6), &PatchExpr::SpecZ, &[nat(30)])
            .unwrap()
            .unwrap();
        assert_eq!(w.to_string(), "5^0;default=inf");
        assert_eq!(
            trace_nonempty_witness(&nat(6), &patch("intersection(specz,divclosure:2^inf*3^inf)"), &[])
                .unwrap(),
            None
        );
    }

    #[test]
    fn excluded_one_kills_everything() {
        assert_eq!(
            trace_nonempty_witness(&nat(1), &PatchExpr::Full, &[nat(1)]).unwrap(),
            None
        );
    }

    #[test]
    fn power_set_and_finite_exponents() {
        assert_eq!(
            trace_nonempty_witness(&nat(1), &patch("intersection(powersetprimes,fgopen:2,divclosure:2^3;default=inf)"), &[])
                .unwrap(),
            None
        );
        let w = trace_nonempty_witness(&nat(1), &patch("intersection(powersetprimes,fgopen:2)"), &[])
            .unwrap()
            .unwrap();
        assert_eq!(w.to_string(), "2^inf");
    }
}
