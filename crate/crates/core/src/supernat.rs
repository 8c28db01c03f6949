//! Supernatural numbers.
//!
//! A supernatural number is a formal product `∏ p^e_p` over all primes with
//! `e_p ∈ ℕ ∪ {∞}`. Only values whose exponents agree with a default of `0`
//! or `∞` at all but finitely many primes are representable. This class is
//! closed under [`Supernatural::gcd`] and [`Supernatural::lcm`] and contains
//! the natural numbers, the products `∏_{p∈Σ} p^∞` for finite `Σ`, the
//! cofinite products `∏_{q≠p} q^∞`, and the maximal element `∏_p p^∞`.
//!
//! The text form is `FACTORS[;default=0|inf]`, for example `2^inf*3`,
//! `5^0;default=inf` or `;default=inf`. [`Display`](std::fmt::Display) always
//! prints the canonical form with ascending primes.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::text::{Cursor, ParseError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SupernatError {
    #[error("{0} is not a prime")]
    NotPrime(BigUint),
    #[error("natural numbers must be positive")]
    NotPositive,
    #[error("prime {0} listed twice")]
    DuplicatePrime(BigUint),
    #[error("value is not representable with a default exponent of 0 or inf: {0}")]
    Unrepresentable(String),
    #[error("parse error {0}")]
    Parse(#[from] ParseError),
}

/// An exponent in `ℕ ∪ {∞}`. `Infinite` is the top element.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Exponent {
    Finite(BigUint),
    Infinite,
}

impl Exponent {
    pub fn zero() -> Self {
        Exponent::Finite(BigUint::zero())
    }

    pub fn finite(e: u64) -> Self {
        Exponent::Finite(BigUint::from(e))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Exponent::Finite(e) if e.is_zero())
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Exponent::Infinite)
    }

    /// `0` or `∞`.
    pub fn is_extreme(&self) -> bool {
        self.is_zero() || self.is_infinite()
    }

    pub fn as_finite(&self) -> Option<&BigUint> {
        match self {
            Exponent::Finite(e) => Some(e),
            Exponent::Infinite => None,
        }
    }

    /// One less than `self`, or `None` when `self` is zero. `∞ - 1 = ∞`.
    pub fn predecessor(&self) -> Option<Exponent> {
        match self {
            Exponent::Finite(e) if e.is_zero() => None,
            Exponent::Finite(e) => Some(Exponent::Finite(e - 1u32)),
            Exponent::Infinite => Some(Exponent::Infinite),
        }
    }

    pub fn successor(&self) -> Exponent {
        match self {
            Exponent::Finite(e) => Exponent::Finite(e + 1u32),
            Exponent::Infinite => Exponent::Infinite,
        }
    }

    fn add(&self, other: &Exponent) -> Exponent {
        match (self, other) {
            (Exponent::Finite(a), Exponent::Finite(b)) => Exponent::Finite(a + b),
            _ => Exponent::Infinite,
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(e) => write!(f, "{e}"),
            Exponent::Infinite => f.write_str("inf"),
        }
    }
}

impl From<DefaultExponent> for Exponent {
    fn from(d: DefaultExponent) -> Self {
        match d {
            DefaultExponent::Zero => Exponent::zero(),
            DefaultExponent::Infinite => Exponent::Infinite,
        }
    }
}

/// Exponent shared by every prime not listed explicitly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DefaultExponent {
    Zero,
    Infinite,
}

impl DefaultExponent {
    pub fn is_infinite(self) -> bool {
        self == DefaultExponent::Infinite
    }
}

/// Trial-division primality test.
pub fn is_prime(p: &BigUint) -> bool {
    if let Some(p) = p.to_u64() {
        return is_prime_u64(p);
    }
    if p.is_even() {
        return false;
    }
    let mut d = BigUint::from(3u32);
    while &d * &d <= *p {
        if (p % &d).is_zero() {
            return false;
        }
        d += 2u32;
    }
    true
}

pub fn is_prime_u64(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Smallest prime strictly greater than `p`.
pub fn next_prime(p: &BigUint) -> BigUint {
    let mut q = p + 1u32;
    while !is_prime(&q) {
        q += 1u32;
    }
    q
}

/// The first `k` primes, ascending.
pub fn first_primes(k: usize) -> Vec<BigUint> {
    let mut out = Vec::with_capacity(k);
    let mut p = BigUint::from(2u32);
    while out.len() < k {
        out.push(p.clone());
        p = next_prime(&p);
    }
    out
}

/// A strictly positive natural number together with its factorization.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Natural {
    value: BigUint,
    factors: Vec<(BigUint, u64)>,
}

impl Natural {
    pub fn one() -> Self {
        Natural {
            value: BigUint::one(),
            factors: Vec::new(),
        }
    }

    /// Factors `value` by trial division.
    pub fn new(value: BigUint) -> Result<Self, SupernatError> {
        if value.is_zero() {
            return Err(SupernatError::NotPositive);
        }
        let factors = factor(&value);
        Ok(Natural { value, factors })
    }

    pub fn from_u64(value: u64) -> Result<Self, SupernatError> {
        Natural::new(BigUint::from(value))
    }

    /// Builds a natural number from prime powers. Primes may repeat; their
    /// exponents add up.
    pub fn from_prime_powers<I>(powers: I) -> Result<Self, SupernatError>
    where
        I: IntoIterator<Item = (BigUint, u64)>,
    {
        let mut map: BTreeMap<BigUint, u64> = BTreeMap::new();
        for (p, e) in powers {
            if !is_prime(&p) {
                return Err(SupernatError::NotPrime(p));
            }
            if e > 0 {
                *map.entry(p).or_default() += e;
            }
        }
        Ok(Self::from_factor_map(map))
    }

    fn from_factor_map(map: BTreeMap<BigUint, u64>) -> Self {
        let mut value = BigUint::one();
        for (p, e) in &map {
            value *= num_traits::pow::pow(p.clone(), *e as usize);
        }
        Natural {
            value,
            factors: map.into_iter().collect(),
        }
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.value.to_u64()
    }

    /// Prime factorization with ascending primes.
    pub fn factors(&self) -> &[(BigUint, u64)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigUint> {
        self.factors.iter().map(|(p, _)| p)
    }

    pub fn valuation(&self, p: &BigUint) -> u64 {
        self.factors
            .binary_search_by(|(q, _)| q.cmp(p))
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn divides(&self, other: &Natural) -> bool {
        self.factors.iter().all(|(p, e)| other.valuation(p) >= *e)
    }

    /// `self ∣ s`, evaluated without converting `self` to a supernatural.
    pub fn divides_supernatural(&self, s: &Supernatural) -> bool {
        self.factors.iter().all(|(p, e)| match s.exponent_at(p) {
            Exponent::Infinite => true,
            Exponent::Finite(f) => f >= BigUint::from(*e),
        })
    }

    pub fn lcm(&self, other: &Natural) -> Natural {
        let mut map: BTreeMap<BigUint, u64> = self.factors.iter().cloned().collect();
        for (p, e) in &other.factors {
            let slot = map.entry(p.clone()).or_default();
            *slot = (*slot).max(*e);
        }
        Self::from_factor_map(map)
    }

    pub fn gcd(&self, other: &Natural) -> Natural {
        let map: BTreeMap<BigUint, u64> = self
            .factors
            .iter()
            .filter_map(|(p, e)| {
                let m = (*e).min(other.valuation(p));
                (m > 0).then(|| (p.clone(), m))
            })
            .collect();
        Self::from_factor_map(map)
    }

    pub fn mul(&self, other: &Natural) -> Natural {
        let mut map: BTreeMap<BigUint, u64> = self.factors.iter().cloned().collect();
        for (p, e) in &other.factors {
            *map.entry(p.clone()).or_default() += *e;
        }
        Self::from_factor_map(map)
    }

    /// `self / other`, when `other ∣ self`.
    pub fn checked_div(&self, other: &Natural) -> Option<Natural> {
        if !other.divides(self) {
            return None;
        }
        let map: BTreeMap<BigUint, u64> = self
            .factors
            .iter()
            .filter_map(|(p, e)| {
                let r = e - other.valuation(p);
                (r > 0).then(|| (p.clone(), r))
            })
            .collect();
        Some(Self::from_factor_map(map))
    }

    pub fn to_supernatural(&self) -> Supernatural {
        Supernatural {
            exceptions: self
                .factors
                .iter()
                .map(|(p, e)| (p.clone(), Exponent::finite(*e)))
                .collect(),
            default: DefaultExponent::Zero,
        }
    }

    /// All divisors, ascending.
    pub fn divisors(&self) -> Vec<Natural> {
        let mut out = vec![BTreeMap::<BigUint, u64>::new()];
        for (p, e) in &self.factors {
            let mut next = Vec::with_capacity(out.len() * (*e as usize + 1));
            for base in out {
                for k in 0..=*e {
                    let mut m = base.clone();
                    if k > 0 {
                        m.insert(p.clone(), k);
                    }
                    next.push(m);
                }
            }
            out = next;
        }
        let mut divs: Vec<Natural> = out.into_iter().map(Self::from_factor_map).collect();
        divs.sort_by(|a, b| a.value.cmp(&b.value));
        divs
    }
}

fn factor(n: &BigUint) -> Vec<(BigUint, u64)> {
    if let Some(n) = n.to_u64() {
        return factor_u64(n)
            .into_iter()
            .map(|(p, e)| (BigUint::from(p), e))
            .collect();
    }
    let mut n = n.clone();
    let mut out = Vec::new();
    let mut d = BigUint::from(2u32);
    while &d * &d <= n {
        let mut e = 0;
        while (&n % &d).is_zero() {
            n /= &d;
            e += 1;
        }
        if e > 0 {
            out.push((d.clone(), e));
        }
        d += if d == BigUint::from(2u32) { 1u32 } else { 2u32 };
    }
    if !n.is_one() {
        out.push((n, 1));
    }
    out
}

fn factor_u64(mut n: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        let mut e = 0;
        while n.is_multiple_of(d) {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

impl fmt::Debug for Natural {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Display for Natural {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl FromStr for Natural {
    type Err = SupernatError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut cur = Cursor::new(s.trim());
        let digits = cur.digits().ok_or_else(|| cur.error("a positive integer"))?;
        cur.expect_end()?;
        let value: BigUint = digits.parse().expect("digit string");
        Natural::new(value)
    }
}

impl TryFrom<u64> for Natural {
    type Error = SupernatError;

    fn try_from(value: u64) -> Result<Self, Self::Error> {
        Natural::from_u64(value)
    }
}

/// A supernatural number in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Supernatural {
    exceptions: BTreeMap<BigUint, Exponent>,
    default: DefaultExponent,
}

impl Supernatural {
    pub fn one() -> Self {
        Supernatural {
            exceptions: BTreeMap::new(),
            default: DefaultExponent::Zero,
        }
    }

    /// `∏_p p^∞`.
    pub fn maximal() -> Self {
        Supernatural {
            exceptions: BTreeMap::new(),
            default: DefaultExponent::Infinite,
        }
    }

    /// Builds a value from explicit per-prime exponents and a default.
    /// Entries equal to the default are dropped.
    pub fn new<I>(entries: I, default: DefaultExponent) -> Result<Self, SupernatError>
    where
        I: IntoIterator<Item = (BigUint, Exponent)>,
    {
        let mut exceptions = BTreeMap::new();
        for (p, e) in entries {
            if !is_prime(&p) {
                return Err(SupernatError::NotPrime(p));
            }
            if exceptions.insert(p.clone(), e).is_some() {
                return Err(SupernatError::DuplicatePrime(p));
            }
        }
        Ok(Self::from_parts(exceptions, default))
    }

    /// Caller guarantees every key is prime.
    pub(crate) fn from_parts(
        mut exceptions: BTreeMap<BigUint, Exponent>,
        default: DefaultExponent,
    ) -> Self {
        let d = Exponent::from(default);
        exceptions.retain(|_, e| *e != d);
        Supernatural {
            exceptions,
            default,
        }
    }

    /// Builds a value from a per-prime exponent list over small primes.
    pub fn from_u64_exponents<I>(entries: I, default: DefaultExponent) -> Result<Self, SupernatError>
    where
        I: IntoIterator<Item = (u64, Exponent)>,
    {
        Self::new(
            entries.into_iter().map(|(p, e)| (BigUint::from(p), e)),
            default,
        )
    }

    /// `s_Σ = ∏_{p∈Σ} p^∞` for a finite set of primes.
    pub fn completely_infinite<I>(primes: I) -> Result<Self, SupernatError>
    where
        I: IntoIterator<Item = BigUint>,
    {
        Self::new(
            primes.into_iter().map(|p| (p, Exponent::Infinite)),
            DefaultExponent::Zero,
        )
    }

    /// `∏_{q∉excluded} q^∞`; for one prime `p` this is `s_p`.
    pub fn cofinite<I>(excluded: I) -> Result<Self, SupernatError>
    where
        I: IntoIterator<Item = BigUint>,
    {
        Self::new(
            excluded.into_iter().map(|p| (p, Exponent::zero())),
            DefaultExponent::Infinite,
        )
    }

    /// Supernatural with the given exponent at every prime. Only `0` and `∞`
    /// are representable.
    pub fn uniform(e: &Exponent) -> Result<Self, SupernatError> {
        if e.is_zero() {
            Ok(Self::one())
        } else if e.is_infinite() {
            Ok(Self::maximal())
        } else {
            Err(SupernatError::Unrepresentable(format!(
                "exponent {e} at every prime"
            )))
        }
    }

    pub fn default_exponent(&self) -> DefaultExponent {
        self.default
    }

    /// Explicitly listed primes with their exponents, ascending.
    pub fn exceptions(&self) -> impl Iterator<Item = (&BigUint, &Exponent)> {
        self.exceptions.iter()
    }

    pub fn exception_primes(&self) -> impl Iterator<Item = &BigUint> {
        self.exceptions.keys()
    }

    /// Exponent of `p`, which must be prime.
    pub fn valuation(&self, p: &BigUint) -> Result<Exponent, SupernatError> {
        if !is_prime(p) {
            return Err(SupernatError::NotPrime(p.clone()));
        }
        Ok(self.exponent_at(p))
    }

    /// Exponent of `p` without checking that `p` is prime.
    pub(crate) fn exponent_at(&self, p: &BigUint) -> Exponent {
        self.exceptions
            .get(p)
            .cloned()
            .unwrap_or_else(|| self.default.into())
    }

    pub fn is_maximal(&self) -> bool {
        self.default.is_infinite() && self.exceptions.is_empty()
    }

    pub fn is_one(&self) -> bool {
        !self.default.is_infinite() && self.exceptions.is_empty()
    }

    /// Every exponent is `0` or `∞`.
    pub fn is_completely_infinite(&self) -> bool {
        self.exceptions.values().all(Exponent::is_extreme)
    }

    /// `Some(n)` when `self` is a natural number.
    pub fn to_natural(&self) -> Option<Natural> {
        if self.default.is_infinite() {
            return None;
        }
        let mut factors = Vec::with_capacity(self.exceptions.len());
        for (p, e) in &self.exceptions {
            factors.push((p.clone(), e.as_finite()?.to_u64()?));
        }
        Some(Natural::from_factor_map(factors.into_iter().collect()))
    }

    /// When `self = s_p` for a single prime `p`, returns `p`.
    pub fn cofinite_prime(&self) -> Option<&BigUint> {
        if !self.default.is_infinite() || self.exceptions.len() != 1 {
            return None;
        }
        let (p, e) = self.exceptions.iter().next()?;
        e.is_zero().then_some(p)
    }

    pub fn divides(&self, other: &Supernatural) -> bool {
        if self.default > other.default {
            return false;
        }
        self.exceptions
            .keys()
            .chain(other.exceptions.keys())
            .all(|p| self.exponent_at(p) <= other.exponent_at(p))
    }

    fn combine(&self, other: &Supernatural, pick: impl Fn(Exponent, Exponent) -> Exponent, default: DefaultExponent) -> Supernatural {
        let mut exceptions = BTreeMap::new();
        for p in self.exceptions.keys().chain(other.exceptions.keys()) {
            if exceptions.contains_key(p) {
                continue;
            }
            exceptions.insert(p.clone(), pick(self.exponent_at(p), other.exponent_at(p)));
        }
        Self::from_parts(exceptions, default)
    }

    /// Per-prime minimum.
    pub fn gcd(&self, other: &Supernatural) -> Supernatural {
        self.combine(other, std::cmp::min, self.default.min(other.default))
    }

    /// Per-prime maximum.
    pub fn lcm(&self, other: &Supernatural) -> Supernatural {
        self.combine(other, std::cmp::max, self.default.max(other.default))
    }

    /// Per-prime sum, i.e. the product of the two formal products.
    pub fn mul(&self, other: &Supernatural) -> Supernatural {
        self.combine(
            other,
            |a, b| a.add(&b),
            self.default.max(other.default),
        )
    }

    /// Position of the two values in the divisibility order.
    pub fn compare_divisibility(&self, other: &Supernatural) -> Option<Ordering> {
        match (self.divides(other), other.divides(self)) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Less),
            (false, true) => Some(Ordering::Greater),
            (false, false) => None,
        }
    }
}

impl From<&Natural> for Supernatural {
    fn from(n: &Natural) -> Self {
        n.to_supernatural()
    }
}

impl From<Natural> for Supernatural {
    fn from(n: Natural) -> Self {
        n.to_supernatural()
    }
}

impl fmt::Display for Supernatural {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (p, e) in &self.exceptions {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            match e {
                Exponent::Finite(k) if k.is_one() => write!(f, "{p}")?,
                _ => write!(f, "{p}^{e}")?,
            }
        }
        match self.default {
            DefaultExponent::Zero if first => f.write_str("1"),
            DefaultExponent::Zero => Ok(()),
            DefaultExponent::Infinite => f.write_str(";default=inf"),
        }
    }
}

impl fmt::Debug for Supernatural {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Supernatural({self})")
    }
}

impl FromStr for Supernatural {
    type Err = SupernatError;

    /// Accepts `FACTORS[;default=0|inf]`. A factor is `b` or `b^e` where `b`
    /// is a positive integer (composites are factored) and `e` a nonnegative
    /// integer or `inf`; repeated primes multiply.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_supernatural(&mut Cursor::new(s.trim()), true)
    }
}

pub(crate) fn parse_supernatural(
    cur: &mut Cursor<'_>,
    require_end: bool,
) -> Result<Supernatural, SupernatError> {
    let mut exps: BTreeMap<BigUint, Exponent> = BTreeMap::new();
    if !matches!(cur.peek(), Some(';')) {
        loop {
            let start = cur.pos();
            let digits = cur
                .digits()
                .ok_or_else(|| cur.error("a positive integer factor"))?;
            let base: BigUint = digits.parse().expect("digit string");
            if base.is_zero() {
                return Err(ParseError::new(start, "a positive integer factor", Some('0')).into());
            }
            let exp = if cur.eat('^') {
                if cur.eat_str("inf") {
                    Exponent::Infinite
                } else {
                    let d = cur
                        .digits()
                        .ok_or_else(|| cur.error("an exponent (integer or 'inf')"))?;
                    Exponent::Finite(d.parse().expect("digit string"))
                }
            } else {
                Exponent::finite(1)
            };
            for (p, k) in factor(&base) {
                let contribution = match &exp {
                    Exponent::Finite(e) => Exponent::Finite(e * k),
                    Exponent::Infinite => Exponent::Infinite,
                };
                let slot = exps.entry(p).or_insert_with(Exponent::zero);
                *slot = slot.add(&contribution);
            }
            if !cur.eat('*') {
                break;
            }
        }
    }
    let default = if cur.eat(';') {
        if !cur.eat_str("default=") {
            return Err(cur.error("'default='").into());
        }
        if cur.eat_str("inf") {
            DefaultExponent::Infinite
        } else if cur.eat('0') {
            DefaultExponent::Zero
        } else {
            return Err(cur.error("'0' or 'inf'").into());
        }
    } else {
        DefaultExponent::Zero
    };
    if require_end && !cur.at_end() {
        return Err(cur.error("'*', ';' or end of input").into());
    }
    Ok(Supernatural::from_parts(exps, default))
}

pub fn divides(a: &Supernatural, b: &Supernatural) -> bool {
    a.divides(b)
}

pub fn gcd(a: &Supernatural, b: &Supernatural) -> Supernatural {
    a.gcd(b)
}

pub fn lcm(a: &Supernatural, b: &Supernatural) -> Supernatural {
    a.lcm(b)
}

pub fn is_completely_infinite(s: &Supernatural) -> bool {
    s.is_completely_infinite()
}

pub fn valuation(s: &Supernatural, p: &BigUint) -> Result<Exponent, SupernatError> {
    s.valuation(p)
}
