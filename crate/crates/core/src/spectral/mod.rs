//! The space of supernatural numbers with its patch structure.
//!
//! [`PatchExpr`] is a finite grammar of patches: quasi-compact opens, point
//! closures, sets of multiples, complements of principal opens, the power
//! set of the primes, the copy of `spec(ℤ)`, and finite unions and
//! intersections of those. Membership is decided by [`PatchExpr::contains`];
//! trace questions of the form "is there an `s ∈ (n) ∩ S` avoiding these
//! multiples" are decided by [`trace_nonempty_witness`].

mod pcfb;
mod solver;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::supernat::{parse_supernatural, Natural, SupernatError, Supernatural};
use crate::text::{Cursor, ParseError};

pub use pcfb::{
    basic_intersect, cofinal_chain, pcfb_limit, verify_pcfb_limit, GeometricTail, PcfbBasic,
    PcfbError, SequenceSpec,
};
pub use solver::{trace_nonempty_witness, SolverError, DISJUNCT_BUDGET};

#[derive(Debug, Error)]
pub enum PatchParseError {
    #[error("parse error {0}")]
    Syntax(#[from] ParseError),
    #[error(transparent)]
    Literal(#[from] SupernatError),
    #[error("invalid patch document: {0}")]
    Document(#[from] serde_json::Error),
}

/// A patch of the space of supernatural numbers, as an expression tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PatchExpr {
    /// `{ s : some generator divides s }`.
    #[serde(rename = "fgopen")]
    FgOpen(Vec<Natural>),
    /// `{ s : s ∣ t }`.
    #[serde(rename = "divclosure")]
    DivisorClosure(Supernatural),
    /// `{ s : t ∣ s }`.
    #[serde(rename = "multiples")]
    MultiplesOf(Supernatural),
    /// `{ s : n ∤ s }`.
    #[serde(rename = "notabove")]
    NotAbove(Natural),
    /// Supernatural numbers all of whose exponents are `0` or `∞`.
    #[serde(rename = "powersetprimes")]
    PowerSetPrimes,
    /// `{ s_p : p prime } ∪ { ∏_p p^∞ }`.
    #[serde(rename = "specz")]
    SpecZ,
    #[serde(rename = "full")]
    Full,
    #[serde(rename = "empty")]
    Empty,
    #[serde(rename = "union")]
    Union(Vec<PatchExpr>),
    #[serde(rename = "intersection")]
    Intersection(Vec<PatchExpr>),
}

impl PatchExpr {
    pub fn union(children: impl IntoIterator<Item = PatchExpr>) -> Self {
        PatchExpr::Union(children.into_iter().collect())
    }

    pub fn intersection(children: impl IntoIterator<Item = PatchExpr>) -> Self {
        PatchExpr::Intersection(children.into_iter().collect())
    }

    /// The finite set of the given points, written as a union of singletons
    /// `{s} = closure{s} ∩ multiples(s)`.
    pub fn finite_set<'a>(points: impl IntoIterator<Item = &'a Supernatural>) -> Self {
        PatchExpr::Union(
            points
                .into_iter()
                .map(|s| {
                    PatchExpr::Intersection(vec![
                        PatchExpr::DivisorClosure(s.clone()),
                        PatchExpr::MultiplesOf(s.clone()),
                    ])
                })
                .collect(),
        )
    }

    /// Membership of `s` in the denoted set.
    pub fn contains(&self, s: &Supernatural) -> bool {
        match self {
            PatchExpr::FgOpen(gens) => gens.iter().any(|g| g.divides_supernatural(s)),
            PatchExpr::DivisorClosure(t) => s.divides(t),
            PatchExpr::MultiplesOf(t) => t.divides(s),
            PatchExpr::NotAbove(n) => !n.divides_supernatural(s),
            PatchExpr::PowerSetPrimes => s.is_completely_infinite(),
            PatchExpr::SpecZ => s.is_maximal() || s.cofinite_prime().is_some(),
            PatchExpr::Full => true,
            PatchExpr::Empty => false,
            PatchExpr::Union(children) => children.iter().any(|c| c.contains(s)),
            PatchExpr::Intersection(children) => children.iter().all(|c| c.contains(s)),
        }
    }

    /// Every prime mentioned by a leaf parameter.
    pub fn mentioned_primes(&self, out: &mut Vec<BigUint>) {
        match self {
            PatchExpr::FgOpen(gens) => {
                for g in gens {
                    out.extend(g.primes().cloned());
                }
            }
            PatchExpr::DivisorClosure(t) | PatchExpr::MultiplesOf(t) => {
                out.extend(t.exception_primes().cloned())
            }
            PatchExpr::NotAbove(n) => out.extend(n.primes().cloned()),
            PatchExpr::Union(children) | PatchExpr::Intersection(children) => {
                for c in children {
                    c.mentioned_primes(out);
                }
            }
            PatchExpr::PowerSetPrimes | PatchExpr::SpecZ | PatchExpr::Full | PatchExpr::Empty => {}
        }
    }

    /// Largest finite exponent mentioned by a leaf parameter (0 if none).
    pub fn max_finite_exponent(&self) -> BigUint {
        match self {
            PatchExpr::FgOpen(gens) => gens
                .iter()
                .flat_map(|g| g.factors().iter().map(|(_, e)| BigUint::from(*e)))
                .max()
                .unwrap_or_default(),
            PatchExpr::DivisorClosure(t) | PatchExpr::MultiplesOf(t) => t
                .exceptions()
                .filter_map(|(_, e)| e.as_finite().cloned())
                .max()
                .unwrap_or_default(),
            PatchExpr::NotAbove(n) => n
                .factors()
                .iter()
                .map(|(_, e)| BigUint::from(*e))
                .max()
                .unwrap_or_default(),
            PatchExpr::Union(children) | PatchExpr::Intersection(children) => children
                .iter()
                .map(PatchExpr::max_finite_exponent)
                .max()
                .unwrap_or_default(),
            PatchExpr::PowerSetPrimes | PatchExpr::SpecZ | PatchExpr::Full | PatchExpr::Empty => {
                BigUint::default()
            }
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            PatchExpr::Union(c) | PatchExpr::Intersection(c) => {
                1 + c.iter().map(PatchExpr::node_count).sum::<usize>()
            }
            _ => 1,
        }
    }

    /// The structured document form.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("patch expressions always serialize")
    }

    pub fn from_json(doc: &str) -> Result<Self, PatchParseError> {
        Ok(serde_json::from_str(doc)?)
    }
}

/// `member(s, S)`.
pub fn member(s: &Supernatural, patch: &PatchExpr) -> bool {
    patch.contains(s)
}

impl fmt::Display for PatchExpr {
    /// Compact one-line syntax, e.g. `union(specz,multiples:2^inf*3)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatchExpr::FgOpen(gens) => {
                f.write_str("fgopen:(")?;
                for (i, g) in gens.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{g}")?;
                }
                f.write_str(")")
            }
            PatchExpr::DivisorClosure(t) => write!(f, "divclosure:{t}"),
            PatchExpr::MultiplesOf(t) => write!(f, "multiples:{t}"),
            PatchExpr::NotAbove(n) => write!(f, "notabove:{n}"),
            PatchExpr::PowerSetPrimes => f.write_str("powersetprimes"),
            PatchExpr::SpecZ => f.write_str("specz"),
            PatchExpr::Full => f.write_str("full"),
            PatchExpr::Empty => f.write_str("empty"),
            PatchExpr::Union(c) | PatchExpr::Intersection(c) => {
                let tag = if matches!(self, PatchExpr::Union(_)) {
                    "union"
                } else {
                    "intersection"
                };
                write!(f, "{tag}(")?;
                for (i, child) in c.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{child}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl FromStr for PatchExpr {
    type Err = PatchParseError;

    /// Accepts either the compact syntax or a JSON document (detected by a
    /// leading `{` or `"`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim();
        if trimmed.starts_with('{') || trimmed.starts_with('"') {
            return PatchExpr::from_json(trimmed);
        }
        let mut cur = Cursor::new(trimmed);
        let expr = parse_expr(&mut cur)?;
        cur.expect_end()?;
        Ok(expr)
    }
}

fn parse_natural(cur: &mut Cursor<'_>) -> Result<Natural, PatchParseError> {
    let start = cur.pos();
    let digits = cur
        .digits()
        .ok_or_else(|| cur.error("a positive integer"))?;
    let value: BigUint = digits.parse().expect("digit string");
    Natural::new(value).map_err(|_| ParseError::new(start, "a positive integer", Some('0')).into())
}

fn parse_expr(cur: &mut Cursor<'_>) -> Result<PatchExpr, PatchParseError> {
    cur.skip_ws();
    let start = cur.pos();
    let tag = cur.ident().ok_or_else(|| cur.error("a patch tag"))?;
    let expr = match tag {
        "fgopen" => {
            cur.expect(':')?;
            let mut gens = Vec::new();
            if cur.eat('(') {
                cur.skip_ws();
                if !cur.eat(')') {
                    loop {
                        cur.skip_ws();
                        gens.push(parse_natural(cur)?);
                        cur.skip_ws();
                        if cur.eat(')') {
                            break;
                        }
                        cur.expect(',')?;
                    }
                }
            } else {
                gens.push(parse_natural(cur)?);
            }
            PatchExpr::FgOpen(gens)
        }
        "divclosure" | "multiples" => {
            cur.expect(':')?;
            let t = parse_supernatural(cur, false)?;
            if tag == "divclosure" {
                PatchExpr::DivisorClosure(t)
            } else {
                PatchExpr::MultiplesOf(t)
            }
        }
        "notabove" => {
            cur.expect(':')?;
            PatchExpr::NotAbove(parse_natural(cur)?)
        }
        "powersetprimes" => PatchExpr::PowerSetPrimes,
        "specz" => PatchExpr::SpecZ,
        "full" => PatchExpr::Full,
        "empty" => PatchExpr::Empty,
        "union" | "intersection" => {
            cur.skip_ws();
            cur.expect('(')?;
            let mut children = Vec::new();
            cur.skip_ws();
            if !cur.eat(')') {
                loop {
                    children.push(parse_expr(cur)?);
                    cur.skip_ws();
                    if cur.eat(')') {
                        break;
                    }
                    cur.expect(',')?;
                }
            }
            if tag == "union" {
                PatchExpr::Union(children)
            } else {
                PatchExpr::Intersection(children)
            }
        }
        _ => {
            return Err(ParseError::new(
                start,
                "one of fgopen, divclosure, multiples, notabove, powersetprimes, specz, full, empty, union, intersection",
                tag.chars().next(),
            )
            .into())
        }
    };
    Ok(expr)
}

// Naturals and supernaturals travel as their literal strings inside
// structured documents; naturals also accept bare JSON integers.

impl Serialize for Natural {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Natural {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct V;
        impl serde::de::Visitor<'_> for V {
            type Value = Natural;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a positive integer or its decimal string")
            }
            fn visit_u64<E: serde::de::Error>(self, v: u64) -> Result<Natural, E> {
                Natural::from_u64(v).map_err(E::custom)
            }
            fn visit_i64<E: serde::de::Error>(self, v: i64) -> Result<Natural, E> {
                u64::try_from(v)
                    .map_err(E::custom)
                    .and_then(|v| Natural::from_u64(v).map_err(E::custom))
            }
            fn visit_str<E: serde::de::Error>(self, v: &str) -> Result<Natural, E> {
                v.parse().map_err(E::custom)
            }
        }
        deserializer.deserialize_any(V)
    }
}

impl Serialize for Supernatural {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Supernatural {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sn(s: &str) -> Supernatural {
        s.parse().unwrap()
    }

    #[test]
    fn membership_examples() {
        let s5 = sn("5^0;default=inf");
        assert!(member(&s5, &PatchExpr::SpecZ));
        assert!(!member(&sn("2^inf"), &PatchExpr::SpecZ));
        assert!(member(&Supernatural::maximal(), &PatchExpr::SpecZ));
        assert!(!member(&sn("6"), &PatchExpr::PowerSetPrimes));
        assert!(member(&Supernatural::one(), &PatchExpr::PowerSetPrimes));
        assert!(member(&sn("4"), &"divclosure:2^inf*3".parse().unwrap()));
        assert!(member(&sn("2^inf*3^inf*7"), &"multiples:2^inf*3^inf".parse().unwrap()));
        assert!(!member(&sn("12"), &"notabove:4".parse().unwrap()));
        assert!(member(&sn("10"), &"fgopen:(3,5)".parse().unwrap()));
    }

    #[test]
    fn finite_sets_are_exact() {
        let pts = [sn("2"), sn("12"), sn("2^inf")];
        let patch = PatchExpr::finite_set(pts.iter());
        for p in &pts {
            assert!(patch.contains(p));
        }
        assert!(!patch.contains(&sn("4")));
        assert!(!patch.contains(&sn("6")));
    }

    #[test]
    fn compact_syntax_round_trip() {
        let text = "intersection(union(specz,fgopen:(2,15)),multiples:2^inf*3,notabove:12,divclosure:5^0;default=inf,fgopen:(),union())";
        let expr: PatchExpr = text.parse().unwrap();
        assert_eq!(expr.to_string(), text);
        let again: PatchExpr = expr.to_string().parse().unwrap();
        assert_eq!(again, expr);
    }

    #[test]
    fn json_document_round_trip() {
        let expr: PatchExpr = "union(specz,multiples:2^inf*3,fgopen:(4,9))".parse().unwrap();
        let doc = expr.to_json().to_string();
        assert_eq!(
            doc,
            r#"{"union":["specz",{"multiples":"2^inf*3"},{"fgopen":["4","9"]}]}"#
        );
        assert_eq!(doc.parse::<PatchExpr>().unwrap(), expr);
        let with_numbers = r#"{"fgopen":[4,9]}"#.parse::<PatchExpr>().unwrap();
        assert_eq!(with_numbers, "fgopen:(4,9)".parse().unwrap());
    }

    #[test]
    fn syntax_errors_report_position() {
        match "union(specz,bogus)".parse::<PatchExpr>() {
            Err(PatchParseError::Syntax(e)) => assert_eq!(e.position, 12),
            other => panic!("unexpected {other:?}"),
        }
        match "union(specz".parse::<PatchExpr>() {
            Err(PatchParseError::Syntax(e)) => {
                assert_eq!(e.position, 11);
                assert_eq!(e.expected, "','");
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!("fgopen:0".parse::<PatchExpr>().is_err());
        assert!("multiples:2^".parse::<PatchExpr>().is_err());
    }
}
