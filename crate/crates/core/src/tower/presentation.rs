use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{standard_embedding, TowerError, TowerMatrix};
use crate::supernat::{Natural, Supernatural};
use crate::text::Cursor;

/// A noncommutative polynomial: coefficient per word in the generators.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NcPoly {
    terms: BTreeMap<Vec<usize>, BigRational>,
}

impl NcPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, coefficient: BigRational, word: Vec<usize>) {
        let slot = self.terms.entry(word).or_insert_with(BigRational::zero);
        *slot += coefficient;
        if slot.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &BigRational)> {
        self.terms.iter()
    }

    /// Evaluates with `1 ↦ I` at the stage of `values`.
    pub fn evaluate(&self, values: &[&TowerMatrix]) -> Result<TowerMatrix, TowerError> {
        let layout = values
            .first()
            .map(|m| m.layout().clone())
            .ok_or_else(|| TowerError::NotAnEmbedding("no generators to evaluate".into()))?;
        let mut acc = TowerMatrix::zeros(layout.clone());
        for (word, c) in &self.terms {
            let mut w = TowerMatrix::identity(layout.clone());
            for &g in word {
                w = w.mul(values[g])?;
            }
            acc = acc.add(&w.scale(c))?;
        }
        Ok(acc)
    }

    fn write(&self, names: &[String], f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (word, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let magnitude = c.abs();
            let mut parts: Vec<String> = Vec::new();
            if !magnitude.is_one() || word.is_empty() {
                parts.push(magnitude.to_string());
            }
            parts.extend(word.iter().map(|&g| names[g].clone()));
            f.write_str(&parts.join("*"))?;
        }
        Ok(())
    }
}

/// `<x, y | x*y - y*x - 1, x^2>`: generators, then relations, each
/// relation meaning "this polynomial is zero".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraPresentation {
    generators: Vec<String>,
    relations: Vec<NcPoly>,
}

impl AlgebraPresentation {
    pub fn new(generators: Vec<String>, relations: Vec<NcPoly>) -> Result<Self, TowerError> {
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].contains(g) {
                return Err(TowerError::UndeclaredGenerator(format!("{g} (declared twice)")));
            }
        }
        for r in &relations {
            if let Some(bad) = r.terms.keys().flatten().find(|&&g| g >= generators.len()) {
                return Err(TowerError::UndeclaredGenerator(format!("#{bad}")));
            }
        }
        Ok(AlgebraPresentation {
            generators,
            relations,
        })
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relations(&self) -> &[NcPoly] {
        &self.relations
    }
}

impl fmt::Display for AlgebraPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{} |", self.generators.join(", "))?;
        for (i, r) in self.relations.iter().enumerate() {
            f.write_str(if i == 0 { " " } else { ", " })?;
            r.write(&self.generators, f)?;
        }
        f.write_str(">")
    }
}

impl FromStr for AlgebraPresentation {
    type Err = TowerError;

    fn from_str(s: &str) -> Result<Self, TowerError> {
        let mut cur = Cursor::new(s);
        cur.skip_ws();
        cur.expect('<')?;
        let mut generators = Vec::new();
        loop {
            cur.skip_ws();
            match cur.ident() {
                Some(g) => generators.push(g.to_string()),
                None if generators.is_empty() && cur.peek() == Some('|') => break,
                None => return Err(cur.error("a generator name").into()),
            }
            cur.skip_ws();
            if !cur.eat(',') {
                break;
            }
        }
        cur.skip_ws();
        cur.expect('|')?;
        let mut relations = Vec::new();
        cur.skip_ws();
        if !cur.eat('>') {
            loop {
                relations.push(parse_poly(&mut cur, &generators)?);
                cur.skip_ws();
                if cur.eat('>') {
                    break;
                }
                cur.expect(',').map_err(|_| cur.error("',' or '>'"))?;
            }
        }
        cur.expect_end()?;
        AlgebraPresentation::new(generators, relations)
    }
}

fn parse_poly(cur: &mut Cursor<'_>, names: &[String]) -> Result<NcPoly, TowerError> {
    let mut poly = NcPoly::zero();
    let mut first = true;
    loop {
        cur.skip_ws();
        let negative = if cur.eat('-') {
            true
        } else if cur.eat('+') || first {
            false
        } else {
            return Ok(poly);
        };
        first = false;
        let mut coefficient = if negative {
            -BigRational::one()
        } else {
            BigRational::one()
        };
        let mut word = Vec::new();
        loop {
            cur.skip_ws();
            if let Some(d) = cur.digits() {
                let num: BigInt = d.parse().expect("digits");
                let mut value = BigRational::from_integer(num);
                if cur.eat('/') {
                    let den = cur.digits().ok_or_else(|| cur.error("a denominator"))?;
                    let den: BigInt = den.parse().expect("digits");
                    if den.is_zero() {
                        return Err(cur.error("a nonzero denominator").into());
                    }
                    value /= BigRational::from_integer(den);
                }
                coefficient *= value;
            } else {
                let name = cur.ident().ok_or_else(|| cur.error("a coefficient or generator"))?;
                let g = names
                    .iter()
                    .position(|n| n == name)
                    .ok_or_else(|| TowerError::UndeclaredGenerator(name.to_string()))?;
                let mut power = 1usize;
                if cur.eat('^') {
                    power = cur
                        .digits()
                        .ok_or_else(|| cur.error("an exponent"))?
                        .parse()
                        .map_err(|_| cur.error("a small exponent"))?;
                }
                word.extend(std::iter::repeat_n(g, power));
            }
            cur.skip_ws();
            if !cur.eat('*') {
                break;
            }
        }
        poly.add_term(coefficient, word);
    }
}

/// True iff every relation vanishes once each generator is replaced by its
/// assigned matrix.
pub fn check_representation(
    presentation: &AlgebraPresentation,
    assignment: &BTreeMap<String, TowerMatrix>,
) -> Result<bool, TowerError> {
    if let Some(extra) = assignment.keys().find(|k| !presentation.generators.contains(k)) {
        return Err(TowerError::UndeclaredGenerator(extra.clone()));
    }
    let values = presentation
        .generators
        .iter()
        .map(|g| assignment.get(g).ok_or_else(|| TowerError::MissingGenerator(g.clone())))
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(first) = values.first() {
        if let Some(bad) = values.iter().find(|v| v.layout() != first.layout()) {
            return Err(TowerError::StageMismatch {
                left: first.layout().n(),
                right: bad.layout().n(),
            });
        }
    } else {
        // no generators: relations are constants, zero iff the polynomial is
        return Ok(presentation.relations.iter().all(|r| r.terms.is_empty()));
    }
    for r in &presentation.relations {
        if !r.evaluate(&values)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Pushes every assigned matrix along `ρ_{n,m}`.
pub fn push_assignment(
    assignment: &BTreeMap<String, TowerMatrix>,
    m: u64,
) -> Result<BTreeMap<String, TowerMatrix>, TowerError> {
    assignment
        .iter()
        .map(|(k, v)| Ok((k.clone(), standard_embedding(v, m)?)))
        .collect()
}

/// One factor `A ⊗ C_i` of degree `d_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub degree: Natural,
    pub center: String,
}

/// `C_1 × ⋯ × C_k` with pairwise distinct degrees; no components is the
/// zero ring.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ComponentAlgebra {
    components: Vec<Component>,
}

impl ComponentAlgebra {
    pub fn new(components: Vec<Component>) -> Result<Self, TowerError> {
        for (i, c) in components.iter().enumerate() {
            if components[..i].iter().any(|d| d.degree == c.degree) {
                return Err(TowerError::DuplicateDegree(c.degree.to_string()));
            }
        }
        Ok(ComponentAlgebra { components })
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn degrees(&self) -> Vec<&Natural> {
        self.components.iter().map(|c| &c.degree).collect()
    }
}

/// `A_s = ∏_{d_i ∣ s} A ⊗ C_i`.
pub fn truncate(a: &ComponentAlgebra, s: &Supernatural) -> ComponentAlgebra {
    ComponentAlgebra {
        components: a
            .components
            .iter()
            .filter(|c| c.degree.divides_supernatural(s))
            .cloned()
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tower::SlotLayout;

    fn int(n: u64, rows: &[Vec<i64>]) -> TowerMatrix {
        TowerMatrix::from_integers(SlotLayout::new(n).unwrap(), rows).unwrap()
    }

    fn assign(pairs: &[(&str, TowerMatrix)]) -> BTreeMap<String, TowerMatrix> {
        pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
    }

    #[test]
    fn parse_and_print() {
        let r: AlgebraPresentation = "<x,y | x*y - y*x - 1>".parse().unwrap();
        assert_eq!(r.generators(), &["x", "y"]);
        let printed = r.to_string();
        assert_eq!(printed.parse::<AlgebraPresentation>().unwrap(), r);
        let r: AlgebraPresentation = "<x | x^2 - 1, 1/2*x*2*x - 1>".parse().unwrap();
        assert_eq!(r.relations()[0], r.relations()[1].clone());
        assert!("<x | y>".parse::<AlgebraPresentation>().is_err());
        assert!("<x | x".parse::<AlgebraPresentation>().is_err());
        let empty: AlgebraPresentation = "< | >".parse().unwrap();
        assert!(empty.generators().is_empty());
    }

    #[test]
    fn involution() {
        let r: AlgebraPresentation = "<x | x^2 - 1>".parse().unwrap();
        let x = int(2, &[vec![1, 0], vec![0, -1]]);
        let a = assign(&[("x", x)]);
        assert!(check_representation(&r, &a).unwrap());
        assert!(check_representation(&r, &push_assignment(&a, 4).unwrap()).unwrap());
    }

    #[test]
    fn weyl_relation_fails() {
        let r: AlgebraPresentation = "<x,y | x*y - y*x - 1>".parse().unwrap();
        let l = SlotLayout::new(2).unwrap();
        let a = assign(&[
            ("x", TowerMatrix::unit(l.clone(), 0, 1)),
            ("y", TowerMatrix::unit(l, 1, 0)),
        ]);
        assert!(!check_representation(&r, &a).unwrap());
        let value = r.relations()[0]
            .evaluate(&[&a["x"], &a["y"]])
            .unwrap();
        assert_eq!(value, int(2, &[vec![0, 0], vec![0, -2]]));
        let mut extra = a.clone();
        extra.insert("z".into(), a["x"].clone());
        assert!(matches!(
            check_representation(&r, &extra),
            Err(TowerError::UndeclaredGenerator(_))
        ));
    }

    #[test]
    fn truncation() {
        let nat = |n| Natural::from_u64(n).unwrap();
        let a = ComponentAlgebra::new(vec![
            Component { degree: nat(2), center: "Q".into() },
            Component { degree: nat(3), center: "Q".into() },
        ])
        .unwrap();
        let s: Supernatural = "2^inf".parse().unwrap();
        let t = truncate(&a, &s);
        assert_eq!(t.degrees(), vec![&nat(2)]);
        assert_eq!(truncate(&t, &s), t);
        assert!(truncate(&a, &"5".parse().unwrap()).is_zero());
        assert!(ComponentAlgebra::new(vec![
            Component { degree: nat(2), center: "a".into() },
            Component { degree: nat(2), center: "b".into() },
        ])
        .is_err());
    }
}
