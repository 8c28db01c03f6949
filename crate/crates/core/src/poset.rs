//! Embedding finite posets into `(ℕ₊, ∣)`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::supernat::{next_prime, Natural};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("relation is not transitive: {0:?} ≤ {1:?} ≤ {2:?}")]
    NotTransitive(String, String, String),
    #[error("relation is not antisymmetric: {0:?} and {1:?}")]
    NotAntisymmetric(String, String),
    #[error("invalid poset document: {0}")]
    Document(String),
    #[error("embedding has no image for {0:?}")]
    MissingImage(String),
}

/// A finite partial order on labelled elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    labels: Vec<String>,
    /// `leq[i][j]` iff element `i ≤` element `j`.
    leq: Vec<Vec<bool>>,
}

/// On-disk form: elements and the pairs of a generating relation (usually
/// the covers); the order is its reflexive-transitive closure.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PosetDocument {
    pub elements: Vec<String>,
    #[serde(default)]
    pub covers: Vec<(String, String)>,
}

impl FinitePoset {
    /// `pairs` must already be transitive; reflexive pairs are implied.
    pub fn new<S: Into<String>>(
        labels: impl IntoIterator<Item = S>,
        pairs: impl IntoIterator<Item = (S, S)>,
    ) -> Result<Self, PosetError> {
        let (labels, leq) = Self::raw(labels, pairs)?;
        let poset = FinitePoset { labels, leq };
        poset.check()?;
        Ok(poset)
    }

    /// The order generated by `covers`.
    pub fn from_covers<S: Into<String>>(
        labels: impl IntoIterator<Item = S>,
        covers: impl IntoIterator<Item = (S, S)>,
    ) -> Result<Self, PosetError> {
        let (labels, mut leq) = Self::raw(labels, covers)?;
        let k = labels.len();
        for m in 0..k {
            for i in 0..k {
                if leq[i][m] {
                    for j in 0..k {
                        if leq[m][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        let poset = FinitePoset { labels, leq };
        poset.check()?;
        Ok(poset)
    }

    pub fn from_document(doc: &PosetDocument) -> Result<Self, PosetError> {
        Self::from_covers(
            doc.elements.iter().cloned(),
            doc.covers.iter().cloned(),
        )
    }

    pub fn from_json(text: &str) -> Result<Self, PosetError> {
        let doc: PosetDocument =
            serde_json::from_str(text).map_err(|e| PosetError::Document(e.to_string()))?;
        Self::from_document(&doc)
    }

    /// Line format: `a < b < c` adds covers, a bare `d` adds an element,
    /// `#` starts a comment. JSON documents are accepted as well.
    pub fn parse(text: &str) -> Result<Self, PosetError> {
        if text.trim_start().starts_with('{') {
            return Self::from_json(text);
        }
        let mut doc = PosetDocument {
            elements: Vec::new(),
            covers: Vec::new(),
        };
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let chain: Vec<&str> = line.split('<').map(str::trim).collect();
            if chain.iter().any(|l| l.is_empty() || l.contains(char::is_whitespace)) {
                return Err(PosetError::Document(format!(
                    "line {}: expected labels separated by '<'",
                    lineno + 1
                )));
            }
            for l in &chain {
                if !doc.elements.iter().any(|e| e == l) {
                    doc.elements.push(l.to_string());
                }
            }
            for w in chain.windows(2) {
                doc.covers.push((w[0].to_string(), w[1].to_string()));
            }
        }
        Self::from_document(&doc)
    }

    /// Elements `0..k` ordered by the given matrix. Used by enumerations.
    pub fn from_matrix(leq: Vec<Vec<bool>>) -> Result<Self, PosetError> {
        let labels = (0..leq.len()).map(|i| format!("e{i}")).collect();
        let poset = FinitePoset { labels, leq };
        poset.check()?;
        Ok(poset)
    }

    fn raw<S: Into<String>>(
        labels: impl IntoIterator<Item = S>,
        pairs: impl IntoIterator<Item = (S, S)>,
    ) -> Result<(Vec<String>, Vec<Vec<bool>>), PosetError> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut index = BTreeMap::new();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(PosetError::DuplicateLabel(l.clone()));
            }
        }
        let k = labels.len();
        let mut leq = vec![vec![false; k]; k];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for (a, b) in pairs {
            let (a, b): (String, String) = (a.into(), b.into());
            let i = *index.get(&a).ok_or(PosetError::UnknownLabel(a.clone()))?;
            let j = *index.get(&b).ok_or(PosetError::UnknownLabel(b.clone()))?;
            leq[i][j] = true;
        }
        Ok((labels, leq))
    }

    fn check(&self) -> Result<(), PosetError> {
        let k = self.len();
        for i in 0..k {
            for j in 0..k {
                if i != j && self.leq[i][j] && self.leq[j][i] {
                    return Err(PosetError::NotAntisymmetric(
                        self.labels[i].clone(),
                        self.labels[j].clone(),
                    ));
                }
                if !self.leq[i][j] {
                    continue;
                }
                for m in 0..k {
                    if self.leq[j][m] && !self.leq[i][m] {
                        return Err(PosetError::NotTransitive(
                            self.labels[i].clone(),
                            self.labels[j].clone(),
                            self.labels[m].clone(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    fn restrict(&self, keep: &[usize]) -> FinitePoset {
        FinitePoset {
            labels: keep.iter().map(|&i| self.labels[i].clone()).collect(),
            leq: keep
                .iter()
                .map(|&i| keep.iter().map(|&j| self.leq[i][j]).collect())
                .collect(),
        }
    }
}

/// An assignment of naturals to the labels of a poset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivEmbedding {
    pub map: BTreeMap<String, Natural>,
}

impl DivEmbedding {
    pub fn get(&self, label: &str) -> Option<&Natural> {
        self.map.get(label)
    }
}

/// `p_i ↦ p_{i+1}`, extended multiplicatively: an isomorphism of `(ℕ₊, ∣)`
/// onto the odd numbers.
fn prime_shift(n: &Natural) -> Natural {
    Natural::from_prime_powers(n.factors().iter().map(|(p, e)| (next_prime(p), *e)))
        .expect("shifted primes are prime")
}

fn double(n: &Natural) -> Natural {
    n.mul(&Natural::from_prime_powers([(BigUint::from(2u32), 1)]).expect("2 is prime"))
}

fn embed_into(poset: &FinitePoset) -> Vec<Natural> {
    let k = poset.len();
    if k == 0 {
        return Vec::new();
    }
    // least-labelled minimal element
    let x = (0..k)
        .filter(|&i| (0..k).all(|j| j == i || !poset.leq(j, i)))
        .min_by(|&a, &b| poset.labels[a].cmp(&poset.labels[b]))
        .expect("finite posets have minimal elements");
    let rest: Vec<usize> = (0..k).filter(|&i| i != x).collect();
    let inner = embed_into(&poset.restrict(&rest));
    let above: Vec<bool> = rest.iter().map(|&i| poset.leq(x, i)).collect();
    let all_above = above.iter().all(|&a| a);
    let none_above = !above.iter().any(|&a| a);

    let mut out = vec![Natural::one(); k];
    out[x] = Natural::from_prime_powers([(BigUint::from(2u32), 1)]).expect("2 is prime");
    for ((&i, h), &up) in rest.iter().zip(&inner).zip(&above) {
        out[i] = if all_above {
            double(h)
        } else if none_above {
            prime_shift(h)
        } else if up {
            double(&prime_shift(h))
        } else {
            prime_shift(h)
        };
    }
    out
}

/// Order-embeds `poset` into the divisibility order.
///
/// The least-labelled minimal element `x` goes to `2`; the rest of the
/// poset is embedded once, then elements above `x` land among the even
/// numbers and the others among the odd numbers (through the prime shift).
/// When everything else lies above `x` the shift is skipped, so a chain
/// becomes `2, 4, 8, …`.
pub fn embed_poset(poset: &FinitePoset) -> DivEmbedding {
    let images = embed_into(poset);
    DivEmbedding {
        map: poset.labels.iter().cloned().zip(images).collect(),
    }
}

/// `x ≤ y ⟺ E(x) ∣ E(y)` for all pairs, and `E` injective.
pub fn verify_embedding(poset: &FinitePoset, embedding: &DivEmbedding) -> bool {
    let images: Option<Vec<&Natural>> = poset.labels.iter().map(|l| embedding.get(l)).collect();
    let Some(images) = images else {
        return false;
    };
    let distinct: BTreeSet<&Natural> = images.iter().copied().collect();
    if distinct.len() != images.len() {
        return false;
    }
    let k = poset.len();
    (0..k).all(|i| (0..k).all(|j| poset.leq(i, j) == images[i].divides(images[j])))
}

/// All partial orders on `k` elements up to isomorphism, one representative
/// per class.
pub fn posets_up_to_iso(k: usize) -> Vec<FinitePoset> {
    let pairs: Vec<(usize, usize)> = (0..k)
        .flat_map(|i| (0..k).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let perms = permutations(k);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        let mut leq = vec![vec![false; k]; k];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for (bit, &(i, j)) in pairs.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                leq[i][j] = true;
            }
        }
        let Ok(poset) = FinitePoset::from_matrix(leq) else {
            continue;
        };
        let canon = perms
            .iter()
            .map(|perm| {
                let mut bits = Vec::with_capacity(k * k);
                for i in 0..k {
                    for j in 0..k {
                        bits.push(poset.leq(perm[i], perm[j]));
                    }
                }
                bits
            })
            .min()
            .unwrap_or_default();
        if seen.insert(canon) {
            out.push(poset);
        }
    }
    out
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}
