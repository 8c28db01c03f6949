use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{SlotLayout, TowerError};
use crate::text::ParseError;

pub type Dense = Vec<Vec<BigRational>>;

/// An exact rational matrix at a stage, stored sparsely.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TowerMatrix {
    layout: SlotLayout,
    entries: BTreeMap<(usize, usize), BigRational>,
}

impl TowerMatrix {
    pub fn zeros(layout: SlotLayout) -> Self {
        TowerMatrix {
            layout,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(layout: SlotLayout) -> Self {
        let entries = (0..layout.dim())
            .map(|i| ((i, i), BigRational::one()))
            .collect();
        TowerMatrix { layout, entries }
    }

    /// The matrix unit `e_{ij}`.
    pub fn unit(layout: SlotLayout, i: usize, j: usize) -> Self {
        assert!(i < layout.dim() && j < layout.dim(), "unit index out of range");
        let mut entries = BTreeMap::new();
        entries.insert((i, j), BigRational::one());
        TowerMatrix { layout, entries }
    }

    pub fn scalar(layout: SlotLayout, c: BigRational) -> Self {
        if c.is_zero() {
            return Self::zeros(layout);
        }
        let entries = (0..layout.dim()).map(|i| ((i, i), c.clone())).collect();
        TowerMatrix { layout, entries }
    }

    pub fn from_dense(layout: SlotLayout, rows: Dense) -> Result<Self, TowerError> {
        let d = layout.dim();
        if rows.len() != d || rows.iter().any(|r| r.len() != d) {
            return Err(TowerError::DimensionMismatch {
                expected: d,
                found: rows.len(),
            });
        }
        let entries = rows
            .into_iter()
            .enumerate()
            .flat_map(|(i, row)| {
                row.into_iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(move |(j, v)| ((i, j), v))
            })
            .collect();
        Ok(TowerMatrix { layout, entries })
    }

    pub fn from_integers(layout: SlotLayout, rows: &[Vec<i64>]) -> Result<Self, TowerError> {
        let dense = rows
            .iter()
            .map(|r| r.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect())
            .collect();
        Self::from_dense(layout, dense)
    }

    pub(crate) fn from_entries(
        layout: SlotLayout,
        entries: BTreeMap<(usize, usize), BigRational>,
    ) -> Self {
        let mut m = TowerMatrix { layout, entries };
        m.entries.retain(|_, v| !v.is_zero());
        m
    }

    pub fn to_dense(&self) -> Dense {
        let d = self.dim();
        let mut out = vec![vec![BigRational::zero(); d]; d];
        for ((i, j), v) in &self.entries {
            out[*i][*j] = v.clone();
        }
        out
    }

    pub fn layout(&self) -> &SlotLayout {
        &self.layout
    }

    pub fn dim(&self) -> usize {
        self.layout.dim()
    }

    pub fn get(&self, i: usize, j: usize) -> BigRational {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &BigRational)> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    fn same_stage(&self, other: &TowerMatrix) -> Result<(), TowerError> {
        if self.layout != other.layout {
            return Err(TowerError::StageMismatch {
                left: self.layout.n(),
                right: other.layout.n(),
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &TowerMatrix) -> Result<TowerMatrix, TowerError> {
        self.same_stage(other)?;
        let mut rows: BTreeMap<usize, Vec<(usize, &BigRational)>> = BTreeMap::new();
        for ((k, j), v) in &other.entries {
            rows.entry(*k).or_default().push((*j, v));
        }
        let mut acc: BTreeMap<(usize, usize), BigRational> = BTreeMap::new();
        for ((i, k), a) in &self.entries {
            if let Some(row) = rows.get(k) {
                for (j, b) in row {
                    *acc.entry((*i, *j)).or_insert_with(BigRational::zero) += a * *b;
                }
            }
        }
        Ok(Self::from_entries(self.layout.clone(), acc))
    }

    pub fn add(&self, other: &TowerMatrix) -> Result<TowerMatrix, TowerError> {
        self.same_stage(other)?;
        let mut acc = self.entries.clone();
        for (k, v) in &other.entries {
            *acc.entry(*k).or_insert_with(BigRational::zero) += v;
        }
        Ok(Self::from_entries(self.layout.clone(), acc))
    }

    pub fn sub(&self, other: &TowerMatrix) -> Result<TowerMatrix, TowerError> {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> TowerMatrix {
        Self::from_entries(
            self.layout.clone(),
            self.entries.iter().map(|(k, v)| (*k, v * c)).collect(),
        )
    }

    pub fn trace(&self) -> BigRational {
        self.entries
            .iter()
            .filter(|((i, j), _)| i == j)
            .fold(BigRational::zero(), |acc, (_, v)| acc + v)
    }

    pub fn commutes_with(&self, other: &TowerMatrix) -> Result<bool, TowerError> {
        Ok(self.mul(other)? == other.mul(self)?)
    }

    /// Parses `a b; c d` (rows separated by `;`, entries by whitespace or
    /// commas, each entry `p` or `p/q`). The stage is the row count.
    pub fn parse(text: &str) -> Result<TowerMatrix, TowerError> {
        let rows: Vec<&str> = text.split(';').collect();
        let mut dense = Vec::with_capacity(rows.len());
        let mut offset = 0usize;
        for row in &rows {
            let mut parsed = Vec::new();
            let mut pos = offset;
            for token in row.split(|c: char| c.is_whitespace() || c == ',') {
                if !token.is_empty() {
                    let start = pos + row[pos - offset..].find(token).unwrap_or(0);
                    let v: BigRational = token.parse().map_err(|_| {
                        ParseError::new(start, "a rational entry p or p/q", token.chars().next())
                    })?;
                    parsed.push(v);
                    pos = start + token.len();
                }
            }
            dense.push(parsed);
            offset += row.len() + 1;
        }
        if dense.iter().all(Vec::is_empty) {
            return Err(ParseError::new(0, "a matrix row", text.chars().next()).into());
        }
        let layout = SlotLayout::new(dense.len() as u64)?;
        let d = dense.len();
        if let Some(bad) = dense.iter().find(|r| r.len() != d) {
            return Err(TowerError::DimensionMismatch {
                expected: d,
                found: bad.len(),
            });
        }
        Self::from_dense(layout, dense)
    }

    /// Rows as `p/q` strings, the structured document form.
    pub fn to_rows(&self) -> Vec<Vec<String>> {
        self.to_dense()
            .into_iter()
            .map(|r| r.into_iter().map(|v| v.to_string()).collect())
            .collect()
    }

    pub fn from_rows(rows: &[Vec<String>]) -> Result<TowerMatrix, TowerError> {
        let layout = SlotLayout::new(rows.len() as u64)?;
        let mut dense = Vec::with_capacity(rows.len());
        for row in rows {
            let mut parsed = Vec::with_capacity(row.len());
            for v in row {
                parsed.push(v.parse::<BigRational>().map_err(|_| {
                    ParseError::new(0, "a rational entry p or p/q", v.chars().next())
                })?);
            }
            dense.push(parsed);
        }
        Self::from_dense(layout, dense)
    }
}

impl fmt::Display for TowerMatrix {
    /// Dense row-major form accepted by [`TowerMatrix::parse`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.dim();
        for i in 0..d {
            if i > 0 {
                f.write_str("; ")?;
            }
            for j in 0..d {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for TowerMatrix {
    type Err = TowerError;

    fn from_str(s: &str) -> Result<Self, TowerError> {
        TowerMatrix::parse(s)
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
pub(crate) fn rref(a: &mut Dense) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for v in a[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let factor = a[i][c].clone();
                for j in 0..cols {
                    let delta = &factor * &a[r][j];
                    a[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Inverse of a square dense matrix, or `None` if singular.
pub(crate) fn invert(a: &Dense) -> Option<Dense> {
    let d = a.len();
    let mut aug: Dense = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..d).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < d || pivots[d - 1] != d - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[d..].to_vec()).collect())
}

pub(crate) fn dense_mul_vec(a: &Dense, v: &[BigRational]) -> Vec<BigRational> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
        })
        .collect()
}
