//! Sparse square matrices over a group ring, addressed by basis tuples.
//!
//! Matrices act on column vectors: column `c` holds the image of basis
//! vector `c`. Products take entries of the left factor on the left,
//! `(AB)[r][c] = Σ_k A[r][k] · B[k][c]`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::basis::BasisTuple;
use crate::error::{Error, Result};
use crate::group::{same_group, Group};
use crate::ring::{RingElement, RingMorphism};

/// Sparse vector keyed by basis tuples.
pub type SparseVector = BTreeMap<BasisTuple, RingElement>;

type Row = BTreeMap<BasisTuple, RingElement>;

#[derive(Clone)]
pub struct RepMatrix {
    ring: Group,
    keys: Arc<[BasisTuple]>,
    rows: BTreeMap<BasisTuple, Row>,
}

impl RepMatrix {
    pub fn zero(ring: &Group, keys: Vec<BasisTuple>) -> Result<Self> {
        let mut sorted = keys;
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateKey(w[0].to_string()));
        }
        Ok(Self { ring: ring.clone(), keys: sorted.into(), rows: BTreeMap::new() })
    }

    pub fn identity(ring: &Group, keys: Vec<BasisTuple>) -> Result<Self> {
        let mut m = Self::zero(ring, keys)?;
        m.fill_identity();
        Ok(m)
    }

    fn fill_identity(&mut self) {
        let one = RingElement::one(&self.ring);
        for k in self.keys.iter() {
            self.rows.entry(k.clone()).or_default().insert(k.clone(), one.clone());
        }
    }

    fn like(&self, ring: &Group) -> Self {
        Self { ring: ring.clone(), keys: self.keys.clone(), rows: BTreeMap::new() }
    }

    pub fn from_entries<I>(ring: &Group, keys: Vec<BasisTuple>, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (BasisTuple, BasisTuple, RingElement)>,
    {
        let mut m = Self::zero(ring, keys)?;
        for (r, c, e) in entries {
            m.set(r, c, e)?;
        }
        Ok(m)
    }

    /// Overwrites one entry (a zero value removes it).
    pub fn set(&mut self, row: BasisTuple, col: BasisTuple, value: RingElement) -> Result<()> {
        if !same_group(&self.ring, value.ring()) {
            return Err(Error::RingMismatch);
        }
        for k in [&row, &col] {
            if self.keys.binary_search(k).is_err() {
                return Err(Error::UnknownKey(k.to_string()));
            }
        }
        if value.is_zero() {
            if let Some(r) = self.rows.get_mut(&row) {
                r.remove(&col);
                if r.is_empty() {
                    self.rows.remove(&row);
                }
            }
        } else {
            self.rows.entry(row).or_default().insert(col, value);
        }
        Ok(())
    }

    pub fn ring(&self) -> &Group {
        &self.ring
    }

    pub fn keys(&self) -> &[BasisTuple] {
        &self.keys
    }

    pub fn dim(&self) -> usize {
        self.keys.len()
    }

    pub fn get(&self, row: &BasisTuple, col: &BasisTuple) -> Option<&RingElement> {
        self.rows.get(row)?.get(col)
    }

    /// Entry at `(row, col)`, zero when absent.
    pub fn entry(&self, row: &BasisTuple, col: &BasisTuple) -> RingElement {
        self.get(row, col).cloned().unwrap_or_else(|| RingElement::zero(&self.ring))
    }

    /// Stored entries in `(row, col)` order.
    pub fn entries(&self) -> impl Iterator<Item = (&BasisTuple, &BasisTuple, &RingElement)> {
        self.rows.iter().flat_map(|(r, row)| row.iter().map(move |(c, e)| (r, c, e)))
    }

    pub fn nonzero_count(&self) -> usize {
        self.rows.values().map(BTreeMap::len).sum()
    }

    pub fn is_identity(&self) -> bool {
        self.nonzero_count() == self.keys.len()
            && self.keys.iter().all(|k| self.get(k, k).is_some_and(RingElement::is_one))
    }

    fn check_compatible(&self, other: &RepMatrix) -> Result<()> {
        if !same_group(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        if !(Arc::ptr_eq(&self.keys, &other.keys) || self.keys == other.keys) {
            return Err(Error::KeyMismatch);
        }
        Ok(())
    }

    pub fn mul(&self, other: &RepMatrix) -> Result<RepMatrix> {
        self.check_compatible(other)?;
        let mut out = self.like(&self.ring);
        for (r, row) in &self.rows {
            let mut acc: Row = BTreeMap::new();
            for (k, a) in row {
                let Some(other_row) = other.rows.get(k) else { continue };
                for (c, b) in other_row {
                    acc.entry(c.clone())
                        .or_insert_with(|| RingElement::zero(&self.ring))
                        .add_product_unchecked(a, b);
                }
            }
            acc.retain(|_, e| !e.is_zero());
            if !acc.is_empty() {
                out.rows.insert(r.clone(), acc);
            }
        }
        Ok(out)
    }

    /// Entrywise image under a ring morphism.
    pub fn map(&self, phi: &RingMorphism) -> Result<RepMatrix> {
        if !same_group(&self.ring, phi.source()) {
            return Err(Error::RingMismatch);
        }
        let mut out = self.like(phi.target());
        for (r, row) in &self.rows {
            let mapped: Row = row
                .iter()
                .map(|(c, e)| (c.clone(), phi.map_unchecked(e)))
                .filter(|(_, e)| !e.is_zero())
                .collect();
            if !mapped.is_empty() {
                out.rows.insert(r.clone(), mapped);
            }
        }
        Ok(out)
    }

    /// `(A v)[r] = Σ_c A[r][c] · v[c]`.
    pub fn apply(&self, v: &SparseVector) -> Result<SparseVector> {
        for (k, x) in v {
            if self.keys.binary_search(k).is_err() {
                return Err(Error::UnknownKey(k.to_string()));
            }
            if !same_group(&self.ring, x.ring()) {
                return Err(Error::RingMismatch);
            }
        }
        let mut out = SparseVector::new();
        for (r, row) in &self.rows {
            let mut acc = RingElement::zero(&self.ring);
            for (c, a) in row {
                if let Some(x) = v.get(c) {
                    acc.add_product_unchecked(a, x);
                }
            }
            if !acc.is_zero() {
                out.insert(r.clone(), acc);
            }
        }
        Ok(out)
    }

    /// A key order under which the matrix is upper triangular: each key's
    /// column has nonzero entries only in rows placed at or before it.
    pub fn triangular_order(&self) -> Result<Vec<BasisTuple>> {
        let mut column_support: BTreeMap<&BasisTuple, Vec<&BasisTuple>> = BTreeMap::new();
        for (r, c, _) in self.entries() {
            if r != c {
                column_support.entry(c).or_default().push(r);
            }
        }
        let mut placed: BTreeSet<&BasisTuple> = BTreeSet::new();
        let mut order = Vec::with_capacity(self.keys.len());
        while order.len() < self.keys.len() {
            let next = self.keys.iter().find(|k| {
                !placed.contains(k)
                    && column_support.get(k).is_none_or(|rows| rows.iter().all(|r| placed.contains(r)))
            });
            let Some(k) = next else { return Err(Error::NotTriangularizable) };
            placed.insert(k);
            order.push(k.clone());
        }
        Ok(order)
    }

    /// Two-sided inverse of a matrix that is triangular in some key order with
    /// diagonal entries of the form `±g`.
    ///
    /// Solves `A X = I` by back substitution along [`triangular_order`](Self::triangular_order),
    /// left-multiplying by the inverse of each diagonal unit.
    pub fn invert_unit_triangularizable(&self) -> Result<RepMatrix> {
        let order = self.triangular_order()?;
        let position: BTreeMap<&BasisTuple, usize> = order.iter().enumerate().map(|(i, k)| (k, i)).collect();
        let pivots_inv = order
            .iter()
            .map(|k| {
                self.get(k, k)
                    .and_then(RingElement::signed_monomial_inverse)
                    .ok_or_else(|| Error::NonUnitDiagonal(k.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        // Off-diagonal part of each row, keyed by position in `order`.
        let upper: Vec<Vec<(usize, &RingElement)>> = order
            .iter()
            .map(|k| {
                self.rows.get(k).map_or_else(Vec::new, |row| {
                    row.iter().filter(|(c, _)| *c != k).map(|(c, e)| (position[c], e)).collect()
                })
            })
            .collect();

        let mut out = self.like(&self.ring);
        let n = order.len();
        for j in 0..n {
            // column j of the inverse; rows below j vanish
            let mut column: Vec<Option<RingElement>> = alloc::vec![None; n];
            for i in (0..=j).rev() {
                let mut rhs = if i == j { RingElement::one(&self.ring) } else { RingElement::zero(&self.ring) };
                for &(m, a) in &upper[i] {
                    if let Some(x) = column.get(m).and_then(Option::as_ref) {
                        rhs.add_product_unchecked(&-a, x);
                    }
                }
                if !rhs.is_zero() {
                    let mut x = RingElement::zero(&self.ring);
                    x.add_product_unchecked(&pivots_inv[i], &rhs);
                    column[i] = Some(x);
                }
            }
            for (i, x) in column.into_iter().enumerate() {
                if let Some(x) = x {
                    out.rows.entry(order[i].clone()).or_default().insert(order[j].clone(), x);
                }
            }
        }
        Ok(out)
    }
}

impl PartialEq for RepMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.check_compatible(other).is_ok() && self.rows == other.rows
    }
}

impl Eq for RepMatrix {}

impl fmt::Debug for RepMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RepMatrix[{}x{}]", self.dim(), self.dim())?;
        for (r, c, e) in self.entries() {
            writeln!(f, "  {r} {c}: {e:?}")?;
        }
        Ok(())
    }
}
