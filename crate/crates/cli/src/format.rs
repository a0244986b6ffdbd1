//! JSON forms of ring elements, group descriptors and matrices.
//!
//! Serialization is canonical: terms in group-element order, keys and entries
//! in basis order, so `to_json(parse(to_json(x))) == to_json(x)` byte for byte.

use std::sync::Arc;

use lkb_core::basis::BasisTuple;
use lkb_core::group::{Group, GroupDescriptor};
use lkb_core::lattice::IntMatrix;
use lkb_core::matrix::RepMatrix;
use lkb_core::ring::RingElement;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Core(#[from] lkb_core::error::Error),
    #[error("bad coefficient {0:?}")]
    Coefficient(String),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub v: Vec<i64>,
    pub c: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingElementJson {
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingJson {
    pub m: usize,
    /// Hermite basis of the lattice.
    pub lattice: Vec<Vec<i64>>,
    pub action: Vec<Vec<i64>>,
    pub modulus: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    pub ring: RingJson,
    pub keys: Vec<Vec<u32>>,
    pub entries: Vec<(Vec<u32>, Vec<u32>, RingElementJson)>,
}

pub fn ring_element_json(a: &RingElement) -> RingElementJson {
    RingElementJson {
        terms: a
            .terms()
            .map(|(g, x)| TermJson { coeff: x.to_string(), v: g.v().to_vec(), c: g.c() })
            .collect(),
    }
}

pub fn ring_json(g: &GroupDescriptor) -> RingJson {
    RingJson {
        m: g.rank(),
        lattice: g.lattice().basis().to_vec(),
        action: g.action().to_rows(),
        modulus: g.modulus(),
    }
}

pub fn matrix_json(n: usize, m: &RepMatrix) -> MatrixJson {
    MatrixJson {
        n,
        ring: ring_json(m.ring()),
        keys: m.keys().iter().map(|k| k.entries().to_vec()).collect(),
        entries: m
            .entries()
            .map(|(r, c, e)| (r.entries().to_vec(), c.entries().to_vec(), ring_element_json(e)))
            .collect(),
    }
}

pub fn ring_from_json(j: &RingJson) -> Result<Group, FormatError> {
    let action = IntMatrix::from_rows(&j.action)?;
    Ok(Arc::new(GroupDescriptor::new(j.m, &j.lattice, action, j.modulus)?))
}

pub fn ring_element_from_json(ring: &Group, j: &RingElementJson) -> Result<RingElement, FormatError> {
    let mut terms = Vec::with_capacity(j.terms.len());
    for t in &j.terms {
        let coeff: BigInt = t.coeff.parse().map_err(|_| FormatError::Coefficient(t.coeff.clone()))?;
        terms.push((ring.normalize(&t.v, t.c)?, coeff));
    }
    Ok(RingElement::from_terms(ring, terms))
}

/// Rebuilds `(n, matrix)`; coordinates are renormalized, so non-canonical
/// input is accepted and comes back canonical.
pub fn matrix_from_json(j: &MatrixJson) -> Result<(usize, RepMatrix), FormatError> {
    let ring = ring_from_json(&j.ring)?;
    let keys: Vec<BasisTuple> = j.keys.iter().map(|k| BasisTuple::new(k)).collect();
    if let Some(k) = keys.iter().find(|k| k.len() + 1 != j.n) {
        return Err(FormatError::Invalid(format!("key {k} does not have n-1 = {} entries", j.n.saturating_sub(1))));
    }
    let mut m = RepMatrix::zero(&ring, keys)?;
    for (r, c, e) in &j.entries {
        let (r, c) = (BasisTuple::new(r), BasisTuple::new(c));
        if m.get(&r, &c).is_some() {
            return Err(FormatError::Invalid(format!("entry ({r}, {c}) given twice")));
        }
        m.set(r, c, ring_element_from_json(&ring, e)?)?;
    }
    Ok((j.n, m))
}

pub fn matrix_to_string(n: usize, m: &RepMatrix) -> String {
    serde_json::to_string(&matrix_json(n, m)).expect("serializable")
}

pub fn matrix_from_str(s: &str) -> Result<(usize, RepMatrix), FormatError> {
    matrix_from_json(&serde_json::from_str(s)?)
}

pub fn ring_element_to_string(a: &RingElement) -> String {
    serde_json::to_string(&ring_element_json(a)).expect("serializable")
}

pub fn ring_element_from_str(ring: &Group, s: &str) -> Result<RingElement, FormatError> {
    ring_element_from_json(ring, &serde_json::from_str(s)?)
}
