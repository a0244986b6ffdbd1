//! Basis tuples `(k_1, ..., k_(n-1))` of non-negative integers with a fixed sum.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// A basis key: an `(n-1)`-tuple of non-negative integers.
///
/// Tuples are ordered lexicographically with larger entries first, so
/// `(2,0,0) < (1,1,0) < (1,0,1) < (0,2,0) < (0,1,1) < (0,0,2)`. This is the
/// order [`enumerate_basis`] produces and the order used for serialization.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BasisTuple(SmallVec<[u32; 8]>);

impl BasisTuple {
    pub fn new(entries: &[u32]) -> Self {
        Self(SmallVec::from_slice(entries))
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Entry at 1-based position `p`.
    pub fn at(&self, p: usize) -> u32 {
        self.0[p - 1]
    }

    pub(crate) fn with_entries_at(&self, positions: &[usize], values: &[u32]) -> Self {
        let mut out = self.clone();
        for (&p, &x) in positions.iter().zip(values) {
            out.0[p - 1] = x;
        }
        out
    }
}

impl Ord for BasisTuple {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.cmp(&self.0)
    }
}

impl PartialOrd for BasisTuple {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for BasisTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for BasisTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// All `(n-1)`-tuples of non-negative integers summing to `k`, in basis order.
pub fn enumerate_basis(n: usize, k: u32) -> Result<Vec<BasisTuple>> {
    if n < 2 {
        return Err(Error::InvalidStrandCount { n, min: 2 });
    }
    let mut out = Vec::new();
    let mut current = SmallVec::<[u32; 8]>::new();
    fill(n - 1, k, &mut current, &mut out);
    Ok(out)
}

fn fill(slots: usize, remaining: u32, current: &mut SmallVec<[u32; 8]>, out: &mut Vec<BasisTuple>) {
    if slots == 0 {
        if remaining == 0 {
            out.push(BasisTuple(current.clone()));
        }
        return;
    }
    if slots == 1 {
        current.push(remaining);
        out.push(BasisTuple(current.clone()));
        current.pop();
        return;
    }
    for x in (0..=remaining).rev() {
        current.push(x);
        fill(slots - 1, remaining - x, current, out);
        current.pop();
    }
}

/// `C(n + k - 2, k)`, the number of basis tuples.
pub fn basis_rank(n: usize, k: u32) -> u128 {
    binomial((n + k as usize).saturating_sub(2) as u128, k as u128)
}

pub fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, j| acc * (n - j) / (j + 1))
}
