//! A compatible sequence in the tower `Z[Z/2^(r-1) ⋊ Z]` that does not come
//! from a single element over the 2-adic completion.
//!
//! For `G = Z ⋊ Z` (the twist acting by inversion), `Γ_r(G) = 2^(r-1) Z`, so
//! the nilpotent quotients are `Z/2^(r-1) ⋊ Z` and each reduction map drops
//! the top binary digit of the lattice exponent. The sequence
//!
//! ```text
//! f_r = Σ_{i=0}^{r-2} (x^(2^i) - 1)
//! ```
//!
//! is compatible (the term `x^(2^(r-2)) - 1` vanishes one layer down) but has
//! support of size `r`. A ring map induced by a group map never increases the
//! support of an element, so a single finite-support preimage would bound
//! every `|supp f_r|`. The same sequence also needs exponents with `r - 1`
//! binary digits at layer `r`, which is the equivalent unbounded-length
//! formulation.

use alloc::sync::Arc;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::group::{Group, GroupDescriptor, GroupMorphism};
use crate::lattice::IntMatrix;
use crate::ring::{RingElement, RingMorphism};

fn modulus(r: usize) -> Result<i64> {
    if r < 2 {
        return Err(Error::InvalidLayer { r, min: 2 });
    }
    1i64.checked_shl((r - 1) as u32).filter(|m| *m > 0).ok_or(Error::InvalidLayer { r, min: 2 })
}

/// `Z/2^(r-1) ⋊ Z`, the twist acting by `x ↦ x^-1`.
pub fn cx_group(r: usize) -> Result<Group> {
    let neg = IntMatrix::from_rows(&[[-1]])?;
    Ok(Arc::new(GroupDescriptor::new(1, &[[modulus(r)?]], neg, 0)?))
}

/// Reduction `Z[Z/2^(r-1) ⋊ Z] → Z[Z/2^(r-2) ⋊ Z]`.
pub fn cx_truncation(r: usize) -> Result<RingMorphism> {
    if r < 3 {
        return Err(Error::InvalidLayer { r, min: 3 });
    }
    Ok(RingMorphism::new(GroupMorphism::new(cx_group(r)?, cx_group(r - 1)?, IntMatrix::identity(1), 1)?))
}

/// `f_r = Σ_{i=0}^{r-2} (x^(2^i) - 1)`.
pub fn cx_f(r: usize) -> Result<RingElement> {
    let g = cx_group(r)?;
    let mut terms = Vec::with_capacity(2 * (r - 1));
    for i in 0..=(r - 2) {
        terms.push((g.normalize(&[1i64 << i], 0)?, BigInt::from(1)));
        terms.push((g.identity(), BigInt::from(-1)));
    }
    Ok(RingElement::from_terms(&g, terms))
}

/// The elements `f_2, …, f_(r_max)`; entry `k` lives at layer `k + 2`.
#[derive(Clone, Debug)]
pub struct CxSequence {
    elements: Vec<RingElement>,
}

impl CxSequence {
    pub fn standard(r_max: usize) -> Result<Self> {
        if r_max < 2 {
            return Err(Error::InvalidLayer { r: r_max, min: 2 });
        }
        Ok(Self { elements: (2..=r_max).map(cx_f).collect::<Result<_>>()? })
    }

    pub fn r_max(&self) -> usize {
        self.elements.len() + 1
    }

    pub fn element(&self, r: usize) -> &RingElement {
        &self.elements[r - 2]
    }

    /// Replaces the layer-`r` element, which must live over `cx_group(r)`.
    pub fn replace(&mut self, r: usize, value: RingElement) -> Result<()> {
        if !crate::group::same_group(value.ring(), &cx_group(r)?) {
            return Err(Error::RingMismatch);
        }
        self.elements[r - 2] = value;
        Ok(())
    }

    pub fn certificate(&self) -> Result<CxReport> {
        let mut layers = Vec::with_capacity(self.elements.len());
        for r in 2..=self.r_max() {
            let compatible = if r == 2 {
                true
            } else {
                cx_truncation(r)?.map(self.element(r))? == *self.element(r - 1)
            };
            layers.push(CxLayer { r, support_size: self.element(r).support_size(), compatible });
        }
        Ok(CxReport { layers })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CxLayer {
    pub r: usize,
    pub support_size: usize,
    /// Truncation of this layer equals the layer below (vacuous at `r = 2`).
    pub compatible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CxReport {
    pub layers: Vec<CxLayer>,
}

impl CxReport {
    pub fn all_compatible(&self) -> bool {
        self.layers.iter().all(|l| l.compatible)
    }

    pub fn strictly_increasing(&self) -> bool {
        self.layers.windows(2).all(|w| w[0].support_size < w[1].support_size)
    }

    /// Compatible at every layer with strictly growing support.
    pub fn certifies_non_liftable(&self) -> bool {
        self.all_compatible() && self.strictly_increasing()
    }

    pub fn support_sizes(&self) -> Vec<usize> {
        self.layers.iter().map(|l| l.support_size).collect()
    }
}

pub fn cx_certificate(r_max: usize) -> Result<CxReport> {
    if r_max < 3 {
        return Err(Error::InvalidLayer { r: r_max, min: 3 });
    }
    CxSequence::standard(r_max)?.certificate()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Lattice;

    fn x(r: usize, e: i64) -> RingElement {
        let g = cx_group(r).unwrap();
        RingElement::monomial(&g, 1, g.normalize(&[e], 0).unwrap())
    }

    #[test]
    fn groups() {
        assert_eq!(*cx_group(2).unwrap().lattice(), Lattice::from_generators(1, &[[2]]).unwrap());
        assert_eq!(*cx_group(4).unwrap().lattice(), Lattice::from_generators(1, &[[8]]).unwrap());
        let zz = crate::group::inversion_group();
        for r in 2..=10 {
            assert_eq!(zz.lcs_layer(r), *cx_group(r).unwrap().lattice());
        }
        assert_eq!(cx_group(1).unwrap_err(), Error::InvalidLayer { r: 1, min: 2 });
    }

    #[test]
    fn truncation_examples() {
        let q = cx_truncation(4).unwrap();
        assert_eq!(q.map(&x(4, 6)).unwrap(), x(3, 2));
        let one = RingElement::one(q.source());
        assert!(q.map(&one).unwrap().is_one());
        let e = &x(4, 4) - &one;
        assert!(q.map(&e).unwrap().is_zero());
        assert_eq!(cx_truncation(2).unwrap_err(), Error::InvalidLayer { r: 2, min: 3 });
    }

    #[test]
    fn sequence_values() {
        let one2 = RingElement::one(&cx_group(2).unwrap());
        assert_eq!(cx_f(2).unwrap(), &x(2, 1) - &one2);
        assert_eq!(cx_f(2).unwrap().support_size(), 2);
        let one3 = RingElement::one(&cx_group(3).unwrap());
        let expected = &(&x(3, 1) + &x(3, 2)) - &(&one3 + &one3);
        assert_eq!(cx_f(3).unwrap(), expected);
        assert_eq!(cx_truncation(3).unwrap().map(&cx_f(3).unwrap()).unwrap(), cx_f(2).unwrap());
        let f5 = cx_f(5).unwrap();
        assert_eq!(f5.coefficient(&f5.ring().identity()), BigInt::from(-4));
    }

    #[test]
    fn certificates() {
        let r5 = cx_certificate(5).unwrap();
        assert_eq!(r5.support_sizes(), [2, 3, 4, 5]);
        assert!(r5.certifies_non_liftable());
        assert_eq!(cx_certificate(3).unwrap().support_sizes(), [2, 3]);
    }

    #[test]
    fn dropping_a_term_breaks_compatibility() {
        let mut seq = CxSequence::standard(5).unwrap();
        let f4 = seq.element(4).clone();
        let g = f4.ring().clone();
        let dropped = &f4 - &RingElement::monomial(&g, 1, g.normalize(&[2], 0).unwrap());
        seq.replace(4, dropped).unwrap();
        let report = seq.certificate().unwrap();
        assert!(!report.layers[2].compatible, "{report:?}");
        assert!(!report.certifies_non_liftable());
    }
}
