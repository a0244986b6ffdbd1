//! Sparse integral group rings `Z[G]`.

use alloc::collections::btree_map::{self, BTreeMap, Entry};
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::group::{same_group, Group, GroupElement, GroupMorphism};

/// A finite formal sum `Σ a_g g` with nonzero integer coefficients.
///
/// Terms are kept in the canonical order of [`GroupElement`] (twist exponent
/// first, then lattice part), so iteration and equality are canonical.
#[derive(Clone)]
pub struct RingElement {
    ring: Group,
    terms: BTreeMap<GroupElement, BigInt>,
}

impl RingElement {
    pub fn zero(ring: &Group) -> Self {
        Self { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ring: &Group) -> Self {
        Self::monomial(ring, 1, ring.identity())
    }

    /// `coeff · g`; a zero coefficient gives the zero element.
    pub fn monomial(ring: &Group, coeff: impl Into<BigInt>, g: GroupElement) -> Self {
        let mut out = Self::zero(ring);
        out.add_term(g, coeff.into());
        out
    }

    /// Sums the given terms, merging repeated group elements.
    pub fn from_terms<I>(ring: &Group, terms: I) -> Self
    where
        I: IntoIterator<Item = (GroupElement, BigInt)>,
    {
        let mut out = Self::zero(ring);
        for (g, a) in terms {
            out.add_term(g, a);
        }
        out
    }

    pub fn ring(&self) -> &Group {
        &self.ring
    }

    pub fn terms(&self) -> btree_map::Iter<'_, GroupElement, BigInt> {
        self.terms.iter()
    }

    pub fn coefficient(&self, g: &GroupElement) -> BigInt {
        self.terms.get(g).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().all(|(g, a)| a.is_one() && self.ring.is_identity(g))
    }

    pub fn support_size(&self) -> usize {
        self.terms.len()
    }

    /// Sum of coefficients.
    pub fn augment(&self) -> BigInt {
        self.terms.values().sum()
    }

    fn add_term(&mut self, g: GroupElement, a: BigInt) {
        if a.is_zero() {
            return;
        }
        match self.terms.entry(g) {
            Entry::Vacant(e) => {
                e.insert(a);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += a;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_ring(&self, other: &RingElement) -> Result<()> {
        if same_group(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &RingElement) -> Result<RingElement> {
        self.check_ring(other)?;
        let mut out = self.clone();
        out.add_assign_unchecked(other);
        Ok(out)
    }

    pub fn checked_sub(&self, other: &RingElement) -> Result<RingElement> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (g, a) in &other.terms {
            out.add_term(g.clone(), -a);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &RingElement) -> Result<RingElement> {
        self.check_ring(other)?;
        let mut out = RingElement::zero(&self.ring);
        out.add_product_unchecked(self, other);
        Ok(out)
    }

    pub(crate) fn add_assign_unchecked(&mut self, other: &RingElement) {
        for (g, a) in &other.terms {
            self.add_term(g.clone(), a.clone());
        }
    }

    /// `self += a · b`, with `a` on the left.
    pub(crate) fn add_product_unchecked(&mut self, a: &RingElement, b: &RingElement) {
        for (g, x) in &a.terms {
            for (h, y) in &b.terms {
                self.add_term(self.ring.mul(g, h), x * y);
            }
        }
    }

    /// Fused `self += a · b`.
    pub fn add_product(&mut self, a: &RingElement, b: &RingElement) -> Result<()> {
        self.check_ring(a)?;
        self.check_ring(b)?;
        self.add_product_unchecked(a, b);
        Ok(())
    }

    /// Decomposes a unit of the form `±g`.
    pub fn as_signed_monomial(&self) -> Option<(bool, &GroupElement)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (g, a) = self.terms.iter().next()?;
        if a.is_one() {
            Some((false, g))
        } else if a.abs().is_one() {
            Some((true, g))
        } else {
            None
        }
    }

    /// Inverse of a unit `±g`, namely `±g^-1`.
    pub fn signed_monomial_inverse(&self) -> Option<RingElement> {
        let (negative, g) = self.as_signed_monomial()?;
        let coeff = if negative { -1 } else { 1 };
        Some(RingElement::monomial(&self.ring, coeff, self.ring.inv(g)))
    }
}

impl PartialEq for RingElement {
    fn eq(&self, other: &Self) -> bool {
        same_group(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for RingElement {}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (g, a)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{a}·{g:?}")?;
        }
        Ok(())
    }
}

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        RingElement {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(g, a)| (g.clone(), -a)).collect(),
        }
    }
}

// Operator forms panic on mismatched rings; use the `checked_*` methods when
// the operands are not known to share a ring.
impl Add for &RingElement {
    type Output = RingElement;
    fn add(self, rhs: &RingElement) -> RingElement {
        self.checked_add(rhs).expect("ring mismatch in addition")
    }
}

impl Sub for &RingElement {
    type Output = RingElement;
    fn sub(self, rhs: &RingElement) -> RingElement {
        self.checked_sub(rhs).expect("ring mismatch in subtraction")
    }
}

impl Mul for &RingElement {
    type Output = RingElement;
    fn mul(self, rhs: &RingElement) -> RingElement {
        self.checked_mul(rhs).expect("ring mismatch in multiplication")
    }
}

/// Ring homomorphism `Z[G] → Z[H]` induced by a group morphism; coefficients map identically.
#[derive(Clone, Debug)]
pub struct RingMorphism {
    group_morphism: GroupMorphism,
}

impl RingMorphism {
    pub fn new(group_morphism: GroupMorphism) -> Self {
        Self { group_morphism }
    }

    pub fn group_morphism(&self) -> &GroupMorphism {
        &self.group_morphism
    }

    pub fn source(&self) -> &Group {
        self.group_morphism.source()
    }

    pub fn target(&self) -> &Group {
        self.group_morphism.target()
    }

    /// Image of `a`; colliding monomials are merged additively.
    pub fn map(&self, a: &RingElement) -> Result<RingElement> {
        if !same_group(&a.ring, self.source()) {
            return Err(Error::RingMismatch);
        }
        Ok(self.map_unchecked(a))
    }

    pub(crate) fn map_unchecked(&self, a: &RingElement) -> RingElement {
        RingElement::from_terms(
            self.target(),
            a.terms.iter().map(|(g, x)| (self.group_morphism.apply(g), x.clone())),
        )
    }

    pub fn then(&self, next: &RingMorphism) -> Result<RingMorphism> {
        Ok(RingMorphism::new(self.group_morphism.then(&next.group_morphism)?))
    }
}
