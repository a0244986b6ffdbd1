//! Normal-form arithmetic in groups of the form `(Z^m / L) ⋊_M Z_d`.
//!
//! An element is stored as a pair `(v, c)` read as `x^v · t^c`: a coset
//! representative `v` of `Z^m / L` followed by a power of the twist generator
//! `t`, which acts on the lattice part by `t x^v t^-1 = x^(M v)`. Products
//! follow `(v1, c1)(v2, c2) = (v1 + M^c1 v2, c1 + c2)`.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::lattice::{IntMatrix, Lattice};

/// Lattice coordinates of a group element; rank 2 covers every shipped group.
pub type Coords = SmallVec<[i64; 2]>;

/// Shared handle to a group descriptor.
pub type Group = Arc<GroupDescriptor>;

/// Largest order of the action matrix for which all powers are cached.
const MAX_CACHED_ORDER: u64 = 24;

/// The group `(Z^m / L) ⋊_M Z_d`; `d = 0` means the twist generator has infinite order.
#[derive(Clone)]
pub struct GroupDescriptor {
    rank: usize,
    lattice: Lattice,
    action: IntMatrix,
    action_inv: IntMatrix,
    modulus: u64,
    periodic_powers: Option<Vec<IntMatrix>>,
}

impl PartialEq for GroupDescriptor {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank
            && self.modulus == other.modulus
            && self.lattice == other.lattice
            && self.action == other.action
    }
}

impl Eq for GroupDescriptor {}

impl fmt::Debug for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupDescriptor")
            .field("rank", &self.rank)
            .field("lattice", &self.lattice)
            .field("action", &self.action)
            .field("modulus", &self.modulus)
            .finish()
    }
}

/// Whether two handles describe the same group.
pub fn same_group(a: &Group, b: &Group) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl GroupDescriptor {
    /// Validates and builds a descriptor.
    ///
    /// Fails when `action` is not unimodular, does not map the lattice onto
    /// itself, or (for `modulus > 0`) its `modulus`-th power is not the
    /// identity on `Z^m / L`.
    pub fn new<G: AsRef<[i64]>>(
        rank: usize,
        lattice_generators: &[G],
        action: IntMatrix,
        modulus: u64,
    ) -> Result<Self> {
        if action.rows() != rank || action.cols() != rank {
            return Err(Error::DimensionMismatch { expected: rank, found: action.rows().max(action.cols()) });
        }
        let lattice = Lattice::from_generators(rank, lattice_generators)?;
        let action_inv = action.unimodular_inverse()?;
        for b in lattice.basis() {
            if !lattice.contains(&action.mul_vec(b)) || !lattice.contains(&action_inv.mul_vec(b)) {
                return Err(Error::LatticeNotInvariant);
            }
        }
        if modulus > 0 {
            let diff = action.pow(modulus).sub(&IntMatrix::identity(rank));
            if (0..rank).any(|j| !lattice.contains(&diff.column(j))) {
                return Err(Error::TwistOrderMismatch { modulus });
            }
        }
        let periodic_powers = integer_order(&action).map(|k| {
            let mut powers = Vec::with_capacity(k as usize);
            let mut p = IntMatrix::identity(rank);
            for _ in 0..k {
                let next = p.mul(&action);
                powers.push(p);
                p = next;
            }
            powers
        });
        Ok(Self { rank, lattice, action, action_inv, modulus, periodic_powers })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn action(&self) -> &IntMatrix {
        &self.action
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement { v: smallvec::smallvec![0; self.rank], c: 0 }
    }

    /// The lattice generator `x^(e_index)`.
    pub fn lattice_generator(&self, index: usize) -> GroupElement {
        let mut v: Coords = smallvec::smallvec![0; self.rank];
        v[index] = 1;
        self.normalize_coords(v, 0)
    }

    /// The twist generator `t`.
    pub fn twist(&self) -> GroupElement {
        self.normalize_coords(smallvec::smallvec![0; self.rank], 1)
    }

    /// Canonical representative of `x^v t^c`.
    pub fn normalize(&self, v: &[i64], c: i64) -> Result<GroupElement> {
        if v.len() != self.rank {
            return Err(Error::DimensionMismatch { expected: self.rank, found: v.len() });
        }
        Ok(self.normalize_coords(Coords::from_slice(v), c))
    }

    pub(crate) fn normalize_coords(&self, mut v: Coords, c: i64) -> GroupElement {
        self.lattice.reduce(&mut v);
        let c = if self.modulus > 0 { c.rem_euclid(self.modulus as i64) } else { c };
        GroupElement { v, c }
    }

    /// `M^c v` (not reduced).
    fn act(&self, c: i64, v: &[i64]) -> Coords {
        if c == 0 {
            return Coords::from_slice(v);
        }
        let apply = |m: &IntMatrix| -> Coords { m.mul_vec(v).into_iter().collect() };
        match &self.periodic_powers {
            Some(powers) => apply(&powers[c.rem_euclid(powers.len() as i64) as usize]),
            None if c > 0 => apply(&self.action.pow(c as u64)),
            None => apply(&self.action_inv.pow(c.unsigned_abs())),
        }
    }

    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let mut v = self.act(a.c, &b.v);
        for (x, y) in v.iter_mut().zip(&a.v) {
            *x += y;
        }
        self.normalize_coords(v, a.c + b.c)
    }

    pub fn inv(&self, a: &GroupElement) -> GroupElement {
        let mut v = self.act(-a.c, &a.v);
        v.iter_mut().for_each(|x| *x = -*x);
        self.normalize_coords(v, -a.c)
    }

    pub fn is_identity(&self, a: &GroupElement) -> bool {
        a.c == 0 && a.v.iter().all(|&x| x == 0)
    }

    /// Preimage in `Z^m` of the lattice part of the `j`-th lower central series
    /// term (so the result always contains `L`).
    ///
    /// `Γ_1` is the whole group, whose lattice part is all of `Z^m`. For
    /// `j >= 2`, `Γ_j = (M - I)^(j-1) Z^m + L`: commutators with `t` produce
    /// `(M^c - I) v`, which factors through `M - I` on `M`-invariant lattices.
    pub fn lcs_layer(&self, j: usize) -> Lattice {
        assert!(j >= 1, "lower central series is indexed from 1");
        let step = self.action.sub(&IntMatrix::identity(self.rank));
        let mut layer = Lattice::full(self.rank);
        for _ in 1..j {
            layer = layer.image(&step).sum(&self.lattice);
        }
        layer
    }

    /// Whether a lattice returned by [`lcs_layer`](Self::lcs_layer) is the trivial subgroup.
    pub fn is_trivial_layer(&self, layer: &Lattice) -> bool {
        self.lattice.contains_lattice(layer)
    }

    /// Least `c` with `Γ_(c+1)` trivial, searched up to `max_depth`.
    pub fn nilpotency_class(&self, max_depth: usize) -> NilpotencyClass {
        assert!(max_depth >= 1);
        if self.is_trivial_layer(&Lattice::full(self.rank)) && self.modulus == 1 {
            return NilpotencyClass::Exactly(0);
        }
        let step = self.action.sub(&IntMatrix::identity(self.rank));
        let mut layer = Lattice::full(self.rank);
        for class in 1..=max_depth {
            layer = layer.image(&step).sum(&self.lattice);
            if self.is_trivial_layer(&layer) {
                return NilpotencyClass::Exactly(class);
            }
        }
        NilpotencyClass::ExceedsDepth
    }
}

/// Order of `m` as an integer matrix, if it is at most [`MAX_CACHED_ORDER`].
fn integer_order(m: &IntMatrix) -> Option<u64> {
    let id = IntMatrix::identity(m.rows());
    let mut p = m.clone();
    for k in 1..=MAX_CACHED_ORDER {
        if p == id {
            return Some(k);
        }
        p = p.mul(m);
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NilpotencyClass {
    Exactly(usize),
    ExceedsDepth,
}

/// A group element in normal form `x^v · t^c`.
///
/// Ordered by `c` first, then `v` lexicographically.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    v: Coords,
    c: i64,
}

impl GroupElement {
    pub fn v(&self) -> &[i64] {
        &self.v
    }

    pub fn c(&self) -> i64 {
        self.c
    }
}

impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.c.cmp(&other.c).then_with(|| self.v.cmp(&other.v))
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}; {})", self.v.as_slice(), self.c)
    }
}

/// A homomorphism `x^v t^c ↦ x^(A v) t^(k c)`.
#[derive(Clone, Debug)]
pub struct GroupMorphism {
    source: Group,
    target: Group,
    lattice_map: IntMatrix,
    twist_map: i64,
}

impl GroupMorphism {
    pub fn new(source: Group, target: Group, lattice_map: IntMatrix, twist_map: i64) -> Result<Self> {
        if lattice_map.rows() != target.rank || lattice_map.cols() != source.rank {
            return Err(Error::InvalidMorphism("lattice map has the wrong shape"));
        }
        if !target.lattice.contains_lattice(&source.lattice.image(&lattice_map)) {
            return Err(Error::InvalidMorphism("source lattice is not sent into the target lattice"));
        }
        let twisted = match (twist_map, &target.periodic_powers) {
            (k, Some(powers)) => powers[k.rem_euclid(powers.len() as i64) as usize].clone(),
            (k, None) if k >= 0 => target.action.pow(k as u64),
            (k, None) => target.action_inv.pow(k.unsigned_abs()),
        };
        let defect = lattice_map.mul(&source.action).sub(&twisted.mul(&lattice_map));
        if (0..source.rank).any(|j| !target.lattice.contains(&defect.column(j))) {
            return Err(Error::InvalidMorphism("lattice map is not equivariant for the twist actions"));
        }
        if source.modulus > 0 {
            let image = twist_map * source.modulus as i64;
            let killed = match target.modulus {
                0 => image == 0,
                d => image.rem_euclid(d as i64) == 0,
            };
            if !killed {
                return Err(Error::InvalidMorphism("twist order is not respected"));
            }
        }
        Ok(Self { source, target, lattice_map, twist_map })
    }

    pub fn source(&self) -> &Group {
        &self.source
    }

    pub fn target(&self) -> &Group {
        &self.target
    }

    pub fn lattice_map(&self) -> &IntMatrix {
        &self.lattice_map
    }

    pub fn twist_map(&self) -> i64 {
        self.twist_map
    }

    pub fn apply(&self, a: &GroupElement) -> GroupElement {
        debug_assert_eq!(a.v.len(), self.source.rank);
        let v: Coords = self.lattice_map.mul_vec(&a.v).into_iter().collect();
        self.target.normalize_coords(v, self.twist_map * a.c)
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &GroupMorphism) -> Result<GroupMorphism> {
        if !same_group(&self.target, &next.source) {
            return Err(Error::InvalidMorphism("morphisms are not composable"));
        }
        GroupMorphism::new(
            self.source.clone(),
            next.target.clone(),
            next.lattice_map.mul(&self.lattice_map),
            next.twist_map * self.twist_map,
        )
    }
}

/// The coordinate swap `(a, b) ↦ (b, a)` on `Z^2`.
pub fn swap_action() -> IntMatrix {
    IntMatrix::from_rows(&[[0, 1], [1, 0]]).expect("2x2")
}

/// `Z^2 ⋊ Z` with `t` swapping the coordinates: the group of units
/// `q1 = x^(1,0)`, `q2 = x^(0,1)`, `t` with `q1 q2 = q2 q1`, `q1 t = t q2`, `q2 t = t q1`.
pub fn theta_group() -> Group {
    Arc::new(GroupDescriptor::new::<[i64; 2]>(2, &[], swap_action(), 0).expect("valid descriptor"))
}

/// `Z ⋊ Z` with `t` acting by inversion.
pub fn inversion_group() -> Group {
    let neg = IntMatrix::from_rows(&[[-1]]).expect("1x1");
    Arc::new(GroupDescriptor::new::<[i64; 1]>(1, &[], neg, 0).expect("valid descriptor"))
}

/// `Z × Z`, the abelianisation of [`theta_group`] (lattice coordinate `a + b`).
pub fn abelian_plane_group() -> Group {
    Arc::new(GroupDescriptor::new::<[i64; 1]>(1, &[], IntMatrix::identity(1), 0).expect("valid descriptor"))
}

/// Abelianisation `Z^2 ⋊ Z → Z × Z`, `(a, b; c) ↦ (a + b; c)`.
pub fn theta_abelianization() -> GroupMorphism {
    GroupMorphism::new(
        theta_group(),
        abelian_plane_group(),
        IntMatrix::from_rows(&[[1, 1]]).expect("1x2"),
        1,
    )
    .expect("valid morphism")
}
