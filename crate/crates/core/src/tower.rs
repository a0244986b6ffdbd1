//! The nilpotent tower `… ↠ Q_r ↠ Q_(r-1) ↠ … ↠ Q_2` with
//! `Q_r = (Z^2 / 2^(r-2) Δ) ⋊ Z`, `Δ = (1, -1)`, and the layer representations
//! obtained by reducing the `Θ` matrices along `Z^2 ⋊ Z ↠ Q_r`.
//!
//! Every layer is presented on the same coordinates as `Θ`, so the reduction
//! maps are identities on `(v, c)` followed by normalization. At `r = 2` the
//! canonical representative of `(a, b; c)` is `(0, a + b; c)`, which realizes
//! `Q_2 ≅ Z^2` through `(a, b; c) ↦ (a + b, c)`.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::braid::{BraidWord, Generators};
use crate::error::{Error, Result};
use crate::group::{swap_action, theta_group, Group, GroupDescriptor, GroupMorphism, NilpotencyClass};
use crate::lattice::IntMatrix;
use crate::matrix::RepMatrix;
use crate::ring::RingMorphism;

/// `(Z^2 / scale·Δ) ⋊ Z` with `t` swapping the coordinates.
pub fn quotient_group(scale: i64) -> Result<Group> {
    Ok(Arc::new(GroupDescriptor::new(2, &[[scale, -scale]], swap_action(), 0)?))
}

fn canonical_scale(r: usize) -> Result<i64> {
    if r < 2 {
        return Err(Error::InvalidLayer { r, min: 2 });
    }
    1i64.checked_shl((r - 2) as u32)
        .filter(|s| *s > 0)
        .ok_or(Error::InvalidLayer { r, min: 2 })
}

#[derive(Clone, Debug)]
pub struct TowerLayer {
    r: usize,
    group: Group,
    from_theta: GroupMorphism,
    step_down: Option<GroupMorphism>,
}

impl TowerLayer {
    /// Layer `r >= 2`.
    pub fn new(r: usize) -> Result<Self> {
        Self::with_lattice_scale(r, canonical_scale(r)?)
    }

    /// Layer `r` built on `scale·Δ` instead of `2^(r-2)·Δ`. `step_down` is
    /// absent when `r = 2` or when the lattice does not sit inside the
    /// canonical layer `r - 1` lattice.
    pub fn with_lattice_scale(r: usize, scale: i64) -> Result<Self> {
        if r < 2 {
            return Err(Error::InvalidLayer { r, min: 2 });
        }
        let group = quotient_group(scale)?;
        let from_theta = GroupMorphism::new(theta_group(), group.clone(), IntMatrix::identity(2), 1)?;
        let step_down = if r > 2 {
            GroupMorphism::new(group.clone(), quotient_group(canonical_scale(r - 1)?)?, IntMatrix::identity(2), 1).ok()
        } else {
            None
        };
        Ok(Self { r, group, from_theta, step_down })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn from_theta(&self) -> &GroupMorphism {
        &self.from_theta
    }

    pub fn step_down(&self) -> Option<&GroupMorphism> {
        self.step_down.as_ref()
    }

    pub fn ring_from_theta(&self) -> RingMorphism {
        RingMorphism::new(self.from_theta.clone())
    }

    /// Generator matrices over `Z[Q_r]`.
    pub fn generators(&self, n: usize) -> Result<Generators> {
        Generators::theta(n)?.map(&self.ring_from_theta())
    }
}

/// `ρ(σ_i)` reduced to `Z[Q_r]`.
pub fn layer_sigma(n: usize, i: usize, r: usize) -> Result<RepMatrix> {
    let layer = TowerLayer::new(r)?;
    crate::braid::sigma_matrix(n, i)?.map(&layer.ring_from_theta())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerReport {
    pub r: usize,
    pub class: NilpotencyClass,
    pub class_ok: bool,
    pub relations_ok: bool,
    /// Whether reducing layer `r` onto the previous checked layer reproduces
    /// it on every generator; `None` for the bottom layer.
    pub reduction_ok: Option<bool>,
    pub note: Option<String>,
}

impl LayerReport {
    pub fn passed(&self) -> bool {
        self.class_ok && self.relations_ok && self.reduction_ok != Some(false)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerReport {
    pub n: usize,
    pub layers: Vec<LayerReport>,
}

impl TowerReport {
    pub fn passed(&self) -> bool {
        self.layers.iter().all(LayerReport::passed)
    }
}

/// Checks layers `2..=r_max` on `n` strands: nilpotency class `r - 1`, braid
/// relations, and strict commutation of every reduction square on the generators.
pub fn check_tower(n: usize, r_max: usize) -> Result<TowerReport> {
    if r_max < 2 {
        return Err(Error::InvalidLayer { r: r_max, min: 2 });
    }
    let layers = (2..=r_max).map(TowerLayer::new).collect::<Result<Vec<_>>>()?;
    check_layers(n, &layers)
}

/// Same checks on an explicit list of consecutive layers (bottom first).
pub fn check_layers(n: usize, layers: &[TowerLayer]) -> Result<TowerReport> {
    let theta = Generators::theta(n)?;
    let mut reports = Vec::with_capacity(layers.len());
    let mut previous: Option<(&TowerLayer, Generators)> = None;
    for layer in layers {
        let generators = theta.map(&layer.ring_from_theta())?;
        let class = layer.group.nilpotency_class(layer.r + 8);
        let class_ok = class == NilpotencyClass::Exactly(layer.r - 1);
        let relations_ok = generators.verify_relations()?.all_hold();
        let mut note = None;
        let reduction_ok = match &previous {
            None => None,
            Some((below, below_generators)) => {
                match GroupMorphism::new(layer.group.clone(), below.group.clone(), IntMatrix::identity(2), 1) {
                    Ok(step) => {
                        let step = RingMorphism::new(step);
                        let mut ok = true;
                        for i in 1..n {
                            ok &= generators.sigma(i).map(&step)? == *below_generators.sigma(i);
                        }
                        Some(ok)
                    }
                    Err(e) => {
                        note = Some(format!("no reduction map to layer {}: {e}", below.r));
                        Some(false)
                    }
                }
            }
        };
        reports.push(LayerReport { r: layer.r, class, class_ok, relations_ok, reduction_ok, note });
        previous = Some((layer, generators));
    }
    Ok(TowerReport { n, layers: reports })
}

/// Whether reducing `ρ(w)` from layer `r` to layer `r - 1` agrees with
/// evaluating `w` directly in layer `r - 1`.
pub fn reduction_square_commutes(n: usize, r: usize, word: &BraidWord) -> Result<bool> {
    if r < 3 {
        return Err(Error::InvalidLayer { r, min: 3 });
    }
    let upper = TowerLayer::new(r)?;
    let lower = TowerLayer::new(r - 1)?;
    let step = RingMorphism::new(upper.step_down().cloned().expect("canonical layers reduce"));
    let reduced = upper.generators(n)?.word_matrix(word)?.map(&step)?;
    Ok(reduced == lower.generators(n)?.word_matrix(word)?)
}
