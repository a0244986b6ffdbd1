//! The three-variable Lawrence–Krammer–Bigelow representation of `B_n` over
//! `Θ = Z[Z^2 ⋊ Z]`.
//!
//! The module is free on the basis tuples `(k_1, ..., k_(n-1))` summing to 2.
//! The generator `σ_i` only touches the window of positions `i-1, i, i+1`
//! (read as a pattern `xyz`, with `y` at position `i`); everything else is
//! copied unchanged. Depending on how much of the total weight 2 sits in the
//! window, a column is transformed by
//!
//! * the 6×6 block on patterns `200 110 101 020 011 002` (weight 2 inside),
//! * a 3×3 block on `100 010 001` (weight 1 inside, the other unit outside),
//! * the identity (weight 0 inside).
//!
//! At `i = 1` the `x` coordinate does not exist and at `i = n-1` the `z`
//! coordinate does not exist; the blocks restrict to patterns with that
//! coordinate zero, which are closed under the block action.
//!
//! The two 3×3 blocks are `[[1,0,0],[1,-u,u],[0,0,1]]` (rows and columns in
//! the order `100 010 001`) with `u = q2` when the extra unit lies left of
//! the window and `u = q1` when it lies right of it. With this labelling all
//! braid relations hold exactly over `Θ`; the opposite labelling breaks far
//! commutation (see the `unit_block_labels_matter` test).
//!
//! Words are evaluated left to right: `σ_a σ_b ↦ ρ(σ_a) ρ(σ_b)`, with
//! matrices acting on column vectors.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::basis::{enumerate_basis, BasisTuple};
use crate::error::{Error, Result};
use crate::group::{theta_group, Group};
use crate::matrix::RepMatrix;
use crate::ring::{RingElement, RingMorphism};

/// One entry of a local block: `value` at (row pattern, column pattern).
#[derive(Clone, Debug)]
pub struct BlockEntry {
    pub row: [u32; 3],
    pub col: [u32; 3],
    pub value: RingElement,
}

/// The local blocks from which every `σ_i` matrix is assembled.
#[derive(Clone, Debug)]
pub struct LocalBlocks {
    /// Patterns of weight 2.
    pub pair: Vec<BlockEntry>,
    /// Patterns of weight 1 with the other unit left of the window.
    pub left_unit: Vec<BlockEntry>,
    /// Patterns of weight 1 with the other unit right of the window.
    pub right_unit: Vec<BlockEntry>,
}

fn pattern(s: &str) -> [u32; 3] {
    let mut out = [0; 3];
    for (o, b) in out.iter_mut().zip(s.bytes()) {
        *o = u32::from(b - b'0');
    }
    out
}

impl LocalBlocks {
    /// The blocks over `ring`, which must be `Z[Z^2 ⋊ Z]` with the swap action.
    pub fn standard(ring: &Group) -> Self {
        let m = |c: i64, v: [i64; 2], t: i64| {
            RingElement::monomial(ring, c, ring.normalize(&v, t).expect("rank 2"))
        };
        let one = RingElement::one(ring);
        let q1 = m(1, [1, 0], 0);
        let q2 = m(1, [0, 1], 0);
        let q1q2 = m(1, [1, 1], 0);
        let t = m(1, [0, 0], 1);
        let t_q2 = &t * &q2;
        let t_q1q2 = &t * &q1q2;

        let entry = |r: &str, c: &str, value: RingElement| BlockEntry { row: pattern(r), col: pattern(c), value };
        let pair = alloc::vec![
            entry("101", "101", one.clone()),
            entry("110", "101", q2.clone()),
            entry("020", "101", &q2 - &t_q2),
            entry("011", "101", one.clone()),
            entry("200", "200", one.clone()),
            entry("110", "200", one.clone()),
            entry("020", "200", one.clone()),
            entry("110", "110", -&q2),
            entry("020", "110", &t_q2 - &q2),
            entry("020", "020", -&t_q1q2),
            entry("020", "011", &t_q1q2 - &q1q2),
            entry("011", "011", -&q1),
            entry("020", "002", q1q2.clone()),
            entry("011", "002", q1.clone()),
            entry("002", "002", one.clone()),
        ];
        let unit_block = |u: &RingElement| {
            alloc::vec![
                entry("100", "100", one.clone()),
                entry("010", "100", one.clone()),
                entry("010", "010", -u),
                entry("010", "001", u.clone()),
                entry("001", "001", one.clone()),
            ]
        };
        Self { pair, left_unit: unit_block(&q2), right_unit: unit_block(&q1) }
    }

    /// Same blocks with the two 3×3 blocks exchanged.
    pub fn with_unit_blocks_exchanged(mut self) -> Self {
        core::mem::swap(&mut self.left_unit, &mut self.right_unit);
        self
    }

    /// Assembles `ρ(σ_i)` on `n` strands.
    pub fn sigma(&self, n: usize, i: usize) -> Result<RepMatrix> {
        check_generator(n, i)?;
        let ring = self.pair.first().map(|e| e.value.ring().clone()).expect("nonempty block");
        let keys = enumerate_basis(n, 2)?;
        // window positions for x, y, z; None where the coordinate does not exist
        let window = [(i >= 2).then(|| i - 1), Some(i), (i < n - 1).then(|| i + 1)];
        let present: Vec<usize> = window.iter().flatten().copied().collect();
        let mut m = RepMatrix::zero(&ring, keys.clone())?;
        for col in &keys {
            let triple = window.map(|p| p.map_or(0, |p| col.at(p)));
            let block = match triple.iter().sum::<u32>() {
                0 => {
                    m.set(col.clone(), col.clone(), RingElement::one(&ring))?;
                    continue;
                }
                2 => &self.pair,
                _ => {
                    let other = (1..n).find(|p| !present.contains(p) && col.at(*p) == 1).expect("weight 2 tuple");
                    if other < i { &self.left_unit } else { &self.right_unit }
                }
            };
            for e in block.iter().filter(|e| e.col == triple) {
                debug_assert!(window.iter().zip(&e.row).all(|(p, &x)| p.is_some() || x == 0));
                let values: Vec<u32> = window.iter().zip(&e.row).filter(|(p, _)| p.is_some()).map(|(_, &x)| x).collect();
                m.set(col.with_entries_at(&present, &values), col.clone(), e.value.clone())?;
            }
        }
        Ok(m)
    }
}

fn check_generator(n: usize, i: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::InvalidStrandCount { n, min: 3 });
    }
    if i == 0 || i >= n {
        return Err(Error::GeneratorOutOfRange { index: i as i64, n });
    }
    Ok(())
}

/// A braid word on `n` strands: letters `±i` stand for `σ_i^(±1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    n: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(n: usize, letters: Vec<i32>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidStrandCount { n, min: 2 });
        }
        if let Some(&bad) = letters.iter().find(|&&l| l == 0 || l.unsigned_abs() as usize >= n) {
            return Err(Error::GeneratorOutOfRange { index: i64::from(bad), n });
        }
        Ok(Self { n, letters })
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::new(n, Vec::new())
    }

    /// Parses whitespace-separated signed generator indices, e.g. `"1 -2 3"`.
    /// The Unicode minus sign is accepted as well.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let normalized = text.replace('\u{2212}', "-");
        let letters = normalized
            .split_whitespace()
            .map(|tok| tok.parse::<i32>().map_err(|_| Error::ParseWord(tok.to_string())))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, letters)
    }

    pub fn strands(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Self { n: self.n, letters: self.letters.iter().rev().map(|l| -l).collect() }
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// The matrices `ρ(σ_i)` and `ρ(σ_i)^-1` for `1 <= i < n` over a common ring.
#[derive(Clone, Debug)]
pub struct Generators {
    n: usize,
    sigma: Vec<RepMatrix>,
    sigma_inv: Vec<RepMatrix>,
}

impl Generators {
    /// Generators over `Θ`.
    pub fn theta(n: usize) -> Result<Self> {
        Self::from_blocks(&LocalBlocks::standard(&theta_group()), n)
    }

    pub fn from_blocks(blocks: &LocalBlocks, n: usize) -> Result<Self> {
        check_generator(n, 1)?;
        let sigma = (1..n).map(|i| blocks.sigma(n, i)).collect::<Result<Vec<_>>>()?;
        Self::from_matrices(n, sigma)
    }

    /// Wraps given generator matrices, computing their inverses.
    pub fn from_matrices(n: usize, sigma: Vec<RepMatrix>) -> Result<Self> {
        if sigma.len() + 1 != n {
            return Err(Error::InvalidStrandCount { n, min: sigma.len() + 1 });
        }
        let sigma_inv = sigma.iter().map(RepMatrix::invert_unit_triangularizable).collect::<Result<Vec<_>>>()?;
        Ok(Self { n, sigma, sigma_inv })
    }

    /// Pushes every generator (and inverse) along a ring morphism.
    pub fn map(&self, phi: &RingMorphism) -> Result<Self> {
        Ok(Self {
            n: self.n,
            sigma: self.sigma.iter().map(|m| m.map(phi)).collect::<Result<_>>()?,
            sigma_inv: self.sigma_inv.iter().map(|m| m.map(phi)).collect::<Result<_>>()?,
        })
    }

    pub fn strands(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> &Group {
        self.sigma[0].ring()
    }

    pub fn sigma(&self, i: usize) -> &RepMatrix {
        &self.sigma[i - 1]
    }

    pub fn sigma_inverse(&self, i: usize) -> &RepMatrix {
        &self.sigma_inv[i - 1]
    }

    pub fn letter(&self, l: i32) -> &RepMatrix {
        let i = l.unsigned_abs() as usize;
        if l > 0 { self.sigma(i) } else { self.sigma_inverse(i) }
    }

    pub fn identity(&self) -> RepMatrix {
        RepMatrix::identity(self.ring(), self.sigma[0].keys().to_vec()).expect("distinct keys")
    }

    /// Left-to-right product of the letters' matrices; the empty word gives the identity.
    pub fn word_matrix(&self, word: &BraidWord) -> Result<RepMatrix> {
        if word.strands() != self.n {
            return Err(Error::InvalidStrandCount { n: word.strands(), min: self.n });
        }
        let mut letters = word.letters().iter();
        let Some(&first) = letters.next() else { return Ok(self.identity()) };
        let mut acc = self.letter(first).clone();
        for &l in letters {
            acc = acc.mul(self.letter(l))?;
        }
        Ok(acc)
    }

    /// Checks `σ_i σ_(i+1) σ_i = σ_(i+1) σ_i σ_(i+1)` and `σ_i σ_j = σ_j σ_i` for `|i - j| >= 2`.
    pub fn verify_relations(&self) -> Result<RelationReport> {
        let mut checks = Vec::new();
        for i in 1..self.n - 1 {
            let (a, b) = (self.sigma(i), self.sigma(i + 1));
            let lhs = a.mul(b)?.mul(a)?;
            let rhs = b.mul(a)?.mul(b)?;
            checks.push(RelationCheck { relation: Relation::Braid { i }, holds: lhs == rhs });
        }
        for i in 1..self.n {
            for j in i + 2..self.n {
                let (a, b) = (self.sigma(i), self.sigma(j));
                checks.push(RelationCheck { relation: Relation::Commute { i, j }, holds: a.mul(b)? == b.mul(a)? });
            }
        }
        Ok(RelationReport { n: self.n, checks })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    /// `σ_i σ_(i+1) σ_i = σ_(i+1) σ_i σ_(i+1)`
    Braid { i: usize },
    /// `σ_i σ_j = σ_j σ_i`
    Commute { i: usize, j: usize },
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Relation::Braid { i } => write!(f, "s{i} s{j} s{i} = s{j} s{i} s{j}", j = i + 1),
            Relation::Commute { i, j } => write!(f, "s{i} s{j} = s{j} s{i}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationCheck {
    pub relation: Relation,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationReport {
    pub n: usize,
    pub checks: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationCheck> {
        self.checks.iter().filter(|c| !c.holds)
    }
}

/// `ρ(σ_i)` over `Θ` on `n >= 3` strands.
pub fn sigma_matrix(n: usize, i: usize) -> Result<RepMatrix> {
    check_generator(n, i)?;
    LocalBlocks::standard(&theta_group()).sigma(n, i)
}

/// `ρ(w)` over `Θ`.
pub fn word_matrix(n: usize, word: &BraidWord) -> Result<RepMatrix> {
    Generators::theta(n)?.word_matrix(word)
}

pub fn verify_braid_relations(n: usize) -> Result<RelationReport> {
    Generators::theta(n)?.verify_relations()
}

/// Equality of two braids, decided by comparing their matrices over `Θ`
/// (the representation is faithful).
pub fn braid_equal(n: usize, a: &BraidWord, b: &BraidWord) -> Result<bool> {
    let generators = Generators::theta(n)?;
    Ok(generators.word_matrix(a)? == generators.word_matrix(b)?)
}

/// `ρ(σ_i)` with `q1 = q2`: the classical representation over the second
/// tower layer `Z[(Z^2 / Δ) ⋊ Z] ≅ Z[q^±1, t^±1]`.
pub fn classical_matrix(n: usize, i: usize) -> Result<RepMatrix> {
    let phi = crate::tower::TowerLayer::new(2)?.ring_from_theta();
    sigma_matrix(n, i)?.map(&phi)
}

/// Short label such as `"020"` for a pattern-sized tuple; used in diagnostics.
pub fn compact_label(t: &BasisTuple) -> String {
    t.entries().iter().map(|x| x.to_string()).collect()
}
