//! Subcommands. Each returns its complete stdout and whether the run counts
//! as a pass; invalid arguments surface as [`UsageError`].

use std::fmt;
use std::str::FromStr;

use lkb_core::basis::{basis_rank, enumerate_basis};
use lkb_core::braid::{BraidWord, Generators, RelationReport};
use lkb_core::counterexample::cx_certificate;
use lkb_core::group::{inversion_group, theta_group, Group, NilpotencyClass};
use lkb_core::matrix::RepMatrix;
use lkb_core::tower::{check_tower, TowerLayer};
use serde::Serialize;

use crate::format::{matrix_to_string, ring_json, RingJson};
use crate::latex;

/// Largest basis `rank` will list.
pub const MAX_LISTED_RANK: u128 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

impl From<lkb_core::error::Error> for UsageError {
    fn from(e: lkb_core::error::Error) -> Self {
        UsageError(e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub passed: bool,
}

impl Outcome {
    fn pass(stdout: String) -> Self {
        Self { stdout, passed: true }
    }

    fn json<T: Serialize>(value: &T, passed: bool) -> Self {
        let mut stdout = serde_json::to_string(value).expect("serializable");
        stdout.push('\n');
        Self { stdout, passed }
    }
}

/// Coefficient ring for generator matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingChoice {
    Theta,
    Layer(usize),
}

impl FromStr for RingChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "theta" => Ok(Self::Theta),
            _ => s
                .strip_prefix("layer:")
                .and_then(|r| r.parse().ok())
                .filter(|r| *r >= 2)
                .map(Self::Layer)
                .ok_or_else(|| format!("expected `theta` or `layer:R` with R >= 2, got `{s}`")),
        }
    }
}

impl RingChoice {
    pub fn generators(self, n: usize) -> Result<Generators, UsageError> {
        Ok(match self {
            Self::Theta => Generators::theta(n)?,
            Self::Layer(r) => TowerLayer::new(r)?.generators(n)?,
        })
    }
}

/// Group presets for `lcs`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    ZxZ,
    Theta,
    Layer(usize),
}

impl FromStr for Preset {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "zxz" => Ok(Self::ZxZ),
            "theta" => Ok(Self::Theta),
            _ => match s.parse::<RingChoice>() {
                Ok(RingChoice::Layer(r)) => Ok(Self::Layer(r)),
                _ => Err(format!("expected `zxz`, `theta` or `layer:R` with R >= 2, got `{s}`")),
            },
        }
    }
}

impl Preset {
    fn group(self) -> Result<Group, UsageError> {
        Ok(match self {
            Self::ZxZ => inversion_group(),
            Self::Theta => theta_group(),
            Self::Layer(r) => TowerLayer::new(r)?.group().clone(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Json,
    Latex,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Self::Json),
            "latex" => Ok(Self::Latex),
            _ => Err(format!("expected `json` or `latex`, got `{s}`")),
        }
    }
}

fn render(n: usize, m: &RepMatrix, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => matrix_to_string(n, m) + "\n",
        OutputFormat::Latex => latex::matrix(m),
    }
}

pub fn gen(n: usize, i: usize, ring: RingChoice, format: OutputFormat) -> Result<Outcome, UsageError> {
    if n >= 3 && (i == 0 || i >= n) {
        return Err(UsageError(format!("--i must lie in 1..={} for --n {n}", n - 1)));
    }
    let g = ring.generators(n)?;
    Ok(Outcome::pass(render(n, g.sigma(i), format)))
}

pub fn word(n: usize, word: &str, ring: RingChoice, format: OutputFormat) -> Result<Outcome, UsageError> {
    let w = BraidWord::parse(n, word)?;
    let g = ring.generators(n)?;
    Ok(Outcome::pass(render(n, &g.word_matrix(&w)?, format)))
}

#[derive(Serialize)]
struct RelationJson {
    relation: String,
    holds: bool,
}

#[derive(Serialize)]
struct VerifyJson {
    n: usize,
    ring: RingJson,
    relations: Vec<RelationJson>,
    inverses: bool,
    passed: bool,
}

fn inverses_hold(g: &Generators) -> Result<bool, UsageError> {
    for i in 1..g.strands() {
        let (a, b) = (g.sigma(i), g.sigma_inverse(i));
        if !(a.mul(b)?.is_identity() && b.mul(a)?.is_identity()) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn verify(n: usize, ring: RingChoice) -> Result<Outcome, UsageError> {
    let g = ring.generators(n)?;
    let report: RelationReport = g.verify_relations()?;
    let inverses = inverses_hold(&g)?;
    let passed = report.all_hold() && inverses;
    let relations = report
        .checks
        .iter()
        .map(|c| RelationJson { relation: c.relation.to_string(), holds: c.holds })
        .collect();
    Ok(Outcome::json(&VerifyJson { n, ring: ring_json(g.ring()), relations, inverses, passed }, passed))
}

#[derive(Serialize)]
struct EqJson {
    equal: bool,
}

/// Passes only when the braids are equal.
pub fn eq(n: usize, w1: &str, w2: &str) -> Result<Outcome, UsageError> {
    let (a, b) = (BraidWord::parse(n, w1)?, BraidWord::parse(n, w2)?);
    let g = Generators::theta(n)?;
    let equal = g.word_matrix(&a)? == g.word_matrix(&b)?;
    Ok(Outcome::json(&EqJson { equal }, equal))
}

#[derive(Serialize)]
struct RankJson {
    rank: u64,
    basis: Vec<Vec<u32>>,
}

pub fn rank(n: usize, k: u32) -> Result<Outcome, UsageError> {
    let rank = basis_rank(n, k);
    if rank > MAX_LISTED_RANK {
        return Err(UsageError(format!("rank {rank} exceeds the listing limit {MAX_LISTED_RANK}")));
    }
    let basis = enumerate_basis(n, k)?.iter().map(|t| t.entries().to_vec()).collect();
    Ok(Outcome::json(&RankJson { rank: rank as u64, basis }, true))
}

#[derive(Serialize)]
struct LayerJson {
    r: usize,
    class: Option<usize>,
    class_ok: bool,
    relations_ok: bool,
    reduction_ok: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
}

#[derive(Serialize)]
struct TowerJson {
    n: usize,
    rmax: usize,
    layers: Vec<LayerJson>,
    passed: bool,
}

fn class_value(c: NilpotencyClass) -> Option<usize> {
    match c {
        NilpotencyClass::Exactly(c) => Some(c),
        NilpotencyClass::ExceedsDepth => None,
    }
}

pub fn tower_check(n: usize, rmax: usize) -> Result<Outcome, UsageError> {
    if rmax < 3 {
        return Err(UsageError("--rmax must be at least 3".into()));
    }
    let report = check_tower(n, rmax)?;
    let passed = report.passed();
    let layers = report
        .layers
        .into_iter()
        .map(|l| LayerJson {
            r: l.r,
            class: class_value(l.class),
            class_ok: l.class_ok,
            relations_ok: l.relations_ok,
            reduction_ok: l.reduction_ok,
            note: l.note,
        })
        .collect();
    Ok(Outcome::json(&TowerJson { n, rmax, layers, passed }, passed))
}

#[derive(Serialize)]
struct LcsLayerJson {
    j: usize,
    basis: Vec<Vec<i64>>,
    trivial: bool,
}

#[derive(Serialize)]
struct LcsJson {
    ring: RingJson,
    layers: Vec<LcsLayerJson>,
    class: Option<usize>,
}

/// `Γ_1 … Γ_depth` as sublattices of `Z^m` (each containing the defining
/// lattice), and the nilpotency class if it is at most `depth`.
pub fn lcs(preset: Preset, depth: usize) -> Result<Outcome, UsageError> {
    if depth == 0 {
        return Err(UsageError("--depth must be at least 1".into()));
    }
    let g = preset.group()?;
    let layers = (1..=depth)
        .map(|j| {
            let layer = g.lcs_layer(j);
            LcsLayerJson { j, trivial: g.is_trivial_layer(&layer), basis: layer.basis().to_vec() }
        })
        .collect();
    let class = class_value(g.nilpotency_class(depth));
    Ok(Outcome::json(&LcsJson { ring: ring_json(&g), layers, class }, true))
}

#[derive(Serialize)]
struct CxLayerJson {
    r: usize,
    support_size: usize,
    compatible: bool,
}

#[derive(Serialize)]
struct CxJson {
    layers: Vec<CxLayerJson>,
    conclusion: String,
}

pub fn counterexample(rmax: usize) -> Result<Outcome, UsageError> {
    if rmax < 3 {
        return Err(UsageError("--rmax must be at least 3".into()));
    }
    let report = cx_certificate(rmax)?;
    let passed = report.certifies_non_liftable();
    let conclusion = if passed {
        format!(
            "compatible at every layer with support sizes strictly increasing up to {}; \
             no single finite-support element maps onto the sequence",
            report.layers.last().map_or(0, |l| l.support_size)
        )
    } else {
        "certificate failed: incompatible layer or non-increasing support".to_string()
    };
    let layers = report
        .layers
        .iter()
        .map(|l| CxLayerJson { r: l.r, support_size: l.support_size, compatible: l.compatible })
        .collect();
    Ok(Outcome::json(&CxJson { layers, conclusion }, passed))
}
