//! Graded Betti numbers of monomial ideals.
//!
//! For a multidegree `b`, the upper-Koszul complex is
//! `K^b(I) = { squarefree σ ⊆ supp(b) : x^(b - σ) ∈ I }` and
//! `β_{i,b}(I) = dim H̃_{i-1}(K^b(I); Q)`. Only multidegrees in the lcm lattice
//! of the minimal generators can carry a nonzero Betti number, so the table is
//! assembled by walking that lattice and computing reduced simplicial homology
//! with exact rank computations.

use std::collections::{BTreeMap, HashMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::SparseIntMatrix;
use crate::monomial::{divides, lcm, MonomialIdeal};

pub const GUARD_ENV_VAR: &str = "WTREEREG_GUARD_LCM";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BettiError {
    #[error("regularity of the zero ideal is undefined")]
    UndefinedRegularity,
    #[error("{count} minimal generators exceed the limit of {limit}")]
    TooManyGenerators { count: usize, limit: usize },
    #[error("lcm lattice exceeds {limit} elements")]
    LatticeTooLarge { limit: usize },
    #[error("upper-Koszul complex exceeds {limit} faces")]
    ComplexTooLarge { limit: usize },
    #[error("invalid splitting: {0}")]
    PartitionInvalid(String),
}

impl BettiError {
    /// Short tag naming the guard that tripped, if this is a guard error.
    pub fn guard_name(&self) -> Option<&'static str> {
        match self {
            BettiError::TooManyGenerators { .. } => Some("generators"),
            BettiError::LatticeTooLarge { .. } => Some("lcm-lattice"),
            BettiError::ComplexTooLarge { .. } => Some("koszul-faces"),
            _ => None,
        }
    }
}

/// Size guards for the oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_generators: usize,
    pub max_lattice: usize,
    pub max_faces: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_generators: 128,
            max_lattice: 50_000,
            max_faces: 1 << 22,
        }
    }
}

impl OracleLimits {
    /// Defaults, with the lattice guard taken from `WTREEREG_GUARD_LCM` when set.
    pub fn from_env() -> Self {
        let mut limits = OracleLimits::default();
        if let Some(n) = std::env::var(GUARD_ENV_VAR).ok().and_then(|s| s.trim().parse().ok()) {
            limits.max_lattice = n;
        }
        limits
    }
}

/// Graded Betti numbers `β_{i,j}` of an ideal (not of `S/I`): `β_{0,j}` counts
/// minimal generators of degree `j`. Zero entries are not stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BettiTable {
    entries: BTreeMap<(usize, u32), u64>,
}

impl BettiTable {
    pub fn get(&self, i: usize, j: u32) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, u32), u64)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn projective_dimension(&self) -> Option<usize> {
        self.entries.keys().map(|&(i, _)| i).max()
    }

    /// `max { j - i : β_{i,j} ≠ 0 }`.
    pub fn regularity(&self) -> Option<u32> {
        self.entries.keys().map(|&(i, j)| j - i as u32).max()
    }

    fn add(&mut self, i: usize, j: u32, n: u64) {
        if n > 0 {
            *self.entries.entry((i, j)).or_insert(0) += n;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct BettiEntryJson {
    i: usize,
    j: u32,
    beta: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct BettiTableJson {
    entries: Vec<BettiEntryJson>,
    reg: Option<u32>,
}

impl Serialize for BettiTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        BettiTableJson {
            entries: self
                .entries()
                .map(|((i, j), beta)| BettiEntryJson { i, j, beta })
                .collect(),
            reg: self.regularity(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BettiTable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = BettiTableJson::deserialize(d)?;
        let mut t = BettiTable::default();
        for e in j.entries {
            t.add(e.i, e.j, e.beta);
        }
        Ok(t)
    }
}

/// All lcms of nonempty subsets of `gens`, built by closing the generator set
/// under pairwise lcm with generators.
pub fn lcm_lattice(gens: &[Vec<u32>], limit: usize) -> Result<Vec<Vec<u32>>, BettiError> {
    let mut seen: HashSet<Vec<u32>> = gens.iter().cloned().collect();
    if seen.len() > limit {
        return Err(BettiError::LatticeTooLarge { limit });
    }
    let mut frontier: Vec<Vec<u32>> = seen.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for l in &frontier {
            for g in gens {
                if divides(g, l) {
                    continue;
                }
                let m = lcm(l, g);
                if !seen.contains(&m) {
                    seen.insert(m.clone());
                    next.push(m);
                    if seen.len() > limit {
                        return Err(BettiError::LatticeTooLarge { limit });
                    }
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<Vec<u32>> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// Face structure of `K^b(I)`.
#[derive(Debug, Clone)]
pub struct KoszulComplex {
    /// Faces grouped by size (`levels[0]` holds the empty face when present),
    /// as bitmasks over the support of `b`.
    levels: Vec<Vec<u64>>,
}

impl KoszulComplex {
    /// Builds `K^b(I)` from the ideal's minimal generators.
    pub fn new(gens: &[Vec<u32>], b: &[u32], max_faces: usize) -> Result<Option<Self>, BettiError> {
        let support: Vec<usize> = (0..b.len()).filter(|&v| b[v] > 0).collect();
        if support.len() > 63 {
            return Err(BettiError::ComplexTooLarge { limit: max_faces });
        }
        let mut facets: Vec<u64> = gens
            .iter()
            .filter(|g| divides(g, b))
            .map(|g| {
                support
                    .iter()
                    .enumerate()
                    .filter(|&(_, &v)| g[v] < b[v])
                    .fold(0u64, |m, (bit, _)| m | (1 << bit))
            })
            .collect();
        if facets.is_empty() {
            // b is not in I: the void complex
            return Ok(None);
        }
        facets.sort_unstable();
        facets.dedup();
        let maximal: Vec<u64> = facets
            .iter()
            .copied()
            .filter(|&f| !facets.iter().any(|&h| h != f && h & f == f))
            .collect();

        let mut levels = vec![vec![0u64]];
        let mut total = 1usize;
        loop {
            let last = levels.last().expect("nonempty");
            let mut next = Vec::new();
            for &face in last {
                let start = if face == 0 { 0 } else { 64 - face.leading_zeros() as usize };
                for bit in start..support.len() {
                    let cand = face | (1 << bit);
                    if maximal.iter().any(|&f| f & cand == cand) {
                        next.push(cand);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            total += next.len();
            if total > max_faces {
                return Err(BettiError::ComplexTooLarge { limit: max_faces });
            }
            next.sort_unstable();
            levels.push(next);
        }
        Ok(Some(KoszulComplex { levels }))
    }

    /// `f_{-1}, f_0, f_1, ...`
    pub fn face_counts(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }

    fn boundary(&self, size: usize) -> SparseIntMatrix {
        // rows: faces with `size` vertices, columns: faces with `size - 1`
        let index: HashMap<u64, usize> = self.levels[size - 1].iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let mut m = SparseIntMatrix::new();
        for &face in &self.levels[size] {
            let mut row = Vec::with_capacity(size);
            let mut sign = 1i64;
            let mut rest = face;
            while rest != 0 {
                let bit = rest & rest.wrapping_neg();
                rest &= rest - 1;
                row.push((index[&(face & !bit)], sign));
                sign = -sign;
            }
            m.push_row(row);
        }
        m
    }

    /// Reduced homology ranks `h̃_{-1}, h̃_0, h̃_1, ...`.
    pub fn reduced_homology(&self) -> Vec<usize> {
        let f = self.face_counts();
        let top = f.len();
        // ranks[s] = rank of the boundary from size-s faces to size-(s-1) faces
        let mut ranks = vec![0usize; top + 1];
        for (s, rank) in ranks.iter_mut().enumerate().take(top).skip(1) {
            *rank = self.boundary(s).rank();
        }
        (0..top).map(|s| f[s] - ranks[s] - ranks[s + 1]).collect()
    }

    /// Cone points (vertices in every facet) force acyclicity.
    pub fn is_cone(gens: &[Vec<u32>], b: &[u32]) -> bool {
        let mut common: Option<Vec<bool>> = None;
        for g in gens.iter().filter(|g| divides(g, b)) {
            let here: Vec<bool> = (0..b.len()).map(|v| b[v] > 0 && g[v] < b[v]).collect();
            common = Some(match common {
                None => here,
                Some(c) => c.iter().zip(&here).map(|(x, y)| *x && *y).collect(),
            });
        }
        common.map_or(false, |c| c.into_iter().any(|x| x))
    }
}

/// Reduced homology of `K^b(I)` indexed by homological degree `i` of the
/// ideal: entry `i` is `β_{i,b}(I)`.
pub fn multidegree_betti(ideal: &MonomialIdeal, b: &[u32], limits: &OracleLimits) -> Result<Vec<usize>, BettiError> {
    let gens = ideal.exponent_vectors();
    if KoszulComplex::is_cone(gens, b) {
        return Ok(Vec::new());
    }
    match KoszulComplex::new(gens, b, limits.max_faces)? {
        None => Ok(Vec::new()),
        Some(k) => Ok(k.reduced_homology()),
    }
}

pub fn betti_table(ideal: &MonomialIdeal) -> Result<BettiTable, BettiError> {
    betti_table_with(ideal, &OracleLimits::default())
}

/// Graded Betti table of a nonzero ideal, within the given guards.
pub fn betti_table_with(ideal: &MonomialIdeal, limits: &OracleLimits) -> Result<BettiTable, BettiError> {
    let gens = ideal.exponent_vectors();
    if gens.is_empty() {
        return Err(BettiError::UndefinedRegularity);
    }
    if gens.len() > limits.max_generators {
        return Err(BettiError::TooManyGenerators {
            count: gens.len(),
            limit: limits.max_generators,
        });
    }
    let lattice = lcm_lattice(gens, limits.max_lattice)?;
    let per_degree: Vec<(u32, Vec<usize>)> = lattice
        .par_iter()
        .map(|b| {
            let betti = multidegree_betti(ideal, b, limits)?;
            Ok((b.iter().sum::<u32>(), betti))
        })
        .collect::<Result<_, BettiError>>()?;
    let mut table = BettiTable::default();
    for (j, betti) in per_degree {
        for (i, n) in betti.into_iter().enumerate() {
            table.add(i, j, n as u64);
        }
    }
    Ok(table)
}

pub fn regularity(ideal: &MonomialIdeal) -> Result<u32, BettiError> {
    regularity_with(ideal, &OracleLimits::default())
}

/// `reg(I) = max { j - i : β_{i,j}(I) ≠ 0 }`.
pub fn regularity_with(ideal: &MonomialIdeal, limits: &OracleLimits) -> Result<u32, BettiError> {
    betti_table_with(ideal, limits)?
        .regularity()
        .ok_or(BettiError::UndefinedRegularity)
}

/// Checks `β_{i,j}(I) = β_{i,j}(J) + β_{i,j}(K) + β_{i-1,j}(J ∩ K)` for all
/// `i, j`, after verifying that `𝒢(J)` and `𝒢(K)` partition `𝒢(I)`.
pub fn betti_splitting_check(
    i: &MonomialIdeal,
    j: &MonomialIdeal,
    k: &MonomialIdeal,
    limits: &OracleLimits,
) -> Result<bool, BettiError> {
    if j.is_zero() || k.is_zero() {
        return Err(BettiError::PartitionInvalid("both parts must be nonempty".into()));
    }
    let gi: HashSet<_> = i.generators().into_iter().collect();
    let gj: HashSet<_> = j.generators().into_iter().collect();
    let gk: HashSet<_> = k.generators().into_iter().collect();
    if !gj.is_disjoint(&gk) {
        return Err(BettiError::PartitionInvalid("parts share a generator".into()));
    }
    if gi.len() != gj.len() + gk.len() || !gj.iter().chain(&gk).all(|g| gi.contains(g)) {
        return Err(BettiError::PartitionInvalid(
            "parts do not cover the minimal generators exactly".into(),
        ));
    }
    let ti = betti_table_with(i, limits)?;
    let tj = betti_table_with(j, limits)?;
    let tk = betti_table_with(k, limits)?;
    let tjk = betti_table_with(&j.intersect(k), limits)?;
    let mut keys: Vec<(usize, u32)> = ti.entries().map(|(k, _)| k).collect();
    keys.extend(tj.entries().map(|(k, _)| k));
    keys.extend(tk.entries().map(|(k, _)| k));
    keys.extend(tjk.entries().map(|((a, b), _)| (a + 1, b)));
    Ok(keys.into_iter().all(|(a, b)| {
        let cross = if a == 0 { 0 } else { tjk.get(a - 1, b) };
        ti.get(a, b) == tj.get(a, b) + tk.get(a, b) + cross
    }))
}
