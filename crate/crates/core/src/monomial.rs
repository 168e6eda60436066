//! Monomials and monomial ideals kept in minimal-generator normal form.
//!
//! A [`MonomialIdeal`] stores its ambient variable list and dense exponent
//! vectors aligned with it. Ideals over different ambients are aligned by
//! variable name before any binary operation, and equality compares minimal
//! generating sets by name, so extending the ambient never changes an ideal.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::wgraph::WeightedGraph;

/// Largest number of `t`-multisets of generators [`MonomialIdeal::power`] accepts.
pub const POWER_GUARD: u128 = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonomialError {
    #[error("variable `{0}` is not in the ambient variable list")]
    UnknownVariable(String),
    #[error("duplicate variable `{0}` in ambient list")]
    DuplicateVariable(String),
    #[error("power I^{t} needs {products} generator products, above the guard of {guard}")]
    PowerTooLarge { t: u32, products: u128, guard: u128 },
    #[error("power exponent must be at least 1")]
    ZeroPower,
}

/// A monomial as a map from variable name to a positive exponent.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial(BTreeMap<String, u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(BTreeMap::new())
    }

    pub fn new<I, S>(exponents: I) -> Self
    where
        I: IntoIterator<Item = (S, u32)>,
        S: Into<String>,
    {
        let mut m = BTreeMap::new();
        for (v, e) in exponents {
            if e > 0 {
                *m.entry(v.into()).or_insert(0) += e;
            }
        }
        Monomial(m)
    }

    pub fn var(name: &str) -> Self {
        Monomial::new([(name, 1)])
    }

    pub fn exponent(&self, var: &str) -> u32 {
        self.0.get(var).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, u32)> {
        self.0.iter().map(|(k, &v)| (k.as_str(), v))
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.iter().all(|(v, e)| other.exponent(v) >= e)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.iter().chain(other.iter()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut m = self.0.clone();
        for (v, e) in other.iter() {
            let slot = m.entry(v.to_string()).or_insert(0);
            *slot = (*slot).max(e);
        }
        Monomial(m)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .iter()
            .map(|(v, e)| if e == 1 { v.to_string() } else { format!("{v}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

pub(crate) fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub(crate) fn lcm(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn degree(a: &[u32]) -> u32 {
    a.iter().sum()
}

/// Keeps only the divisibility-minimal vectors, deduplicated, in canonical
/// order (by degree, then exponent vector).
pub(crate) fn minimalize(mut gens: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    gens.sort_by(|a, b| degree(a).cmp(&degree(b)).then_with(|| a.cmp(b)));
    gens.dedup();
    let mut kept: Vec<Vec<u32>> = Vec::with_capacity(gens.len());
    for g in gens {
        if !kept.iter().any(|h| divides(h, &g)) {
            kept.push(g);
        }
    }
    kept
}

/// Monomial ideal with its unique minimal generating set.
#[derive(Debug, Clone)]
pub struct MonomialIdeal {
    vars: Vec<String>,
    gens: Vec<Vec<u32>>,
}

impl MonomialIdeal {
    pub fn new<V, S>(vars: V, gens: impl IntoIterator<Item = Monomial>) -> Result<Self, MonomialError>
    where
        V: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        let mut seen = BTreeSet::new();
        for v in &vars {
            if !seen.insert(v.as_str()) {
                return Err(MonomialError::DuplicateVariable(v.clone()));
            }
        }
        let index: HashMap<&str, usize> = vars.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let mut dense = Vec::new();
        for m in gens {
            let mut e = vec![0u32; vars.len()];
            for (v, x) in m.iter() {
                let i = *index.get(v).ok_or_else(|| MonomialError::UnknownVariable(v.to_string()))?;
                e[i] = x;
            }
            dense.push(e);
        }
        Ok(MonomialIdeal::from_exponents(vars, dense))
    }

    /// Builds an ideal from exponent vectors aligned with `vars`.
    pub fn from_exponents(vars: Vec<String>, gens: Vec<Vec<u32>>) -> Self {
        assert!(gens.iter().all(|g| g.len() == vars.len()), "exponent vector length");
        MonomialIdeal {
            vars,
            gens: minimalize(gens),
        }
    }

    pub fn zero(vars: Vec<String>) -> Self {
        MonomialIdeal { vars, gens: Vec::new() }
    }

    /// The ideal generated by a list of variables.
    pub fn variables(vars: &[&str]) -> Self {
        let names: Vec<String> = vars.iter().map(|v| v.to_string()).collect();
        let gens = (0..names.len())
            .map(|i| (0..names.len()).map(|j| u32::from(i == j)).collect())
            .collect();
        MonomialIdeal::from_exponents(names, gens)
    }

    pub fn principal(m: &Monomial) -> Self {
        let vars: Vec<String> = m.iter().map(|(v, _)| v.to_string()).collect();
        let e = m.iter().map(|(_, x)| x).collect();
        MonomialIdeal::from_exponents(vars, vec![e])
    }

    pub fn ambient(&self) -> &[String] {
        &self.vars
    }

    pub fn exponent_vectors(&self) -> &[Vec<u32>] {
        &self.gens
    }

    pub fn generators(&self) -> Vec<Monomial> {
        self.gens.iter().map(|g| self.monomial(g)).collect()
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(|g| g.iter().all(|&e| e <= 1))
    }

    pub fn max_generator_degree(&self) -> u32 {
        self.gens.iter().map(|g| degree(g)).max().unwrap_or(0)
    }

    fn monomial(&self, e: &[u32]) -> Monomial {
        Monomial::new(self.vars.iter().zip(e).map(|(v, &x)| (v.as_str(), x)))
    }

    fn dense(&self, m: &Monomial) -> Vec<u32> {
        self.vars.iter().map(|v| m.exponent(v)).collect()
    }

    /// Same ideal over a larger variable list (appended names only).
    pub fn with_ambient(&self, vars: &[String]) -> MonomialIdeal {
        let mut all = self.vars.clone();
        for v in vars {
            if !all.contains(v) {
                all.push(v.clone());
            }
        }
        let extra = all.len() - self.vars.len();
        let gens = self
            .gens
            .iter()
            .map(|g| g.iter().copied().chain(std::iter::repeat(0).take(extra)).collect())
            .collect();
        MonomialIdeal { vars: all, gens }
    }

    fn aligned(&self, other: &MonomialIdeal) -> (MonomialIdeal, MonomialIdeal) {
        let a = self.with_ambient(&other.vars);
        let b = other.with_ambient(&a.vars);
        let pos: HashMap<&str, usize> = b.vars.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let gens = b
            .gens
            .iter()
            .map(|g| a.vars.iter().map(|v| g[pos[v.as_str()]]).collect())
            .collect();
        let b = MonomialIdeal {
            vars: a.vars.clone(),
            gens,
        };
        (a, b)
    }

    /// Membership: some minimal generator divides `m`.
    pub fn contains(&self, m: &Monomial) -> bool {
        let e = self.dense(m);
        self.gens.iter().any(|g| divides(g, &e))
    }

    pub fn power(&self, t: u32) -> Result<MonomialIdeal, MonomialError> {
        self.power_with_guard(t, POWER_GUARD)
    }

    /// `I^t`, refusing when the number of `t`-multisets of generators
    /// exceeds `guard`.
    pub fn power_with_guard(&self, t: u32, guard: u128) -> Result<MonomialIdeal, MonomialError> {
        if t == 0 {
            return Err(MonomialError::ZeroPower);
        }
        let products = multiset_count(self.gens.len() as u128, t as u128);
        if products > guard {
            return Err(MonomialError::PowerTooLarge { t, products, guard });
        }
        let mut acc = self.clone();
        for _ in 1..t {
            acc = acc.product(self);
        }
        Ok(acc)
    }

    /// `(I : m)`.
    pub fn colon(&self, m: &Monomial) -> MonomialIdeal {
        let base = self.with_ambient(&m.iter().map(|(v, _)| v.to_string()).collect::<Vec<_>>());
        let e = base.dense(m);
        let gens = base
            .gens
            .iter()
            .map(|g| g.iter().zip(&e).map(|(x, y)| x.saturating_sub(*y)).collect())
            .collect();
        MonomialIdeal::from_exponents(base.vars.clone(), gens)
    }

    pub fn intersect(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let (a, b) = self.aligned(other);
        let mut gens = Vec::with_capacity(a.gens.len() * b.gens.len());
        for g in &a.gens {
            for h in &b.gens {
                gens.push(lcm(g, h));
            }
        }
        MonomialIdeal::from_exponents(a.vars, gens)
    }

    /// `I + J`.
    pub fn sum(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let (a, b) = self.aligned(other);
        let gens = a.gens.iter().chain(&b.gens).cloned().collect();
        MonomialIdeal::from_exponents(a.vars, gens)
    }

    /// `I + (m)`.
    pub fn add_generator(&self, m: &Monomial) -> MonomialIdeal {
        self.sum(&MonomialIdeal::principal(m))
    }

    /// `I J`.
    pub fn product(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let (a, b) = self.aligned(other);
        let mut gens = Vec::with_capacity(a.gens.len() * b.gens.len());
        for g in &a.gens {
            for h in &b.gens {
                gens.push(g.iter().zip(h).map(|(x, y)| x + y).collect());
            }
        }
        MonomialIdeal::from_exponents(a.vars, gens)
    }

    /// Squarefree polarization; variable `x` with maximal exponent `a`
    /// becomes `x#1 .. x#a`.
    pub fn polarize(&self) -> Polarization {
        let mut vars = Vec::new();
        let mut map = Vec::new();
        let mut offsets = Vec::with_capacity(self.vars.len());
        for (j, v) in self.vars.iter().enumerate() {
            offsets.push(vars.len());
            let top = self.gens.iter().map(|g| g[j]).max().unwrap_or(0);
            for k in 1..=top {
                let name = format!("{v}#{k}");
                vars.push(name.clone());
                map.push(PolarVariable {
                    name,
                    source: v.clone(),
                    k,
                });
            }
        }
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let mut e = vec![0u32; vars.len()];
                for (j, &a) in g.iter().enumerate() {
                    for k in 0..a as usize {
                        e[offsets[j] + k] = 1;
                    }
                }
                e
            })
            .collect();
        Polarization {
            ideal: MonomialIdeal::from_exponents(vars, gens),
            variables: map,
        }
    }

    fn name_set(&self) -> BTreeSet<Monomial> {
        self.generators().into_iter().collect()
    }

    pub fn to_json(&self) -> IdealJson {
        IdealJson::from(self)
    }
}

impl PartialEq for MonomialIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.gens.len() == other.gens.len() && self.name_set() == other.name_set()
    }
}

impl Eq for MonomialIdeal {}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.generators().iter().map(|m| m.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

fn multiset_count(m: u128, t: u128) -> u128 {
    // C(m + t - 1, t), saturating
    if m == 0 {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..t {
        acc = match acc.checked_mul(m + i) {
            Some(v) => v / (i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolarVariable {
    pub name: String,
    pub source: String,
    pub k: u32,
}

#[derive(Debug, Clone)]
pub struct Polarization {
    pub ideal: MonomialIdeal,
    pub variables: Vec<PolarVariable>,
}

/// Wire form: `{"vars": [...], "gens": [{"x1":1,"x2":1}, ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealJson {
    pub vars: Vec<String>,
    pub gens: Vec<Monomial>,
}

impl From<&MonomialIdeal> for IdealJson {
    fn from(i: &MonomialIdeal) -> Self {
        IdealJson {
            vars: i.vars.clone(),
            gens: i.generators(),
        }
    }
}

impl TryFrom<IdealJson> for MonomialIdeal {
    type Error = MonomialError;

    fn try_from(j: IdealJson) -> Result<Self, MonomialError> {
        MonomialIdeal::new(j.vars, j.gens)
    }
}

impl Serialize for MonomialIdeal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        IdealJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for MonomialIdeal {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        MonomialIdeal::try_from(IdealJson::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

/// Edge ideal: one generator `x^w y^w` per edge `xy` of weight `w`, over the
/// vertex list as ambient.
pub fn edge_ideal(g: &WeightedGraph) -> MonomialIdeal {
    let n = g.vertex_count();
    let gens = g
        .edges()
        .map(|(e, w)| {
            let mut v = vec![0u32; n];
            v[e.0] = w;
            v[e.1] = w;
            v
        })
        .collect();
    MonomialIdeal::from_exponents(g.vertices().to_vec(), gens)
}
