//! Instance generation, exhaustive small-tree enumeration, and end-to-end
//! verification of the closed forms against the Betti oracle.

use std::collections::{BTreeMap, BTreeSet};
use std::io::{self, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::betti::{regularity_with, OracleLimits};
use crate::formulas::{
    reg_closed_form, reg_path_closed_form, reg_power_exact, reg_power_upper_bound, PowerCase, RegCase,
};
use crate::matchings::{nu, s_value};
use crate::monomial::edge_ideal;
use crate::wgraph::{is_integrally_closed, non_trivial_spine, EdgeKey, GraphJson, WeightedGraph};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error("infeasible constraints: {0}")]
    InfeasibleConstraints(String),
    #[error("graph is not a tree")]
    NotATree,
}

fn vertex_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

fn build(n: usize, edges: &[(usize, usize)], weights: &[u32]) -> WeightedGraph {
    let names = vertex_names(n);
    WeightedGraph::new(
        names.clone(),
        edges
            .iter()
            .zip(weights)
            .map(|(&(a, b), &w)| (names[a].clone(), names[b].clone(), w)),
    )
    .expect("generated edges are simple")
}

/// Uniform random labeled tree on `n` vertices from a Prüfer sequence.
fn prufer_tree(rng: &mut ChaCha8Rng, n: usize) -> Vec<(usize, usize)> {
    if n == 2 {
        return vec![(0, 1)];
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &v in &seq {
        degree[v] += 1;
    }
    let mut leaves: BTreeSet<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &v in &seq {
        let leaf = leaves.pop_first().expect("a Prüfer step always has a leaf");
        edges.push((leaf, v));
        degree[v] -= 1;
        if degree[v] == 1 {
            leaves.insert(v);
        }
    }
    let rest: Vec<usize> = leaves.into_iter().collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// Pairs of edge positions `(e, f)` joined by a third edge, i.e. the ends of
/// a 3-edge path.
fn spaced_pairs(edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let touches = |e: (usize, usize), v: usize| e.0 == v || e.1 == v;
    let mut out = Vec::new();
    for a in 0..edges.len() {
        for b in a + 1..edges.len() {
            let (ea, eb) = (edges[a], edges[b]);
            if touches(ea, eb.0) || touches(ea, eb.1) {
                continue;
            }
            let linked = edges.iter().any(|&m| {
                (touches(m, ea.0) || touches(m, ea.1)) && (touches(m, eb.0) || touches(m, eb.1))
            });
            if linked {
                out.push((a, b));
            }
        }
    }
    out
}

/// Random integrally closed weighted tree on `x1..xn`; the number of
/// non-trivial edges is drawn from what `n` and `max_weight` allow.
pub fn generate_instance(seed: u64, n: usize, max_weight: u32) -> Result<WeightedGraph, HarnessError> {
    generate_instance_with(seed, n, max_weight, None)
}

/// As [`generate_instance`], optionally fixing the number of non-trivial
/// edges (0, 1 or 2).
pub fn generate_instance_with(
    seed: u64,
    n: usize,
    max_weight: u32,
    heavy: Option<usize>,
) -> Result<WeightedGraph, HarnessError> {
    if n < 2 {
        return Err(HarnessError::InfeasibleConstraints(format!("need at least 2 vertices, got {n}")));
    }
    if max_weight < 1 {
        return Err(HarnessError::InfeasibleConstraints("max_weight must be at least 1".into()));
    }
    let max_heavy = match (max_weight, n) {
        (1, _) => 0,
        (_, 2 | 3) => 1,
        _ => 2,
    };
    if let Some(h) = heavy {
        if h > max_heavy {
            return Err(HarnessError::InfeasibleConstraints(format!(
                "{h} non-trivial edges need {} with n = {n}, max_weight = {max_weight}",
                if h > 2 { "an impossible tree".to_string() } else { "n >= 4 and max_weight >= 2".to_string() }
            )));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let count = heavy.unwrap_or_else(|| rng.gen_range(0..=max_heavy));
    loop {
        let edges = prufer_tree(&mut rng, n);
        let mut weights = vec![1u32; edges.len()];
        let heavy_weight = |rng: &mut ChaCha8Rng| rng.gen_range(2..=max_weight);
        match count {
            0 => {}
            1 => {
                let e = rng.gen_range(0..edges.len());
                weights[e] = heavy_weight(&mut rng);
            }
            _ => {
                let pairs = spaced_pairs(&edges);
                if pairs.is_empty() {
                    // a star has no 3-edge path; draw another shape
                    continue;
                }
                let (a, b) = pairs[rng.gen_range(0..pairs.len())];
                weights[a] = heavy_weight(&mut rng);
                weights[b] = heavy_weight(&mut rng);
            }
        }
        let g = build(n, &edges, &weights);
        debug_assert!(is_integrally_closed(&g));
        return Ok(g);
    }
}

fn centers(g: &WeightedGraph) -> Vec<usize> {
    let n = g.vertex_count();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] <= 1).collect();
    let mut left = n;
    while left > 2 {
        left -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            degree[v] = 0;
            for u in g.neighbors(v) {
                if degree[u] > 0 {
                    degree[u] -= 1;
                    if degree[u] == 1 {
                        next.push(u);
                    }
                }
            }
        }
        layer = next;
    }
    layer
}

fn rooted_code(g: &WeightedGraph, v: usize, parent: Option<usize>) -> String {
    let mut children: Vec<String> = g
        .neighbors(v)
        .filter(|&u| Some(u) != parent)
        .map(|u| {
            let w = g.weight(EdgeKey::new(u, v)).unwrap_or(1);
            format!("{w}{}", rooted_code(g, u, Some(v)))
        })
        .collect();
    children.sort();
    format!("({})", children.concat())
}

/// Isomorphism-invariant code of a weighted tree (vertex names ignored).
pub fn canonical_form(t: &WeightedGraph) -> String {
    centers(t)
        .into_iter()
        .map(|c| rooted_code(t, c, None))
        .min()
        .unwrap_or_default()
}

/// Edge lists of all unlabeled trees on `n` vertices, one per isomorphism
/// class, grown leaf by leaf.
pub fn unlabeled_trees(n: usize) -> Vec<Vec<(usize, usize)>> {
    if n == 0 {
        return Vec::new();
    }
    let mut level: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
    for m in 1..n {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for edges in &level {
            for v in 0..m {
                let mut grown = edges.clone();
                grown.push((v, m));
                let code = canonical_form(&build(m + 1, &grown, &vec![1; grown.len()]));
                if seen.insert(code) {
                    next.push(grown);
                }
            }
        }
        level = next;
    }
    level
}

/// Every integrally closed weighted tree with `2..=max_vertices` vertices and
/// weights in `1..=max_weight`, up to weighted isomorphism.
pub fn enumerate_trees(max_vertices: usize, max_weight: u32) -> Vec<WeightedGraph> {
    let mut out = Vec::new();
    for n in 2..=max_vertices {
        for edges in unlabeled_trees(n) {
            let mut seen = BTreeSet::new();
            let m = edges.len();
            let mut weights = vec![1u32; m];
            loop {
                let g = build(n, &edges, &weights);
                if is_integrally_closed(&g) && seen.insert(canonical_form(&g)) {
                    out.push(g);
                }
                // odometer over {1..=max_weight}^m
                let mut pos = 0;
                while pos < m && weights[pos] == max_weight {
                    weights[pos] = 1;
                    pos += 1;
                }
                if pos == m {
                    break;
                }
                weights[pos] += 1;
            }
        }
    }
    out
}

/// A worked instance together with the values printed alongside it.
#[derive(Debug, Clone)]
pub struct GoldenInstance {
    pub label: &'static str,
    pub graph: WeightedGraph,
    pub reg: u32,
    pub reg_square: u32,
    pub nu: usize,
    /// Printed `s_j` values by spine edge index.
    pub s_values: Vec<(usize, usize)>,
}

fn labeled(n: usize, edges: &[(usize, usize, u32)]) -> WeightedGraph {
    let names = vertex_names(n);
    WeightedGraph::new(
        names.clone(),
        edges.iter().map(|&(a, b, w)| (names[a - 1].clone(), names[b - 1].clone(), w)),
    )
    .expect("golden graphs are simple")
}

/// Spine `x1..x5` with `x2x3` of weight 2, and three legs of length two at `x3`.
pub fn golden_single_heavy() -> GoldenInstance {
    GoldenInstance {
        label: "golden-single-heavy",
        graph: labeled(
            9,
            &[(1, 2, 1), (2, 3, 2), (3, 4, 1), (4, 5, 1), (3, 6, 1), (6, 7, 1), (3, 8, 1), (8, 9, 1)],
        ),
        reg: 5,
        reg_square: 8,
        nu: 4,
        s_values: vec![(2, 1)],
    }
}

/// Spine `x1..x4` with weights 3, 1, 2, and three legs of length two at `x2`.
/// The printed `s_3` is 3; exhaustive search gives 4.
pub fn golden_double_heavy() -> GoldenInstance {
    GoldenInstance {
        label: "golden-double-heavy",
        graph: labeled(
            10,
            &[(1, 2, 3), (2, 3, 1), (3, 4, 2), (2, 5, 1), (5, 6, 1), (2, 7, 1), (7, 8, 1), (2, 9, 1), (9, 10, 1)],
        ),
        reg: 7,
        reg_square: 12,
        nu: 4,
        s_values: vec![(1, 1), (3, 3)],
    }
}

pub fn golden_instances() -> Vec<GoldenInstance> {
    vec![golden_single_heavy(), golden_double_heavy()]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Pass,
    BoundOnly,
    Mismatch,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpineSummary {
    pub path: Vec<String>,
    pub k: usize,
    pub i: usize,
    pub omega_i: u32,
    pub omega_i_plus_2: Option<u32>,
    pub d: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Invariants {
    pub nu: usize,
    pub s_i: Option<usize>,
    pub s_i_plus_2: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaReg {
    pub value: u32,
    pub case_tag: RegCase,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerRecord {
    pub t: u32,
    pub exact: Option<u32>,
    pub exact_case: Option<PowerCase>,
    pub bound: Option<u32>,
    pub oracle: Option<u32>,
    /// Guard that stopped the oracle at this power.
    pub skipped: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub index: usize,
    pub label: String,
    pub instance: GraphJson,
    pub spine: Option<SpineSummary>,
    pub invariants: Invariants,
    pub formula_reg: Option<FormulaReg>,
    pub path_formula_reg: Option<u32>,
    pub oracle_reg: Option<u32>,
    pub powers: Vec<PowerRecord>,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub t_max: u32,
    /// Powers `t >= 3` are only attempted for ideals with at most this many
    /// generators.
    pub high_power_generators: usize,
    pub limits: OracleLimits,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            t_max: 2,
            high_power_generators: 6,
            limits: OracleLimits::default(),
        }
    }
}

/// Oracle regularity of `I^t`, or the name of the guard that stopped it.
fn oracle_power(t: &WeightedGraph, power: u32, limits: &OracleLimits) -> Result<u32, String> {
    let ideal = edge_ideal(t).power(power).map_err(|_| "power-products".to_string())?;
    regularity_with(&ideal, limits).map_err(|e| e.guard_name().unwrap_or("undefined").to_string())
}

#[derive(Default)]
struct Tally {
    exact_ok: usize,
    bound_ok: usize,
    failed: bool,
}

impl Tally {
    fn exact(&mut self, notes: &mut Vec<String>, what: &str, expected: u32, oracle: u32) {
        if expected == oracle {
            self.exact_ok += 1;
        } else {
            self.failed = true;
            notes.push(format!("mismatch: {what} = {expected}, oracle = {oracle}"));
        }
    }

    fn bound(&mut self, notes: &mut Vec<String>, t: u32, bound: u32, oracle: u32) {
        if oracle <= bound {
            self.bound_ok += 1;
        } else {
            self.failed = true;
            notes.push(format!("mismatch: oracle reg(I^{t}) = {oracle} exceeds bound {bound}"));
        }
    }

    fn verdict(&self) -> Verdict {
        match (self.failed, self.exact_ok, self.bound_ok) {
            (true, _, _) => Verdict::Mismatch,
            (false, 0, 0) => Verdict::Skipped,
            (false, 0, _) => Verdict::BoundOnly,
            _ => Verdict::Pass,
        }
    }
}

/// Compares every closed form that applies to `t` with the oracle, for
/// powers `1..=t_max`. Guard trips are recorded, never raised.
pub fn verify_instance(t: &WeightedGraph, opts: &VerifyOptions) -> Result<VerificationReport, HarnessError> {
    verify_labeled(t, 0, "instance", opts)
}

fn verify_labeled(
    t: &WeightedGraph,
    index: usize,
    label: &str,
    opts: &VerifyOptions,
) -> Result<VerificationReport, HarnessError> {
    if !t.is_tree() {
        return Err(HarnessError::NotATree);
    }
    let mut notes = Vec::new();
    let mut tally = Tally::default();
    let mut report = VerificationReport {
        schema_version: SCHEMA_VERSION,
        index,
        label: label.to_string(),
        instance: t.to_json(),
        spine: None,
        invariants: Invariants {
            nu: nu(t),
            ..Invariants::default()
        },
        formula_reg: None,
        path_formula_reg: None,
        oracle_reg: None,
        powers: Vec::new(),
        verdict: Verdict::Skipped,
        notes: Vec::new(),
    };

    let formula = match reg_closed_form(t) {
        Ok(f) => f,
        Err(e) => {
            notes.push(format!("no closed form: {e}"));
            report.notes = notes;
            return Ok(report);
        }
    };
    if let Ok(spine) = non_trivial_spine(t) {
        let s_at = |j: usize| spine.spine_edge(t, j).map(|e| s_value(t, e));
        report.invariants.s_i = s_at(spine.heavy_index);
        report.invariants.s_i_plus_2 = s_at(spine.heavy_index + 2);
        report.spine = Some(SpineSummary {
            k: spine.k(),
            i: spine.heavy_index,
            omega_i: spine.omega_i,
            omega_i_plus_2: spine.omega_i_plus_2,
            d: spine.d,
            path: spine.path,
        });
    }
    report.formula_reg = Some(FormulaReg {
        value: formula.value,
        case_tag: formula.case_tag,
    });
    report.path_formula_reg = reg_path_closed_form(t).ok().map(|r| r.value);

    let generators = t.edge_count();
    let trivial = t.is_trivially_weighted();
    let mut quotient_reading = Vec::new();
    for power in 1..=opts.t_max.max(1) {
        let exact = reg_power_exact(t, power).ok().flatten();
        let bound = if trivial {
            exact.map(|e| e.0)
        } else {
            reg_power_upper_bound(t, power).ok()
        };
        let mut record = PowerRecord {
            t: power,
            exact: exact.map(|e| e.0),
            exact_case: exact.map(|e| e.1),
            bound,
            oracle: None,
            skipped: None,
        };
        let oracle = if power >= 3 && generators > opts.high_power_generators {
            Err("high-power-generators".to_string())
        } else {
            oracle_power(t, power, &opts.limits)
        };
        match oracle {
            Ok(o) => {
                record.oracle = Some(o);
                if power == 1 {
                    report.oracle_reg = Some(o);
                    tally.exact(&mut notes, "closed-form reg(I)", formula.value, o);
                    if let Some(p) = report.path_formula_reg {
                        tally.exact(&mut notes, "path floor formula", p, o);
                    }
                }
                if let Some((e, case)) = exact {
                    tally.exact(&mut notes, &format!("exact reg(I^{power}) [{case:?}]"), e, o);
                    if trivial && e != o {
                        quotient_reading.push(format!("t={power}: S/I reading predicts {}", e + 1));
                    }
                }
                if let Some(b) = bound {
                    tally.bound(&mut notes, power, b, o);
                }
            }
            Err(guard) => record.skipped = Some(guard),
        }
        report.powers.push(record);
    }
    if !quotient_reading.is_empty() {
        notes.push(format!(
            "trivial-tree law 2t+nu-1 failed; alternative reading: {}",
            quotient_reading.join(", ")
        ));
    }
    report.verdict = tally.verdict();
    report.notes = notes;
    Ok(report)
}

/// Verification of a golden instance, with notes for any printed value that
/// disagrees with recomputation.
pub fn verify_golden(g: &GoldenInstance, index: usize, opts: &VerifyOptions) -> VerificationReport {
    let mut report = verify_labeled(&g.graph, index, g.label, opts).expect("golden instances are trees");
    if report.invariants.nu != g.nu {
        report.notes.push(format!("printed nu = {}, recomputed {}", g.nu, report.invariants.nu));
    }
    if let Ok(spine) = non_trivial_spine(&g.graph) {
        for &(j, printed) in &g.s_values {
            if let Some(e) = spine.spine_edge(&g.graph, j) {
                let actual = s_value(&g.graph, e);
                if actual != printed {
                    report
                        .notes
                        .push(format!("printed s_{j} = {printed}, exhaustive search gives {actual}"));
                }
            }
        }
    }
    if report.oracle_reg.is_some_and(|r| r != g.reg) {
        report.notes.push(format!("printed reg(I) = {}, oracle disagrees", g.reg));
    }
    let square = report.powers.iter().find(|p| p.t == 2).and_then(|p| p.oracle);
    if square.is_some_and(|r| r != g.reg_square) {
        report.notes.push(format!("printed reg(I^2) = {}, oracle disagrees", g.reg_square));
    }
    report
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub golden: bool,
    pub enumerate: bool,
    pub random: Option<usize>,
    pub seed: u64,
    pub max_vertices: usize,
    pub max_weight: u32,
    pub options: VerifyOptions,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            golden: false,
            enumerate: false,
            random: None,
            seed: 0,
            max_vertices: 7,
            max_weight: 3,
            options: VerifyOptions::default(),
        }
    }
}

impl SuiteConfig {
    pub fn is_empty(&self) -> bool {
        !self.golden && !self.enumerate && self.random.is_none()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub total: usize,
    pub counts: BTreeMap<String, usize>,
}

impl SuiteSummary {
    pub fn mismatches(&self) -> usize {
        self.counts.get("MISMATCH").copied().unwrap_or(0)
    }

    /// 0 when nothing contradicted the oracle, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.mismatches() == 0 {
            0
        } else {
            1
        }
    }
}

/// `count` random instances with sizes in `2..=max_vertices`, derived
/// deterministically from `seed`.
pub fn random_corpus(
    seed: u64,
    count: usize,
    max_vertices: usize,
    max_weight: u32,
) -> Result<Vec<(u64, WeightedGraph)>, HarnessError> {
    if max_vertices < 2 {
        return Err(HarnessError::InfeasibleConstraints("max_vertices must be at least 2".into()));
    }
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = master.gen_range(2..=max_vertices);
            let s: u64 = master.gen();
            generate_instance(s, n, max_weight).map(|g| (s, g))
        })
        .collect()
}

enum Job {
    Golden(GoldenInstance),
    Plain(String, WeightedGraph),
}

/// Runs the configured sweeps and writes one JSON line per instance, in
/// instance order.
pub fn run_suite(config: &SuiteConfig, out: &mut dyn Write) -> io::Result<SuiteSummary> {
    let mut jobs = Vec::new();
    if config.golden {
        jobs.extend(golden_instances().into_iter().map(Job::Golden));
    }
    if config.enumerate {
        for (i, g) in enumerate_trees(config.max_vertices, config.max_weight).into_iter().enumerate() {
            jobs.push(Job::Plain(format!("enumerate-{i}"), g));
        }
    }
    if let Some(count) = config.random {
        let corpus = random_corpus(config.seed, count, config.max_vertices, config.max_weight)
            .map_err(|e| io::Error::new(io::ErrorKind::InvalidInput, e.to_string()))?;
        for (i, (s, g)) in corpus.into_iter().enumerate() {
            jobs.push(Job::Plain(format!("random-{i}-seed-{s}"), g));
        }
    }
    let reports: Vec<VerificationReport> = jobs
        .par_iter()
        .enumerate()
        .map(|(index, job)| match job {
            Job::Golden(g) => verify_golden(g, index, &config.options),
            Job::Plain(label, g) => {
                verify_labeled(g, index, label, &config.options).expect("generated instances are trees")
            }
        })
        .collect();
    let mut summary = SuiteSummary::default();
    for r in &reports {
        serde_json::to_writer(&mut *out, r)?;
        out.write_all(b"\n")?;
        summary.total += 1;
        let tag = serde_json::to_value(r.verdict).expect("verdict serializes");
        *summary
            .counts
            .entry(tag.as_str().unwrap_or_default().to_string())
            .or_insert(0) += 1;
    }
    out.flush()?;
    Ok(summary)
}
