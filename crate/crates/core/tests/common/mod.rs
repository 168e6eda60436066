//! Shared generators, independent oracles and property checks for the
//! integration suites. Each check returns the number of cases it examined, or
//! a description of the first failure.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wtreereg::betti::{betti_splitting_check, betti_table, betti_table_with, regularity, BettiError, OracleLimits};
use wtreereg::harness::{generate_instance, generate_instance_with, unlabeled_trees};
use wtreereg::matchings::{constrained_matching_number, nu, s_value};
use wtreereg::monomial::{edge_ideal, Monomial, MonomialIdeal};
use wtreereg::wgraph::{non_trivial_spine, EdgeKey, WeightedGraph};

pub type Check = Result<usize, String>;

pub fn tree_from_edges(n: usize, edges: &[(usize, usize)], weights: &[u32]) -> WeightedGraph {
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    WeightedGraph::new(
        names.clone(),
        edges
            .iter()
            .zip(weights)
            .map(|(&(a, b), &w)| (names[a].clone(), names[b].clone(), w)),
    )
    .unwrap()
}

/// All unweighted trees with `2..=max_n` vertices, one per isomorphism class.
pub fn small_trees(max_n: usize) -> Vec<WeightedGraph> {
    (2..=max_n)
        .flat_map(|n| {
            unlabeled_trees(n)
                .into_iter()
                .map(move |e| tree_from_edges(n, &e, &vec![1; e.len()]))
        })
        .collect()
}

/// Tree with two extra weight-1 leaves `z1`, `z2` attached at one vertex.
/// Returns the graph and the attachment vertex.
pub fn twin_leaf_config(seed: u64) -> (WeightedGraph, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=5);
    let heavy = if n >= 4 { rng.gen_range(1..=2) } else { 1 };
    let base = generate_instance_with(rng.gen(), n, 3, Some(heavy)).unwrap();
    let y = base.name(rng.gen_range(0..n)).to_string();
    let mut names: Vec<String> = base.vertices().to_vec();
    names.extend(["z1".to_string(), "z2".to_string()]);
    let mut edges: Vec<(String, String, u32)> = base
        .edges()
        .map(|(e, w)| (base.name(e.0).to_string(), base.name(e.1).to_string(), w))
        .collect();
    edges.push(("z1".into(), y.clone(), 1));
    edges.push(("z2".into(), y.clone(), 1));
    (WeightedGraph::new(names, edges).unwrap(), y)
}

fn prod(a: &str, b: &str) -> Monomial {
    Monomial::new([(a, 1), (b, 1)])
}

/// The six leaf colon identities for `t` in {2, 3}, on `configs` generated
/// trees with a weight-1 leaf `x = z1` at `y` and its twin `x' = z2`.
pub fn check_colon_identities(configs: u64) -> Check {
    let mut checked = 0;
    for seed in 0..configs {
        let (g, y) = twin_leaf_config(seed);
        let (x, x2) = ("z1", "z2");
        let i = edge_ideal(&g);
        let minus_x = edge_ideal(&g.delete(&[x], &[]).unwrap());
        let minus_y = edge_ideal(&g.delete(&[&y], &[]).unwrap());
        let (mx, my, mxy) = (Monomial::var(x), Monomial::var(&y), prod(x, &y));
        for t in [2u32, 3] {
            let it = i.power(t).unwrap();
            let prev = i.power(t - 1).unwrap();
            let fail = |k: usize| Err(format!("identity {k} fails at t={t} on {g}"));
            if it.colon(&mxy) != prev {
                return fail(1);
            }
            if it.add_generator(&mx) != minus_x.power(t).unwrap().add_generator(&mx) {
                return fail(2);
            }
            if it.colon(&mx).add_generator(&my) != minus_y.power(t).unwrap().add_generator(&my) {
                return fail(3);
            }
            if it.add_generator(&mxy) != minus_x.power(t).unwrap().add_generator(&mxy) {
                return fail(4);
            }
            if it.add_generator(&my) != minus_y.power(t).unwrap().add_generator(&my) {
                return fail(5);
            }
            let lhs = it.add_generator(&mxy).colon(&prod(x2, &y));
            if lhs != minus_x.power(t - 1).unwrap().add_generator(&mx) {
                return fail(6);
            }
            checked += 6;
        }
    }
    Ok(checked)
}

/// Deletion bounds `ν(G∖e) - 1 <= ν(G) <= ν(G∖e) + 1`, and `s_e(G) = ν(G)`
/// whenever either bound is attained, over every tree with at most `max_n`
/// vertices and every edge.
pub fn check_matching_deletion(max_n: usize) -> Check {
    let mut checked = 0;
    for g in small_trees(max_n) {
        let whole = nu(&g);
        for (e, _) in g.edges().collect::<Vec<_>>() {
            let cut = nu(&g.remove_edge(e));
            if whole + 1 < cut || whole > cut + 1 {
                return Err(format!("nu bounds fail on {g} minus {e:?}"));
            }
            if whole + 1 == cut || whole == cut + 1 {
                let (a, b) = g.edge_names(e);
                let s = constrained_matching_number(&g, a, b).unwrap().size;
                if s != whole {
                    return Err(format!("s = {s} but nu = {whole} on {g} at {a}{b}"));
                }
            }
            checked += 1;
        }
    }
    Ok(checked)
}

/// Exhaustive maximum induced matching containing `required`, over all edge
/// subsets.
pub fn exhaustive_s(g: &WeightedGraph, required: Option<EdgeKey>) -> usize {
    let edges: Vec<EdgeKey> = g.edges().map(|(e, _)| e).collect();
    let m = edges.len();
    let mut best = 0;
    for mask in 0u32..(1 << m) {
        let chosen: Vec<EdgeKey> = (0..m).filter(|&j| mask >> j & 1 == 1).map(|j| edges[j]).collect();
        if let Some(r) = required {
            if !chosen.contains(&r) {
                continue;
            }
        }
        let ok = chosen.iter().enumerate().all(|(a, e)| {
            chosen[a + 1..].iter().all(|f| {
                let ends = [e.0, e.1];
                ends.iter().all(|&u| !f.touches(u))
                    && ends.iter().all(|&u| !g.has_edge(u, f.0) && !g.has_edge(u, f.1))
            })
        });
        if ok {
            best = best.max(chosen.len());
        }
    }
    best
}

/// Neighbourhood-deletion identity `ν(G ∖ N_G({x_i, x_{i+1}})) = s_i(G) - 1` and the
/// split identity `s_{i+2}(G) = ν(G¹) + s_{i+2}(G²)` on generated
/// non-trivial integrally closed trees; also checks `s` against exhaustive
/// search.
pub fn check_spine_matching_identities(instances: u64) -> Check {
    let mut checked = 0;
    for seed in 0..instances {
        let n = 4 + (seed % 7) as usize;
        let g = generate_instance_with(seed, n, 3, Some(1 + (seed % 2) as usize)).unwrap();
        let spine = non_trivial_spine(&g).unwrap();
        let idx = |j: usize| g.vertex_index(&spine.path[j - 1]).unwrap();
        let i = spine.heavy_index;
        let e_i = spine.spine_edge(&g, i).unwrap();
        let s_i = s_value(&g, e_i);
        if s_i != exhaustive_s(&g, Some(e_i)) {
            return Err(format!("s_i differs from exhaustive search on {g}"));
        }
        let rest = g.remove_vertices(&g.neighborhood(&[idx(i), idx(i + 1)]));
        if nu(&rest) + 1 != s_i {
            return Err(format!("nu(G - N[e_i]) + 1 != s_i on {g}"));
        }
        checked += 1;
        if let Some(e2) = spine.spine_edge(&g, i + 2) {
            let s2 = s_value(&g, e2);
            if s2 != exhaustive_s(&g, Some(e2)) {
                return Err(format!("s_(i+2) differs from exhaustive search on {g}"));
            }
            let cut = g.remove_edge(e_i);
            let comps = cut.components();
            let side = |v: usize| comps.iter().find(|c| c.contains(&v)).unwrap().clone();
            let g1 = cut.induced(&side(idx(i)));
            let g2 = cut.induced(&side(idx(i + 1)));
            let (a, b) = g.edge_names(e2);
            let e2_in_g2 = g2.edge_key(a, b).unwrap();
            if s2 != nu(&g1) + s_value(&g2, e2_in_g2) {
                return Err(format!("split identity fails on {g}"));
            }
            checked += 1;
        }
    }
    Ok(checked)
}

/// Betti tables of `I` and `I^2` match those of their polarizations. The
/// polarized side runs under a face guard; tripped cases are not counted.
/// Returns the number of `(t = 1, t = 2)` comparisons made.
pub fn check_polarization_invariance(instances: u64, max_faces: usize) -> Result<(usize, usize), String> {
    let limits = OracleLimits {
        max_faces,
        ..OracleLimits::default()
    };
    let mut checked = (0, 0);
    for seed in 0..instances {
        let g = generate_instance(seed, 2 + (seed % 5) as usize, 3).unwrap();
        let i = edge_ideal(&g);
        for (t, ideal) in [(1, i.clone()), (2, i.power(2).unwrap())] {
            let polar = ideal.polarize().ideal;
            if !polar.is_squarefree() {
                return Err(format!("polarization of {ideal} is not squarefree"));
            }
            let p = match betti_table_with(&polar, &limits) {
                Ok(p) => p,
                Err(BettiError::ComplexTooLarge { .. }) => continue,
                Err(e) => return Err(e.to_string()),
            };
            if betti_table(&ideal).unwrap() != p {
                return Err(format!("Betti tables differ after polarizing {ideal}"));
            }
            if t == 1 {
                checked.0 += 1;
            } else {
                checked.1 += 1;
            }
        }
    }
    Ok(checked)
}

/// `I = J + K` with `J` generated by the heaviest spine edge is a Betti
/// splitting, both for `I` and for its polarization.
pub fn check_heavy_edge_splitting(instances: u64) -> Check {
    let limits = OracleLimits::default();
    let mut checked = 0;
    for seed in 0..instances {
        let n = 3 + (seed % 5) as usize;
        let heavy = if n >= 4 { 1 + (seed % 2) as usize } else { 1 };
        let g = generate_instance_with(seed, n, 3, Some(heavy)).unwrap();
        let spine = non_trivial_spine(&g).unwrap();
        let (a, b) = (&spine.path[spine.heavy_index - 1], &spine.path[spine.heavy_index]);
        let w = spine.omega_i;
        let heavy = Monomial::new([(a.as_str(), w), (b.as_str(), w)]);
        let i = edge_ideal(&g);
        let others: Vec<Monomial> = i.generators().into_iter().filter(|m| *m != heavy).collect();
        if others.is_empty() {
            continue;
        }
        let vars = i.ambient().to_vec();
        let j = MonomialIdeal::new(vars.clone(), [heavy.clone()]).unwrap();
        let k = MonomialIdeal::new(vars, others).unwrap();
        if !betti_splitting_check(&i, &j, &k, &limits).map_err(|e| e.to_string())? {
            return Err(format!("not a Betti splitting on {g}"));
        }
        let pi = i.polarize().ideal;
        let pj_gen = j.polarize().ideal.generators().remove(0);
        let pvars = pi.ambient().to_vec();
        let pj = MonomialIdeal::new(pvars.clone(), [pj_gen.clone()]).unwrap();
        let pk = MonomialIdeal::new(pvars, pi.generators().into_iter().filter(|m| *m != pj_gen)).unwrap();
        if !betti_splitting_check(&pi, &pj, &pk, &limits).map_err(|e| e.to_string())? {
            return Err(format!("polarized splitting fails on {g}"));
        }
        checked += 2;
    }
    Ok(checked)
}

/// `reg(I(H)^t) <= reg(I(G)^t)` for induced subgraphs `H` with at least one
/// edge, `t` in {1, 2}.
pub fn check_induced_monotonicity(instances: u64) -> Check {
    let mut checked = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for seed in 0..instances {
        let g = generate_instance(seed, 3 + (seed % 4) as usize, 3).unwrap();
        let n = g.vertex_count();
        let full: Vec<u32> = [1, 2]
            .iter()
            .map(|&t| regularity(&edge_ideal(&g).power(t).unwrap()).unwrap())
            .collect();
        for _ in 0..3 {
            let keep: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.6)).collect();
            let h = g.induced(&keep);
            if h.edge_count() == 0 {
                continue;
            }
            for (k, t) in [1u32, 2].into_iter().enumerate() {
                let sub = regularity(&edge_ideal(&h).power(t).unwrap()).unwrap();
                if sub > full[k] {
                    return Err(format!("reg(I(H)^{t}) = {sub} > {} for H = {h} in {g}", full[k]));
                }
                checked += 1;
            }
        }
    }
    Ok(checked)
}

/// `reg(IJ) = reg(I) + reg(J)` for edge ideals in disjoint variables.
pub fn check_disjoint_product(instances: u64) -> Check {
    let mut checked = 0;
    for seed in 0..instances {
        let a = generate_instance(seed, 2 + (seed % 3) as usize, 3).unwrap();
        let b = generate_instance(seed + 1000, 2 + (seed % 2) as usize, 3).unwrap();
        let renamed = WeightedGraph::new(
            b.vertices().iter().map(|v| format!("y{v}")),
            b.edges()
                .map(|(e, w)| (format!("y{}", b.name(e.0)), format!("y{}", b.name(e.1)), w)),
        )
        .unwrap();
        let (i, j) = (edge_ideal(&a), edge_ideal(&renamed));
        let lhs = regularity(&i.product(&j)).unwrap();
        let rhs = regularity(&i).unwrap() + regularity(&j).unwrap();
        if lhs != rhs {
            return Err(format!("reg(IJ) = {lhs} != {rhs} for {a} and {renamed}"));
        }
        checked += 1;
    }
    Ok(checked)
}

/// Independent integral-closure test: no 3- or 4-vertex induced subgraph
/// whose edges are all non-trivial forms a 2-path, a triangle, or two
/// disjoint edges.
pub fn closure_by_search(g: &WeightedGraph) -> bool {
    let n = g.vertex_count();
    let heavy = |a: usize, b: usize| g.weight(EdgeKey::new(a, b)).is_some_and(|w| w >= 2);
    let induced_edges = |set: &[usize]| -> Option<Vec<(usize, usize)>> {
        let mut out = Vec::new();
        for (p, &a) in set.iter().enumerate() {
            for &b in &set[p + 1..] {
                if g.has_edge(a, b) {
                    if !heavy(a, b) {
                        return None;
                    }
                    out.push((a, b));
                }
            }
        }
        Some(out)
    };
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if let Some(es) = induced_edges(&[a, b, c]) {
                    if es.len() >= 2 {
                        return false;
                    }
                }
                for d in c + 1..n {
                    if let Some(es) = induced_edges(&[a, b, c, d]) {
                        let verts: BTreeSet<usize> = es.iter().flat_map(|&(u, v)| [u, v]).collect();
                        if es.len() == 2 && verts.len() == 4 {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}
