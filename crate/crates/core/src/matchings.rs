//! Induced matchings: the induced matching number `ν(G)` and the constrained
//! number `s_e(G)` (largest induced matching forced to contain `e`).
//!
//! Small graphs (at most [`BRUTE_FORCE_EDGE_LIMIT`] edges) are searched
//! exhaustively; larger forests use a rooted-tree dynamic program. Witnesses
//! are always the lexicographically smallest optimal edge set, with edges
//! ordered by their (sorted) endpoint names.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::wgraph::{EdgeKey, GraphError, WeightedGraph};

pub const BRUTE_FORCE_EDGE_LIMIT: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchingResult {
    pub size: usize,
    /// Edges as `(u, v)` name pairs with `u < v`, sorted.
    pub witness: Vec<(String, String)>,
}

/// Edges of `g` sorted by endpoint names.
fn sorted_edges(g: &WeightedGraph) -> Vec<EdgeKey> {
    let mut edges: Vec<EdgeKey> = g.edges().map(|(e, _)| e).collect();
    edges.sort_by(|a, b| g.edge_names(*a).cmp(&g.edge_names(*b)));
    edges
}

fn conflicts(g: &WeightedGraph, e: EdgeKey, f: EdgeKey) -> bool {
    [e.0, e.1]
        .iter()
        .any(|&p| [f.0, f.1].iter().any(|&q| p == q || g.has_edge(p, q)))
}

/// Whether the given edges form an induced matching of `g`.
pub fn is_induced_matching(g: &WeightedGraph, edges: &[EdgeKey]) -> bool {
    edges.iter().all(|e| g.weight(*e).is_some())
        && edges
            .iter()
            .enumerate()
            .all(|(a, &e)| edges[a + 1..].iter().all(|&f| !conflicts(g, e, f)))
}

fn to_result(g: &WeightedGraph, mut edges: Vec<EdgeKey>) -> MatchingResult {
    edges.sort_by(|a, b| g.edge_names(*a).cmp(&g.edge_names(*b)));
    MatchingResult {
        size: edges.len(),
        witness: edges
            .iter()
            .map(|&e| {
                let (a, b) = g.edge_names(e);
                (a.to_string(), b.to_string())
            })
            .collect(),
    }
}

/// Exhaustive include-first search; the first optimum found is the
/// lexicographically smallest one.
pub(crate) fn brute_force(g: &WeightedGraph, required: Option<EdgeKey>) -> Vec<EdgeKey> {
    let edges = sorted_edges(g);
    let mut best: Option<Vec<EdgeKey>> = None;
    let mut current = Vec::new();
    fn go(
        g: &WeightedGraph,
        edges: &[EdgeKey],
        at: usize,
        required: Option<EdgeKey>,
        current: &mut Vec<EdgeKey>,
        best: &mut Option<Vec<EdgeKey>>,
    ) {
        let best_len = best.as_ref().map(|b| b.len() as isize).unwrap_or(-1);
        if (current.len() + edges.len() - at) as isize <= best_len {
            return;
        }
        if at == edges.len() {
            if required.map_or(true, |r| current.contains(&r)) {
                *best = Some(current.clone());
            }
            return;
        }
        let e = edges[at];
        if current.iter().all(|&f| !conflicts(g, e, f)) {
            current.push(e);
            go(g, edges, at + 1, required, current, best);
            current.pop();
        }
        if required != Some(e) {
            go(g, edges, at + 1, required, current, best);
        }
    }
    go(g, &edges, 0, required, &mut current, &mut best);
    best.unwrap_or_default()
}

/// Maximum induced matching of a forest using only `allowed` edges as matching
/// edges (all edges still count for adjacency).
fn forest_dp(g: &WeightedGraph, allowed: &dyn Fn(EdgeKey) -> bool) -> usize {
    const NEG: i64 = i64::MIN / 4;
    let n = g.vertex_count();
    let mut total = 0i64;
    let mut visited = vec![false; n];
    // unmatched / matched-to-parent / matched-to-child
    let mut un = vec![0i64; n];
    let mut up = vec![0i64; n];
    let mut down = vec![NEG; n];
    for root in 0..n {
        if visited[root] {
            continue;
        }
        let mut order = vec![root];
        let mut parent = vec![usize::MAX; 0];
        parent.resize(n, usize::MAX);
        visited[root] = true;
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for u in g.neighbors(v) {
                if !visited[u] {
                    visited[u] = true;
                    parent[u] = v;
                    order.push(u);
                }
            }
        }
        for &v in order.iter().rev() {
            let children: Vec<usize> = g.neighbors(v).filter(|&u| parent[u] == v).collect();
            let sum_un: i64 = children.iter().map(|&c| un[c]).sum();
            un[v] = children.iter().map(|&c| un[c].max(down[c])).sum();
            up[v] = sum_un;
            down[v] = children
                .iter()
                .filter(|&&c| allowed(EdgeKey::new(v, c)))
                .map(|&c| 1 + up[c] + sum_un - un[c])
                .max()
                .unwrap_or(NEG);
        }
        total += un[root].max(down[root]);
    }
    total as usize
}

/// Lexicographically smallest maximum induced matching of a forest, built
/// greedily on top of the dynamic program.
fn forest_witness(g: &WeightedGraph) -> Vec<EdgeKey> {
    let edges = sorted_edges(g);
    let rank: std::collections::HashMap<EdgeKey, usize> =
        edges.iter().enumerate().map(|(r, &e)| (e, r)).collect();
    let target = forest_dp(g, &|_| true);
    let mut chosen: Vec<EdgeKey> = Vec::new();
    let mut blocked: BTreeSet<usize> = BTreeSet::new();
    for (r, &e) in edges.iter().enumerate() {
        if chosen.len() == target {
            break;
        }
        if blocked.contains(&e.0) || blocked.contains(&e.1) {
            continue;
        }
        let mut block = blocked.clone();
        for v in [e.0, e.1] {
            block.insert(v);
            block.extend(g.neighbors(v));
        }
        // Remaining vertices keep their original labels in `rest` via names.
        let rest = g.remove_vertices(&block);
        let later = |f: EdgeKey| {
            let (a, b) = (rest.name(f.0), rest.name(f.1));
            let orig = g.edge_key(a, b).expect("edge of subgraph");
            rank[&orig] > r
        };
        if chosen.len() + 1 + forest_dp(&rest, &later) == target {
            chosen.push(e);
            blocked = block;
        }
    }
    chosen
}

fn maximum(g: &WeightedGraph) -> Vec<EdgeKey> {
    if g.edge_count() <= BRUTE_FORCE_EDGE_LIMIT || !g.is_forest() {
        brute_force(g, None)
    } else {
        forest_witness(g)
    }
}

/// `ν(G)`: maximum size of an induced matching. Weights are ignored.
pub fn induced_matching_number(g: &WeightedGraph) -> MatchingResult {
    to_result(g, maximum(g))
}

/// Just the number `ν(G)`, without building a witness.
pub fn nu(g: &WeightedGraph) -> usize {
    if g.edge_count() <= BRUTE_FORCE_EDGE_LIMIT || !g.is_forest() {
        brute_force(g, None).len()
    } else {
        forest_dp(g, &|_| true)
    }
}

/// Largest induced matching of `g` containing the edge `u v`, computed as
/// `ν(G \ N_G({u, v})) + 1`.
pub fn constrained_matching_number(g: &WeightedGraph, u: &str, v: &str) -> Result<MatchingResult, GraphError> {
    let e = g.edge_key(u, v)?;
    Ok(constrained_by_key(g, e))
}

pub(crate) fn constrained_by_key(g: &WeightedGraph, e: EdgeKey) -> MatchingResult {
    let closed = g.neighborhood(&[e.0, e.1]);
    let rest = g.remove_vertices(&closed);
    let mut names: Vec<(String, String)> = induced_matching_number(&rest).witness;
    let (a, b) = g.edge_names(e);
    names.push((a.to_string(), b.to_string()));
    names.sort();
    let result = MatchingResult {
        size: names.len(),
        witness: names,
    };
    debug_assert!(
        g.edge_count() > BRUTE_FORCE_EDGE_LIMIT || brute_force(g, Some(e)).len() == result.size,
        "neighbourhood reduction disagrees with exhaustive search"
    );
    result
}

/// `s_e(G)` as a number.
pub fn s_value(g: &WeightedGraph, e: EdgeKey) -> usize {
    let closed = g.neighborhood(&[e.0, e.1]);
    nu(&g.remove_vertices(&closed)) + 1
}
