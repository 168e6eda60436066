//! Edge-weighted simple graphs and the tree machinery built on them: the
//! integral-closure criterion, the heavy spine of a tree, distances to the
//! spine and the caterpillar test.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge {0}-{1}")]
    UnknownEdge(String, String),
    #[error("self-loop at `{0}`")]
    SelfLoop(String),
    #[error("parallel edge {0}-{1}")]
    ParallelEdge(String, String),
    #[error("edge {0}-{1} has weight 0; weights must be at least 1")]
    ZeroWeight(String, String),
    #[error("graph is not a tree")]
    NotATree,
    #[error("all edge weights are 1")]
    TrivialWeights,
    #[error("weighted graph is not integrally closed")]
    NotIntegrallyClosed,
}

/// An undirected edge between two vertex indices, stored with `0 < 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeKey(pub usize, pub usize);

impl EdgeKey {
    pub fn new(a: usize, b: usize) -> Self {
        if a < b {
            EdgeKey(a, b)
        } else {
            EdgeKey(b, a)
        }
    }

    pub fn touches(&self, v: usize) -> bool {
        self.0 == v || self.1 == v
    }
}

/// Finite simple graph with a positive integer weight on every edge.
///
/// Vertices are opaque string identifiers; they keep their insertion order,
/// which is also the variable order of the edge ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    names: Vec<String>,
    index: HashMap<String, usize>,
    weights: BTreeMap<EdgeKey, u32>,
    adj: Vec<BTreeSet<usize>>,
}

impl WeightedGraph {
    pub fn new<V, E, S>(vertices: V, edges: E) -> Result<Self, GraphError>
    where
        V: IntoIterator<Item = S>,
        S: Into<String>,
        E: IntoIterator<Item = (S, S, u32)>,
    {
        let mut g = WeightedGraph {
            names: Vec::new(),
            index: HashMap::new(),
            weights: BTreeMap::new(),
            adj: Vec::new(),
        };
        for v in vertices {
            let v = v.into();
            if g.index.contains_key(&v) {
                return Err(GraphError::DuplicateVertex(v));
            }
            g.index.insert(v.clone(), g.names.len());
            g.names.push(v);
            g.adj.push(BTreeSet::new());
        }
        for (u, v, w) in edges {
            let (u, v) = (u.into(), v.into());
            let a = g.vertex_index(&u)?;
            let b = g.vertex_index(&v)?;
            if a == b {
                return Err(GraphError::SelfLoop(u));
            }
            if w == 0 {
                return Err(GraphError::ZeroWeight(u, v));
            }
            let key = EdgeKey::new(a, b);
            if g.weights.insert(key, w).is_some() {
                return Err(GraphError::ParallelEdge(u, v));
            }
            g.adj[a].insert(b);
            g.adj[b].insert(a);
        }
        Ok(g)
    }

    /// Path `x1 - x2 - ... - xn` with the given edge weights (`n = weights.len() + 1`).
    pub fn path(weights: &[u32]) -> Result<Self, GraphError> {
        let n = weights.len() + 1;
        let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        let edges = weights
            .iter()
            .enumerate()
            .map(|(j, &w)| (names[j].clone(), names[j + 1].clone(), w));
        WeightedGraph::new(names.clone(), edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.weights.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn vertex_index(&self, name: &str) -> Result<usize, GraphError> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| GraphError::UnknownVertex(name.to_string()))
    }

    pub fn edge_key(&self, u: &str, v: &str) -> Result<EdgeKey, GraphError> {
        let key = EdgeKey::new(self.vertex_index(u)?, self.vertex_index(v)?);
        if self.weights.contains_key(&key) {
            Ok(key)
        } else {
            Err(GraphError::UnknownEdge(u.to_string(), v.to_string()))
        }
    }

    /// Edges in index order together with their weights.
    pub fn edges(&self) -> impl Iterator<Item = (EdgeKey, u32)> + '_ {
        self.weights.iter().map(|(&e, &w)| (e, w))
    }

    pub fn weight(&self, e: EdgeKey) -> Option<u32> {
        self.weights.get(&e).copied()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a != b && self.weights.contains_key(&EdgeKey::new(a, b))
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edge_names(&self, e: EdgeKey) -> (&str, &str) {
        let (a, b) = (self.name(e.0), self.name(e.1));
        if a <= b {
            (a, b)
        } else {
            (b, a)
        }
    }

    pub fn is_trivially_weighted(&self) -> bool {
        self.weights.values().all(|&w| w == 1)
    }

    pub fn non_trivial_edges(&self) -> Vec<EdgeKey> {
        self.edges().filter(|&(_, w)| w >= 2).map(|(e, _)| e).collect()
    }

    pub fn max_weight(&self) -> u32 {
        self.weights.values().copied().max().unwrap_or(0)
    }

    pub fn is_connected(&self) -> bool {
        if self.names.is_empty() {
            return true;
        }
        self.bfs_distances(&[0]).iter().all(Option::is_some)
    }

    pub fn is_tree(&self) -> bool {
        !self.names.is_empty() && self.edge_count() + 1 == self.vertex_count() && self.is_connected()
    }

    pub fn is_forest(&self) -> bool {
        let comps = self.components().len();
        self.edge_count() + comps == self.vertex_count()
    }

    /// Connected components as sorted vertex-index lists.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.names.len()];
        let mut out = Vec::new();
        for s in 0..self.names.len() {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut head = 0;
            while head < comp.len() {
                let v = comp[head];
                head += 1;
                for u in self.neighbors(v) {
                    if !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Multi-source BFS distances; `None` for unreachable vertices.
    pub fn bfs_distances(&self, sources: &[usize]) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.names.len()];
        let mut queue = VecDeque::new();
        for &s in sources {
            if dist[s].is_none() {
                dist[s] = Some(0);
                queue.push_back(s);
            }
        }
        while let Some(v) = queue.pop_front() {
            let dv = dist[v].unwrap_or(0);
            for u in self.neighbors(v) {
                if dist[u].is_none() {
                    dist[u] = Some(dv + 1);
                    queue.push_back(u);
                }
            }
        }
        dist
    }

    /// Induced subgraph on the given vertex indices (kept in original order).
    pub fn induced(&self, keep: &[usize]) -> WeightedGraph {
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let inside: BTreeSet<usize> = keep.iter().copied().collect();
        let names: Vec<String> = keep.iter().map(|&v| self.names[v].clone()).collect();
        let edges: Vec<(String, String, u32)> = self
            .edges()
            .filter(|(e, _)| inside.contains(&e.0) && inside.contains(&e.1))
            .map(|(e, w)| (self.names[e.0].clone(), self.names[e.1].clone(), w))
            .collect();
        WeightedGraph::new(names, edges).expect("induced subgraph of a valid graph")
    }

    /// Removes the listed vertices (taking the induced subgraph on the rest),
    /// then the listed edges.
    pub fn delete(&self, vertices: &[&str], edges: &[(&str, &str)]) -> Result<WeightedGraph, GraphError> {
        let mut drop = BTreeSet::new();
        for v in vertices {
            drop.insert(self.vertex_index(v)?);
        }
        let mut drop_edges = BTreeSet::new();
        for (u, v) in edges {
            drop_edges.insert(self.edge_key(u, v)?);
        }
        let names: Vec<String> = (0..self.names.len())
            .filter(|v| !drop.contains(v))
            .map(|v| self.names[v].clone())
            .collect();
        let kept: Vec<(String, String, u32)> = self
            .edges()
            .filter(|(e, _)| !drop.contains(&e.0) && !drop.contains(&e.1) && !drop_edges.contains(e))
            .map(|(e, w)| (self.names[e.0].clone(), self.names[e.1].clone(), w))
            .collect();
        Ok(WeightedGraph::new(names, kept).expect("subgraph of a valid graph"))
    }

    /// `G \ W`: induced subgraph on the complement of a set of vertex indices.
    pub fn remove_vertices(&self, drop: &BTreeSet<usize>) -> WeightedGraph {
        let keep: Vec<usize> = (0..self.names.len()).filter(|v| !drop.contains(v)).collect();
        self.induced(&keep)
    }

    /// `G \ e` for an edge given by its key.
    pub fn remove_edge(&self, e: EdgeKey) -> WeightedGraph {
        let mut g = self.clone();
        g.weights.remove(&e);
        g.adj[e.0].remove(&e.1);
        g.adj[e.1].remove(&e.0);
        g
    }

    /// `N_G(W)`: union of the open neighbourhoods of the vertices in `W`.
    pub fn neighborhood(&self, set: &[usize]) -> BTreeSet<usize> {
        set.iter().flat_map(|&v| self.neighbors(v)).collect()
    }

    /// Vertex sequence of the unique path between two vertices of a tree.
    pub fn tree_path(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        let mut parent = vec![usize::MAX; self.names.len()];
        parent[from] = from;
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            if v == to {
                break;
            }
            for u in self.neighbors(v) {
                if parent[u] == usize::MAX {
                    parent[u] = v;
                    queue.push_back(u);
                }
            }
        }
        if parent[to] == usize::MAX {
            return None;
        }
        let mut path = vec![to];
        let mut cur = to;
        while cur != from {
            cur = parent[cur];
            path.push(cur);
        }
        path.reverse();
        Some(path)
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson::from(self)
    }
}

impl fmt::Display for WeightedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .edges()
            .map(|(e, w)| {
                let (a, b) = (self.name(e.0), self.name(e.1));
                if w == 1 {
                    format!("{a}-{b}")
                } else {
                    format!("{a}-{b}:{w}")
                }
            })
            .collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// Wire form: `{"vertices": [...], "edges": [{"u":..,"v":..,"w":..}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub u: String,
    pub v: String,
    #[serde(default = "unit_weight")]
    pub w: u32,
}

fn unit_weight() -> u32 {
    1
}

impl From<&WeightedGraph> for GraphJson {
    fn from(g: &WeightedGraph) -> Self {
        GraphJson {
            vertices: g.names.clone(),
            edges: g
                .edges()
                .map(|(e, w)| EdgeJson {
                    u: g.names[e.0].clone(),
                    v: g.names[e.1].clone(),
                    w,
                })
                .collect(),
        }
    }
}

impl TryFrom<GraphJson> for WeightedGraph {
    type Error = GraphError;

    fn try_from(j: GraphJson) -> Result<Self, GraphError> {
        WeightedGraph::new(j.vertices, j.edges.into_iter().map(|e| (e.u, e.v, e.w)))
    }
}

impl Serialize for WeightedGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GraphJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeightedGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = GraphJson::deserialize(d)?;
        WeightedGraph::try_from(j).map_err(serde::de::Error::custom)
    }
}

/// Combinatorial integral-closure test for edge ideals of weighted graphs.
///
/// A non-trivially weighted graph is integrally closed iff it has no induced
/// weighted subgraph of these shapes with all edges non-trivial: a path with
/// two edges, two vertex-disjoint edges with nothing between them, a triangle.
pub fn is_integrally_closed(g: &WeightedGraph) -> bool {
    let heavy = g.non_trivial_edges();
    for (a, &e) in heavy.iter().enumerate() {
        for &f in &heavy[a + 1..] {
            let shared = [e.0, e.1].into_iter().find(|&v| f.touches(v));
            match shared {
                Some(mid) => {
                    let x = if e.0 == mid { e.1 } else { e.0 };
                    let y = if f.0 == mid { f.1 } else { f.0 };
                    match g.weight(EdgeKey::new(x, y)) {
                        // induced path x - mid - y
                        None => return false,
                        // triangle; forbidden only if the closing edge is heavy too
                        Some(w) if w >= 2 => return false,
                        Some(_) => {}
                    }
                }
                None => {
                    let linked = [e.0, e.1]
                        .iter()
                        .any(|&p| [f.0, f.1].iter().any(|&q| g.has_edge(p, q)));
                    if !linked {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// The distinguished path of a non-trivial integrally closed tree: the longest
/// path through every non-trivial edge, oriented so that its heaviest edge
/// `e_i = x_i x_{i+1}` comes first (and any second heavy edge sits at `i + 2`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpineData {
    /// Vertex names `x_1 .. x_k`.
    pub path: Vec<String>,
    /// 1-based index `i` of the heaviest spine edge.
    pub heavy_index: usize,
    pub omega_i: u32,
    /// Weight of `e_{i+2}` when that edge lies on the spine.
    pub omega_i_plus_2: Option<u32>,
    pub d: usize,
    pub per_vertex_d: BTreeMap<String, usize>,
}

impl SpineData {
    /// Number of spine vertices.
    pub fn k(&self) -> usize {
        self.path.len()
    }

    /// Weights of `e_1 .. e_{k-1}`.
    pub fn edge_weights(&self, g: &WeightedGraph) -> Vec<u32> {
        self.path
            .windows(2)
            .map(|w| {
                let e = g.edge_key(&w[0], &w[1]).expect("spine edge");
                g.weight(e).unwrap_or(1)
            })
            .collect()
    }

    /// Edge `e_j = x_j x_{j+1}` (1-based), if it exists on the spine.
    pub fn spine_edge(&self, g: &WeightedGraph, j: usize) -> Option<EdgeKey> {
        if j == 0 || j + 1 > self.path.len() {
            return None;
        }
        g.edge_key(&self.path[j - 1], &self.path[j]).ok()
    }
}

/// Picks the spine of a non-trivial integrally closed tree.
///
/// Among all longest paths through every non-trivial edge, and among the
/// orientations that put a second heavy edge at `i + 2`, the one with the
/// smallest heavy index wins; remaining ties go to the lexicographically
/// smallest vertex-name sequence.
pub fn non_trivial_spine(t: &WeightedGraph) -> Result<SpineData, GraphError> {
    if !t.is_tree() {
        return Err(GraphError::NotATree);
    }
    let heavy = t.non_trivial_edges();
    if heavy.is_empty() {
        return Err(GraphError::TrivialWeights);
    }
    if !is_integrally_closed(t) {
        return Err(GraphError::NotIntegrallyClosed);
    }

    let n = t.vertex_count();
    let mut longest: Vec<Vec<usize>> = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let p = match t.tree_path(a, b) {
                Some(p) => p,
                None => continue,
            };
            let on_path: BTreeSet<EdgeKey> = p.windows(2).map(|w| EdgeKey::new(w[0], w[1])).collect();
            if !heavy.iter().all(|e| on_path.contains(e)) {
                continue;
            }
            match longest.first().map(Vec::len) {
                Some(len) if p.len() < len => {}
                Some(len) if p.len() == len => longest.push(p),
                _ => longest = vec![p],
            }
        }
    }

    let mut best: Option<(usize, Vec<String>, u32, Option<u32>)> = None;
    for p in &longest {
        for path in [p.clone(), p.iter().rev().copied().collect()] {
            let weights: Vec<u32> = path
                .windows(2)
                .map(|w| t.weight(EdgeKey::new(w[0], w[1])).unwrap_or(1))
                .collect();
            let top = weights.iter().copied().max().unwrap_or(1);
            let heavy_positions: Vec<usize> = (0..weights.len()).filter(|&j| weights[j] >= 2).collect();
            // 0-based index of e_i
            let i0 = match heavy_positions.as_slice() {
                [only] => *only,
                [first, second] => {
                    if weights[*first] == top && second - first == 2 {
                        *first
                    } else {
                        continue;
                    }
                }
                _ => continue,
            };
            let names: Vec<String> = path.iter().map(|&v| t.name(v).to_string()).collect();
            let omega_next = weights.get(i0 + 2).copied();
            let key = (i0 + 1, names, top, omega_next);
            let better = match &best {
                None => true,
                Some(cur) => (key.0, &key.1) < (cur.0, &cur.1),
            };
            if better {
                best = Some(key);
            }
        }
    }
    let (heavy_index, path, omega_i, omega_i_plus_2) = best.ok_or(GraphError::NotIntegrallyClosed)?;
    let mut spine = SpineData {
        path,
        heavy_index,
        omega_i,
        omega_i_plus_2,
        d: 0,
        per_vertex_d: BTreeMap::new(),
    };
    let profile = distance_profile(t, &spine);
    spine.d = profile.d;
    spine.per_vertex_d = profile.per_vertex;
    Ok(spine)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceProfile {
    pub d: usize,
    pub per_vertex: BTreeMap<String, usize>,
}

/// Distance of every vertex to the nearest spine vertex, and the maximum.
pub fn distance_profile(t: &WeightedGraph, spine: &SpineData) -> DistanceProfile {
    let sources: Vec<usize> = spine.path.iter().filter_map(|v| t.vertex_index(v).ok()).collect();
    let dist = t.bfs_distances(&sources);
    let per_vertex: BTreeMap<String, usize> = dist
        .iter()
        .enumerate()
        .filter_map(|(v, d)| d.map(|d| (t.name(v).to_string(), d)))
        .collect();
    let d = per_vertex.values().copied().max().unwrap_or(0);
    DistanceProfile { d, per_vertex }
}

/// True iff stripping the leaves of the tree leaves nothing or a simple path.
pub fn is_caterpillar(t: &WeightedGraph) -> bool {
    let inner: Vec<usize> = (0..t.vertex_count()).filter(|&v| t.degree(v) != 1).collect();
    if inner.is_empty() {
        return true;
    }
    let core = t.induced(&inner);
    core.is_connected()
        && core.edge_count() + 1 == core.vertex_count()
        && (0..core.vertex_count()).all(|v| core.degree(v) <= 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn single_heavy_tree() -> WeightedGraph {
        let names: Vec<String> = (1..=9).map(|i| format!("x{i}")).collect();
        let e = |a: usize, b: usize, w: u32| (format!("x{a}"), format!("x{b}"), w);
        WeightedGraph::new(
            names,
            vec![e(1, 2, 1), e(2, 3, 2), e(3, 4, 1), e(4, 5, 1), e(3, 6, 1), e(6, 7, 1), e(3, 8, 1), e(8, 9, 1)],
        )
        .unwrap()
    }

    fn graph(n: usize, edges: &[(usize, usize, u32)]) -> WeightedGraph {
        let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        WeightedGraph::new(
            names,
            edges.iter().map(|&(a, b, w)| (format!("x{a}"), format!("x{b}"), w)),
        )
        .unwrap()
    }

    #[test]
    fn construction_rejects_malformed_input() {
        assert_eq!(
            WeightedGraph::new(["a", "a"], Vec::<(&str, &str, u32)>::new()).unwrap_err(),
            GraphError::DuplicateVertex("a".into())
        );
        assert_eq!(
            WeightedGraph::new(["a"], [("a", "a", 1)]).unwrap_err(),
            GraphError::SelfLoop("a".into())
        );
        assert!(matches!(
            WeightedGraph::new(["a", "b"], [("a", "b", 1), ("b", "a", 2)]),
            Err(GraphError::ParallelEdge(..))
        ));
        assert!(matches!(
            WeightedGraph::new(["a", "b"], [("a", "b", 0)]),
            Err(GraphError::ZeroWeight(..))
        ));
        assert!(matches!(
            WeightedGraph::new(["a"], [("a", "c", 1)]),
            Err(GraphError::UnknownVertex(_))
        ));
    }

    #[test]
    fn json_weights_default_to_one() {
        let g: WeightedGraph =
            serde_json::from_str(r#"{"vertices":["a","b","c"],"edges":[{"u":"a","v":"b"},{"u":"b","v":"c","w":3}]}"#)
                .unwrap();
        let ab = g.edge_key("a", "b").unwrap();
        let bc = g.edge_key("c", "b").unwrap();
        assert_eq!(g.weight(ab), Some(1));
        assert_eq!(g.weight(bc), Some(3));
        let back: WeightedGraph = serde_json::from_value(serde_json::to_value(&g).unwrap()).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn integral_closure_examples() {
        assert!(is_integrally_closed(&graph(5, &[(1, 2, 1), (2, 3, 1), (2, 4, 1), (4, 5, 1)])));
        assert!(!is_integrally_closed(&WeightedGraph::path(&[2, 3]).unwrap()));
        assert!(!is_integrally_closed(&WeightedGraph::path(&[2, 1, 1, 2]).unwrap()));
        assert!(is_integrally_closed(&WeightedGraph::path(&[2, 1, 2]).unwrap()));
        // heavy triangle vs. triangle with one light edge
        assert!(!is_integrally_closed(&graph(3, &[(1, 2, 2), (2, 3, 2), (1, 3, 2)])));
        assert!(is_integrally_closed(&graph(3, &[(1, 2, 2), (2, 3, 2), (1, 3, 1)])));
    }

    #[test]
    fn spine_of_single_heavy_tree() {
        let s = non_trivial_spine(&single_heavy_tree()).unwrap();
        assert_eq!(s.path, ["x1", "x2", "x3", "x4", "x5"]);
        assert_eq!((s.k(), s.heavy_index, s.omega_i), (5, 2, 2));
        assert_eq!(s.omega_i_plus_2, Some(1));
        assert_eq!(s.d, 2);
    }

    #[test]
    fn spine_of_figure_one_caterpillar() {
        // x1 - x2 - x3 - x4 with whiskers y1 at x2 and u1 at x3
        let g = WeightedGraph::new(
            ["x1", "x2", "x3", "x4", "y1", "u1"],
            [("x1", "x2", 1), ("x2", "x3", 2), ("x3", "x4", 1), ("x2", "y1", 1), ("x3", "u1", 1)],
        )
        .unwrap();
        let s = non_trivial_spine(&g).unwrap();
        // four longest candidates all have i = 2; "u1" sorts first
        assert_eq!(s.path, ["u1", "x3", "x2", "x1"]);
        assert_eq!(s.heavy_index, 2);
        assert_eq!(s.d, 1);
        assert!(is_caterpillar(&g));
    }

    #[test]
    fn spine_of_single_edge() {
        let g = WeightedGraph::path(&[3]).unwrap();
        let s = non_trivial_spine(&g).unwrap();
        assert_eq!(s.path.len(), 2);
        assert_eq!((s.heavy_index, s.omega_i, s.omega_i_plus_2, s.d), (1, 3, None, 0));
    }

    #[test]
    fn spine_orientation_keeps_second_heavy_edge_ahead() {
        // weight 3 on e_4 and weight 2 on e_2: only the reversed orientation puts
        // the lighter heavy edge at i + 2.
        let g = WeightedGraph::path(&[1, 2, 1, 3, 1, 1]).unwrap();
        let s = non_trivial_spine(&g).unwrap();
        assert_eq!(s.path, ["x7", "x6", "x5", "x4", "x3", "x2", "x1"]);
        assert_eq!((s.heavy_index, s.omega_i, s.omega_i_plus_2), (3, 3, Some(2)));

        let g = WeightedGraph::path(&[1, 1, 1, 3, 1, 2]).unwrap();
        let s = non_trivial_spine(&g).unwrap();
        assert_eq!((s.heavy_index, s.omega_i, s.omega_i_plus_2), (4, 3, Some(2)));
        assert_eq!(s.path[0], "x1");
    }

    #[test]
    fn spine_single_heavy_edge_prefers_short_side() {
        let g = WeightedGraph::path(&[1, 1, 1, 2]).unwrap();
        let s = non_trivial_spine(&g).unwrap();
        assert_eq!(s.heavy_index, 1);
        assert_eq!(s.path[0], "x5");
        assert_eq!(s.omega_i_plus_2, Some(1));
    }

    #[test]
    fn spine_errors() {
        let trivial = WeightedGraph::path(&[1, 1]).unwrap();
        assert_eq!(non_trivial_spine(&trivial).unwrap_err(), GraphError::TrivialWeights);
        let bad = WeightedGraph::path(&[2, 2]).unwrap();
        assert_eq!(non_trivial_spine(&bad).unwrap_err(), GraphError::NotIntegrallyClosed);
        let cycle = graph(3, &[(1, 2, 2), (2, 3, 1), (1, 3, 1)]);
        assert_eq!(non_trivial_spine(&cycle).unwrap_err(), GraphError::NotATree);
    }

    #[test]
    fn distance_profile_on_spine_only_tree() {
        let g = WeightedGraph::path(&[1, 2, 1]).unwrap();
        let s = non_trivial_spine(&g).unwrap();
        let p = distance_profile(&g, &s);
        assert_eq!(p.d, 0);
        assert!(p.per_vertex.values().all(|&d| d == 0));
    }

    #[test]
    fn caterpillar_examples() {
        let star = graph(5, &[(1, 2, 1), (1, 3, 1), (1, 4, 1), (1, 5, 1)]);
        assert!(is_caterpillar(&star));
        let spider = graph(7, &[(1, 2, 1), (2, 3, 1), (1, 4, 1), (4, 5, 1), (1, 6, 1), (6, 7, 1)]);
        assert!(!is_caterpillar(&spider));
        assert!(is_caterpillar(&WeightedGraph::path(&[1]).unwrap()));
        assert!(is_caterpillar(&graph(1, &[])));
    }

    #[test]
    fn delete_examples() {
        let g = single_heavy_tree();
        assert_eq!(g.delete(&[], &[]).unwrap(), g);

        // A = {x2, x3}; N_G(A) = {x1, x2, x3, x4, x6, x8}
        let a = [g.vertex_index("x2").unwrap(), g.vertex_index("x3").unwrap()];
        let nb = g.neighborhood(&a);
        let rest = g.remove_vertices(&nb);
        assert_eq!(rest.vertices(), ["x5", "x7", "x9"]);
        assert_eq!(rest.edge_count(), 0);

        let p = WeightedGraph::path(&[1, 1, 1, 1]).unwrap();
        let cut = p.delete(&[], &[("x2", "x3")]).unwrap();
        let comps: Vec<Vec<&str>> = cut
            .components()
            .iter()
            .map(|c| c.iter().map(|&v| cut.name(v)).collect())
            .collect();
        assert_eq!(comps, vec![vec!["x1", "x2"], vec!["x3", "x4", "x5"]]);

        assert!(matches!(g.delete(&["zz"], &[]), Err(GraphError::UnknownVertex(_))));
        assert!(matches!(g.delete(&[], &[("x1", "x5")]), Err(GraphError::UnknownEdge(..))));
    }
}
