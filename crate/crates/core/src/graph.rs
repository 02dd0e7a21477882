//! Finite simplicial defining graphs.
//!
//! A [`SimplicialGraph`] carries named vertices with dense indices. The index
//! order doubles as the fixed total vertex order used by the word normal form,
//! so two graphs whose vertex lists are permutations of each other define the
//! same group but different normal forms.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Dense vertex index into a [`SimplicialGraph`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VertexId(pub usize);

impl VertexId {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph has no vertices")]
    Empty,
    #[error("vertex names must be nonempty")]
    EmptyName,
    #[error("duplicate vertex name `{0}`")]
    DuplicateVertex(String),
    #[error("edge ({0}, {1}) references an unknown vertex")]
    UnknownEndpoint(String, String),
    #[error("edge ({0}, {0}) is a self-loop")]
    SelfLoop(String),
    #[error("edge ({0}, {1}) is listed more than once")]
    DuplicateEdge(String, String),
    #[error("graph is disconnected: `{0}` is unreachable from `{1}`")]
    Disconnected(String, String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("invalid graph family `{spec}`: {reason}")]
    BadFamily { spec: String, reason: String },
    #[error("vertex selection is empty")]
    EmptySelection,
    #[error("cannot read graph file {path}: {reason}")]
    Io { path: String, reason: String },
    #[error("malformed graph JSON: {0}")]
    Json(String),
}

/// A finite simplicial graph with named vertices.
#[derive(Clone)]
pub struct SimplicialGraph {
    names: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<Vec<bool>>,
    neighbors: Vec<Vec<VertexId>>,
}

impl SimplicialGraph {
    /// Builds a simplicial graph without checking connectivity.
    ///
    /// Rejects empty or duplicate names, self-loops, repeated edges and edges
    /// with unknown endpoints.
    pub fn from_edges<S: AsRef<str>>(
        names: &[S],
        edges: &[(S, S)],
    ) -> Result<Self, GraphError> {
        let mut index = HashMap::with_capacity(names.len());
        let mut owned = Vec::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            let n = n.as_ref();
            if n.is_empty() {
                return Err(GraphError::EmptyName);
            }
            if index.insert(n.to_string(), i).is_some() {
                return Err(GraphError::DuplicateVertex(n.to_string()));
            }
            owned.push(n.to_string());
        }
        let n = owned.len();
        let mut adj = vec![vec![false; n]; n];
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            let (Some(&i), Some(&j)) = (index.get(a), index.get(b)) else {
                return Err(GraphError::UnknownEndpoint(a.to_string(), b.to_string()));
            };
            if i == j {
                return Err(GraphError::SelfLoop(a.to_string()));
            }
            if adj[i][j] {
                return Err(GraphError::DuplicateEdge(a.to_string(), b.to_string()));
            }
            adj[i][j] = true;
            adj[j][i] = true;
        }
        let neighbors = adj
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(_, &e)| e)
                    .map(|(j, _)| VertexId(j))
                    .collect()
            })
            .collect();
        Ok(Self {
            names: owned,
            index,
            adj,
            neighbors,
        })
    }

    /// Builds a defining graph: nonempty, simplicial and connected.
    pub fn new<S: AsRef<str>>(names: &[S], edges: &[(S, S)]) -> Result<Self, GraphError> {
        let g = Self::from_edges(names, edges)?;
        g.require_connected()?;
        Ok(g)
    }

    fn require_connected(&self) -> Result<(), GraphError> {
        if self.is_empty() {
            return Err(GraphError::Empty);
        }
        let dist = self.distances_from(VertexId(0));
        if let Some(far) = dist.iter().position(Option::is_none) {
            return Err(GraphError::Disconnected(
                self.names[far].clone(),
                self.names[0].clone(),
            ));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.names.len()).map(VertexId)
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v.0]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex(&self, name: &str) -> Result<VertexId, GraphError> {
        self.index
            .get(name)
            .map(|&i| VertexId(i))
            .ok_or_else(|| GraphError::UnknownVertex(name.to_string()))
    }

    pub fn adjacent(&self, a: VertexId, b: VertexId) -> bool {
        self.adj[a.0][b.0]
    }

    /// Generators commute iff they are equal or adjacent.
    #[inline]
    pub fn commute(&self, a: VertexId, b: VertexId) -> bool {
        a == b || self.adj[a.0][b.0]
    }

    /// Membership in the closed neighbourhood of `center`.
    #[inline]
    pub fn in_star(&self, center: VertexId, v: VertexId) -> bool {
        self.commute(center, v)
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.neighbors[v.0]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.neighbors[v.0].len()
    }

    pub fn max_degree(&self) -> usize {
        self.neighbors.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges as index pairs `(a, b)` with `a < b`, in index order.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for a in self.vertices() {
            for &b in self.neighbors(a) {
                if a < b {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// BFS distances from `src`; `None` marks unreachable vertices.
    pub fn distances_from(&self, src: VertexId) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.len()];
        let mut queue = VecDeque::new();
        dist[src.0] = Some(0);
        queue.push_back(src);
        while let Some(x) = queue.pop_front() {
            let d = dist[x.0].unwrap();
            for &y in self.neighbors(x) {
                if dist[y.0].is_none() {
                    dist[y.0] = Some(d + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    pub fn distance(&self, a: VertexId, b: VertexId) -> Option<usize> {
        self.distances_from(a)[b.0]
    }

    pub fn is_connected(&self) -> bool {
        !self.is_empty() && self.distances_from(VertexId(0)).iter().all(Option::is_some)
    }

    /// Star and link of `v`.
    pub fn star_link(&self, v: VertexId) -> (BTreeSet<VertexId>, BTreeSet<VertexId>) {
        let link: BTreeSet<_> = self.neighbors(v).iter().copied().collect();
        let mut star = link.clone();
        star.insert(v);
        (star, link)
    }

    /// A vertex adjacent to every other vertex, if any.
    pub fn central_vertex(&self) -> Option<VertexId> {
        self.vertices()
            .find(|&v| self.len() > 1 && self.degree(v) == self.len() - 1)
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            vertices: self.names.clone(),
            edges: self
                .edges()
                .into_iter()
                .map(|(a, b)| [self.name(a).to_string(), self.name(b).to_string()])
                .collect(),
        }
    }

    pub fn from_json(json: &GraphJson) -> Result<Self, GraphError> {
        let edges: Vec<(&str, &str)> = json
            .edges
            .iter()
            .map(|[a, b]| (a.as_str(), b.as_str()))
            .collect();
        let names: Vec<&str> = json.vertices.iter().map(String::as_str).collect();
        Self::new(&names, &edges)
    }

    pub fn from_json_str(text: &str) -> Result<Self, GraphError> {
        let json: GraphJson =
            serde_json::from_str(text).map_err(|e| GraphError::Json(e.to_string()))?;
        Self::from_json(&json)
    }

    /// Identical vertex order and adjacency, so vertex indices are interchangeable.
    pub fn same_presentation(&self, other: &Self) -> bool {
        self.names == other.names && self.adj == other.adj
    }

    /// Induced subgraph on `keep`, in index order. Connectivity is not required.
    pub fn induced(&self, keep: &BTreeSet<VertexId>) -> SimplicialGraph {
        let names: Vec<&str> = keep.iter().map(|&v| self.name(v)).collect();
        let mut edges = Vec::new();
        for &a in keep {
            for &b in keep {
                if a < b && self.adjacent(a, b) {
                    edges.push((self.name(a), self.name(b)));
                }
            }
        }
        SimplicialGraph::from_edges(&names, &edges).expect("induced subgraph is simplicial")
    }
}

impl PartialEq for SimplicialGraph {
    /// Equality by vertex names and named edges, independent of index order.
    fn eq(&self, other: &Self) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let mine: BTreeSet<&str> = self.names.iter().map(String::as_str).collect();
        let theirs: BTreeSet<&str> = other.names.iter().map(String::as_str).collect();
        if mine != theirs {
            return false;
        }
        let named = |g: &SimplicialGraph| -> BTreeSet<(String, String)> {
            g.edges()
                .into_iter()
                .map(|(a, b)| {
                    let (x, y) = (g.name(a).to_string(), g.name(b).to_string());
                    if x < y {
                        (x, y)
                    } else {
                        (y, x)
                    }
                })
                .collect()
        };
        named(self) == named(other)
    }
}

impl Eq for SimplicialGraph {}

impl fmt::Debug for SimplicialGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self
            .edges()
            .into_iter()
            .map(|(a, b)| format!("{}-{}", self.name(a), self.name(b)))
            .collect();
        f.debug_struct("SimplicialGraph")
            .field("vertices", &self.names)
            .field("edges", &edges)
            .finish()
    }
}

/// On-disk graph format: `{"vertices": [...], "edges": [[a, b], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
}

/// Girth of a graph; forests have no cycles at all.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Girth {
    Finite(usize),
    Infinite,
}

impl Girth {
    pub fn at_least(self, bound: usize) -> bool {
        match self {
            Girth::Infinite => true,
            Girth::Finite(g) => g >= bound,
        }
    }
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphMetrics {
    pub girth: Girth,
    pub max_degree: usize,
    /// Largest finite distance between two vertices.
    pub diameter: usize,
    pub is_tree: bool,
    pub bipartite: bool,
}

/// Girth by per-vertex BFS, diameter by all-pairs BFS, bipartiteness by 2-colouring.
pub fn graph_metrics(g: &SimplicialGraph) -> GraphMetrics {
    let mut girth: Option<usize> = None;
    let mut diameter = 0;
    for root in g.vertices() {
        let mut dist = vec![usize::MAX; g.len()];
        let mut parent = vec![usize::MAX; g.len()];
        let mut queue = VecDeque::new();
        dist[root.0] = 0;
        queue.push_back(root.0);
        while let Some(x) = queue.pop_front() {
            diameter = diameter.max(dist[x]);
            for &VertexId(y) in g.neighbors(VertexId(x)) {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    parent[y] = x;
                    queue.push_back(y);
                } else if parent[x] != y {
                    let cycle = dist[x] + dist[y] + 1;
                    girth = Some(girth.map_or(cycle, |c| c.min(cycle)));
                }
            }
        }
    }
    let girth = girth.map_or(Girth::Infinite, Girth::Finite);
    let is_tree = g.is_connected() && g.edge_count() + 1 == g.len();
    GraphMetrics {
        girth,
        max_degree: g.max_degree(),
        diameter,
        is_tree,
        bipartite: two_colouring(g).is_some(),
    }
}

/// A proper 2-colouring, if one exists.
pub fn two_colouring(g: &SimplicialGraph) -> Option<Vec<bool>> {
    let mut colour: Vec<Option<bool>> = vec![None; g.len()];
    for start in g.vertices() {
        if colour[start.0].is_some() {
            continue;
        }
        colour[start.0] = Some(false);
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            let cx = colour[x.0].unwrap();
            for &y in g.neighbors(x) {
                match colour[y.0] {
                    None => {
                        colour[y.0] = Some(!cx);
                        queue.push_back(y);
                    }
                    Some(cy) if cy == cx => return None,
                    Some(_) => {}
                }
            }
        }
    }
    Some(colour.into_iter().map(Option::unwrap).collect())
}

/// Star and link of `v`, rejecting unknown names.
pub fn star_link(
    g: &SimplicialGraph,
    v: &str,
) -> Result<(BTreeSet<VertexId>, BTreeSet<VertexId>), GraphError> {
    Ok(g.star_link(g.vertex(v)?))
}

/// Induced subgraph of the complement of `g` on `subset`, with its connectivity.
pub fn complement_induced(
    g: &SimplicialGraph,
    subset: &BTreeSet<VertexId>,
) -> Result<(SimplicialGraph, bool), GraphError> {
    if subset.is_empty() {
        return Err(GraphError::EmptySelection);
    }
    let names: Vec<&str> = subset.iter().map(|&v| g.name(v)).collect();
    let mut edges = Vec::new();
    for &a in subset {
        for &b in subset {
            if a < b && !g.adjacent(a, b) {
                edges.push((g.name(a), g.name(b)));
            }
        }
    }
    let comp = SimplicialGraph::from_edges(&names, &edges)?;
    let connected = comp.is_connected();
    Ok((comp, connected))
}

/// Graph source: explicit lists or a named family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphSpec {
    Explicit(GraphJson),
    Path(usize),
    Cycle(usize),
    Star(usize),
    Gamma(usize),
}

impl FromStr for GraphSpec {
    type Err = GraphError;

    /// Parses family strings `path:4`, `cycle:7`, `star:3`, `gamma:4`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |reason: &str| GraphError::BadFamily {
            spec: s.to_string(),
            reason: reason.to_string(),
        };
        let (family, n) = s
            .split_once(':')
            .ok_or_else(|| bad("expected `family:n`"))?;
        let n: usize = n.trim().parse().map_err(|_| bad("size is not an integer"))?;
        match family.trim() {
            "path" => Ok(GraphSpec::Path(n)),
            "cycle" => Ok(GraphSpec::Cycle(n)),
            "star" => Ok(GraphSpec::Star(n)),
            "gamma" => Ok(GraphSpec::Gamma(n)),
            _ => Err(bad("unknown family (path, cycle, star, gamma)")),
        }
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphSpec::Explicit(j) => write!(f, "explicit({} vertices)", j.vertices.len()),
            GraphSpec::Path(n) => write!(f, "path:{n}"),
            GraphSpec::Cycle(n) => write!(f, "cycle:{n}"),
            GraphSpec::Star(n) => write!(f, "star:{n}"),
            GraphSpec::Gamma(n) => write!(f, "gamma:{n}"),
        }
    }
}

/// Builds a defining graph from an explicit list or a family.
///
/// Family vertex names: `path` uses `a, b, c, ...` (or `p1..pn` beyond 26
/// vertices), `cycle` uses `v_1..v_n` in cyclic order, `star` has centre `c`
/// and leaves `l1..ln`, and `gamma:k` has centres `u, v, t`, leaves
/// `u_i, v_i, t_i` and the midpoint `w` of the path `t_k - w - u_1`.
pub fn build_graph(spec: &GraphSpec) -> Result<SimplicialGraph, GraphError> {
    let bad = |reason: &str| GraphError::BadFamily {
        spec: spec.to_string(),
        reason: reason.to_string(),
    };
    let (names, edges): (Vec<String>, Vec<(String, String)>) = match *spec {
        GraphSpec::Explicit(ref json) => return SimplicialGraph::from_json(json),
        GraphSpec::Path(n) => {
            if n == 0 {
                return Err(bad("path needs at least one vertex"));
            }
            let names: Vec<String> = if n <= 26 {
                (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
            } else {
                (1..=n).map(|i| format!("p{i}")).collect()
            };
            let edges = names.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect();
            (names, edges)
        }
        GraphSpec::Cycle(n) => {
            if n < 3 {
                return Err(bad("cycle needs at least three vertices"));
            }
            let names: Vec<String> = (1..=n).map(|i| format!("v_{i}")).collect();
            let edges = (0..n)
                .map(|i| (names[i].clone(), names[(i + 1) % n].clone()))
                .collect();
            (names, edges)
        }
        GraphSpec::Star(n) => {
            if n == 0 {
                return Err(bad("star needs at least one leaf"));
            }
            let mut names = vec!["c".to_string()];
            names.extend((1..=n).map(|i| format!("l{i}")));
            let edges = (1..=n).map(|i| ("c".to_string(), format!("l{i}"))).collect();
            (names, edges)
        }
        GraphSpec::Gamma(k) => {
            if k < 2 {
                return Err(bad("gamma needs k >= 2"));
            }
            gamma_lists(k)
        }
    };
    let names_ref: Vec<&str> = names.iter().map(String::as_str).collect();
    let edges_ref: Vec<(&str, &str)> = edges.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    SimplicialGraph::new(&names_ref, &edges_ref)
}

fn gamma_lists(k: usize) -> (Vec<String>, Vec<(String, String)>) {
    let mut names: Vec<String> = vec!["u".into(), "v".into(), "t".into()];
    for c in ["u", "v", "t"] {
        names.extend((1..=k).map(|i| format!("{c}_{i}")));
    }
    names.push("w".into());
    let mut edges = Vec::new();
    for c in ["u", "v", "t"] {
        for i in 1..=k {
            edges.push((c.to_string(), format!("{c}_{i}")));
        }
    }
    for i in 1..=k {
        edges.push((format!("u_{i}"), format!("v_{i}")));
        edges.push((format!("v_{i}"), format!("t_{i}")));
    }
    for i in 1..k {
        edges.push((format!("t_{i}"), format!("u_{}", i + 1)));
    }
    edges.push((format!("t_{k}"), "w".into()));
    edges.push(("w".into(), "u_1".into()));
    (names, edges)
}

/// Loads a defining graph from a family string or a JSON file path.
pub fn load_graph(source: &str) -> Result<SimplicialGraph, GraphError> {
    if let Ok(spec) = source.parse::<GraphSpec>() {
        return build_graph(&spec);
    }
    let path = Path::new(source);
    let text = std::fs::read_to_string(path).map_err(|e| GraphError::Io {
        path: source.to_string(),
        reason: e.to_string(),
    })?;
    SimplicialGraph::from_json_str(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn named(g: &SimplicialGraph, set: &BTreeSet<VertexId>) -> Vec<String> {
        set.iter().map(|&v| g.name(v).to_string()).collect()
    }

    fn vs(g: &SimplicialGraph, names: &[&str]) -> BTreeSet<VertexId> {
        names.iter().map(|n| g.vertex(n).unwrap()).collect()
    }

    #[test]
    fn family_sizes() {
        let g2 = build_graph(&GraphSpec::Gamma(2)).unwrap();
        assert_eq!(g2.len(), 10);
        for c in ["u", "v", "t"] {
            assert_eq!(g2.degree(g2.vertex(c).unwrap()), 2);
        }
        let c7 = build_graph(&GraphSpec::Cycle(7)).unwrap();
        assert_eq!((c7.len(), c7.edge_count()), (7, 7));
        let p4 = build_graph(&GraphSpec::Path(4)).unwrap();
        assert_eq!(p4.names(), &["a", "b", "c", "d"]);
        assert_eq!(p4.edge_count(), 3);
    }

    #[test]
    fn metrics_of_families() {
        let m = graph_metrics(&build_graph(&GraphSpec::Cycle(7)).unwrap());
        assert_eq!((m.girth, m.max_degree, m.diameter), (Girth::Finite(7), 2, 3));
        assert!(!m.bipartite);
        let m = graph_metrics(&build_graph(&GraphSpec::Path(4)).unwrap());
        assert_eq!(m.girth, Girth::Infinite);
        assert!(m.is_tree && m.bipartite);
        assert_eq!(m.diameter, 3);
        // u - u_1 - v_1 - t_1 - u_2 - u closes a pentagon.
        let m = graph_metrics(&build_graph(&GraphSpec::Gamma(4)).unwrap());
        assert_eq!((m.girth, m.max_degree), (Girth::Finite(5), 4));
        let m = graph_metrics(&build_graph(&GraphSpec::Cycle(4)).unwrap());
        assert_eq!(m.girth, Girth::Finite(4));
    }

    #[test]
    fn stars_and_links() {
        let c7 = build_graph(&GraphSpec::Cycle(7)).unwrap();
        let (star, _) = star_link(&c7, "v_1").unwrap();
        assert_eq!(named(&c7, &star), ["v_1", "v_2", "v_7"]);
        let p4 = build_graph(&GraphSpec::Path(4)).unwrap();
        assert_eq!(named(&p4, &star_link(&p4, "a").unwrap().1), ["b"]);
        for k in 2..6 {
            let g = build_graph(&GraphSpec::Gamma(k)).unwrap();
            let link = named(&g, &star_link(&g, "u").unwrap().1);
            let want: Vec<String> = (1..=k).map(|i| format!("u_{i}")).collect();
            assert_eq!(link, want);
        }
        assert!(matches!(star_link(&p4, "z"), Err(GraphError::UnknownVertex(_))));
    }

    #[test]
    fn complement_examples() {
        let p4 = build_graph(&GraphSpec::Path(4)).unwrap();
        let (c, conn) = complement_induced(&p4, &vs(&p4, &["a", "d"])).unwrap();
        assert_eq!(c.edge_count(), 1);
        assert!(conn);
        let c4 = build_graph(&GraphSpec::Cycle(4)).unwrap();
        let (c, conn) = complement_induced(&c4, &vs(&c4, &["v_1", "v_3"])).unwrap();
        assert_eq!(c.edge_count(), 1);
        assert!(conn);
        let c7 = build_graph(&GraphSpec::Cycle(7)).unwrap();
        let (c, conn) = complement_induced(&c7, &vs(&c7, &["v_1", "v_2"])).unwrap();
        assert_eq!(c.edge_count(), 0);
        assert!(!conn);
        assert_eq!(
            complement_induced(&c7, &BTreeSet::new()).unwrap_err(),
            GraphError::EmptySelection
        );
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            SimplicialGraph::new(&["a", "b", "c"], &[("a", "b")]),
            Err(GraphError::Disconnected(..))
        ));
        assert_eq!(
            SimplicialGraph::new(&["a", "b"], &[("a", "a")]).unwrap_err(),
            GraphError::SelfLoop("a".into())
        );
        assert_eq!(
            SimplicialGraph::new(&["a", "b"], &[("a", "b"), ("b", "a")]).unwrap_err(),
            GraphError::DuplicateEdge("b".into(), "a".into())
        );
        assert!(build_graph(&GraphSpec::Gamma(1)).is_err());
        assert!("gamma".parse::<GraphSpec>().is_err());
        assert!("torus:3".parse::<GraphSpec>().is_err());
    }

    #[test]
    fn equality_ignores_vertex_order() {
        let a = SimplicialGraph::new(&["x", "y", "z"], &[("x", "y"), ("y", "z")]).unwrap();
        let b = SimplicialGraph::new(&["z", "y", "x"], &[("z", "y"), ("x", "y")]).unwrap();
        assert_eq!(a, b);
        assert!(!a.same_presentation(&b));
    }

    #[test]
    fn json_roundtrip() {
        let g = build_graph(&GraphSpec::Gamma(3)).unwrap();
        let text = serde_json::to_string(&g.to_json()).unwrap();
        let back = SimplicialGraph::from_json_str(&text).unwrap();
        assert!(g.same_presentation(&back));
    }
}
