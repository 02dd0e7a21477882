use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::{ext_adjacent_fast, ExtError, ExtVertex};
use crate::graph::SimplicialGraph;

/// Which builder produced a subgraph, with its parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "builder", rename_all = "snake_case")]
pub enum Provenance {
    Chain { word: String },
    Lambda { element: String, decompositions: usize },
    Axial { word: String, m: usize },
    Ball { base: String, radius: usize },
}

/// Which distances inside a subgraph equal extension-graph distances.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Exactness {
    /// Every pair of vertices.
    All,
    /// Pairs `(u, v^g)` with `u` in the first copy and `v^g` in the last,
    /// when the defining graph has girth at least 6.
    ChainEndpoints,
    /// Subgraph distances only bound extension-graph distances from above.
    UpperBound,
}

/// A finite induced subgraph of the extension graph.
#[derive(Clone)]
pub struct ExtSubgraph {
    graph: Arc<SimplicialGraph>,
    vertices: Vec<ExtVertex>,
    index: HashMap<ExtVertex, usize>,
    layers: Vec<i64>,
    adj: Vec<Vec<usize>>,
    provenance: Provenance,
    exactness: Exactness,
}

/// Collects deduplicated vertices with the first layer each was seen in.
pub(crate) struct Collector {
    graph: Arc<SimplicialGraph>,
    vertices: Vec<ExtVertex>,
    index: HashMap<ExtVertex, usize>,
    layers: Vec<i64>,
    limit: Option<usize>,
}

impl Collector {
    pub(crate) fn new(graph: &Arc<SimplicialGraph>, limit: Option<usize>) -> Self {
        Self {
            graph: graph.clone(),
            vertices: Vec::new(),
            index: HashMap::new(),
            layers: Vec::new(),
            limit,
        }
    }

    pub(crate) fn add(&mut self, v: ExtVertex, layer: i64) -> Result<usize, ExtError> {
        if let Some(&i) = self.index.get(&v) {
            return Ok(i);
        }
        if let Some(limit) = self.limit {
            if self.vertices.len() >= limit {
                return Err(ExtError::SizeGuard { limit });
            }
        }
        let i = self.vertices.len();
        self.index.insert(v.clone(), i);
        self.vertices.push(v);
        self.layers.push(layer);
        Ok(i)
    }

    /// Adds every vertex of the copy of the defining graph conjugated by `conj`.
    pub(crate) fn add_copy(&mut self, conj: &crate::word::Element, layer: i64) -> Result<(), ExtError> {
        for w in self.graph.clone().vertices() {
            self.add(ExtVertex::new(w, conj), layer)?;
        }
        Ok(())
    }

    pub(crate) fn finish(self, provenance: Provenance, exactness: Exactness) -> ExtSubgraph {
        let adj = all_edges(&self.graph, &self.vertices);
        ExtSubgraph {
            graph: self.graph,
            vertices: self.vertices,
            index: self.index,
            layers: self.layers,
            adj,
            provenance,
            exactness,
        }
    }
}

/// Every genuine edge among `vertices`, tested only between adjacent bases.
fn all_edges(graph: &SimplicialGraph, vertices: &[ExtVertex]) -> Vec<Vec<usize>> {
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); graph.len()];
    for (i, v) in vertices.iter().enumerate() {
        buckets[v.base().index()].push(i);
    }
    let forward: Vec<Vec<usize>> = (0..vertices.len())
        .into_par_iter()
        .map(|i| {
            let x = &vertices[i];
            let mut out = Vec::new();
            for &nb in graph.neighbors(x.base()) {
                for &j in &buckets[nb.index()] {
                    if j > i && ext_adjacent_fast(x, &vertices[j]) {
                        out.push(j);
                    }
                }
            }
            out
        })
        .collect();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); vertices.len()];
    for (i, js) in forward.into_iter().enumerate() {
        for j in js {
            adj[i].push(j);
            adj[j].push(i);
        }
    }
    for row in &mut adj {
        row.sort_unstable();
    }
    adj
}

impl ExtSubgraph {
    pub fn graph(&self) -> &Arc<SimplicialGraph> {
        &self.graph
    }

    pub fn vertices(&self) -> &[ExtVertex] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn index_of(&self, v: &ExtVertex) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn contains(&self, v: &ExtVertex) -> bool {
        self.index.contains_key(v)
    }

    /// First layer (copy index, or axial position) in which the vertex appeared.
    pub fn layer(&self, i: usize) -> i64 {
        self.layers[i]
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (i, row) in self.adj.iter().enumerate() {
            out.extend(row.iter().filter(|&&j| j > i).map(|&j| (i, j)));
        }
        out
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn exactness(&self) -> Exactness {
        self.exactness
    }

    /// True when every subgraph distance is an extension-graph distance.
    pub fn distance_exact(&self) -> bool {
        self.exactness == Exactness::All
    }

    pub fn distances_from(&self, src: usize) -> Vec<Option<usize>> {
        self.distances_avoiding(src, &[])
    }

    /// BFS distances from `src` in the subgraph with `removed` deleted.
    pub fn distances_avoiding(&self, src: usize, removed: &[bool]) -> Vec<Option<usize>> {
        let gone = |i: usize| removed.get(i).copied().unwrap_or(false);
        let mut dist = vec![None; self.len()];
        if gone(src) {
            return dist;
        }
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(x) = queue.pop_front() {
            let d = dist[x].unwrap();
            for &y in &self.adj[x] {
                if dist[y].is_none() && !gone(y) {
                    dist[y] = Some(d + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    pub fn distance(&self, x: &ExtVertex, y: &ExtVertex) -> Option<usize> {
        let (i, j) = (self.index_of(x)?, self.index_of(y)?);
        self.distances_from(i)[j]
    }

    pub fn is_connected(&self) -> bool {
        self.is_empty() || self.distances_from(0).iter().all(Option::is_some)
    }

    /// Sorted vertex labels and label pairs, for byte-stable output.
    pub fn labelled_edges(&self) -> (Vec<String>, Vec<(String, String)>) {
        let labels: Vec<String> = self.vertices.iter().map(ExtVertex::label).collect();
        let mut names = labels.clone();
        names.sort();
        let mut edges: Vec<(String, String)> = self
            .edges()
            .into_iter()
            .map(|(i, j)| {
                let (a, b) = (labels[i].clone(), labels[j].clone());
                if a <= b {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect();
        edges.sort();
        (names, edges)
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Repr<'a> {
            provenance: &'a Provenance,
            exactness: Exactness,
            distance_exact: bool,
            vertices: &'a [ExtVertex],
            layers: &'a [i64],
            edges: Vec<(usize, usize)>,
        }
        serde_json::to_value(Repr {
            provenance: &self.provenance,
            exactness: self.exactness,
            distance_exact: self.distance_exact(),
            vertices: &self.vertices,
            layers: &self.layers,
            edges: self.edges(),
        })
        .expect("subgraph serialises")
    }
}

impl std::fmt::Debug for ExtSubgraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ExtSubgraph")
            .field("provenance", &self.provenance)
            .field("vertices", &self.vertices.len())
            .field("edges", &self.edge_count())
            .finish()
    }
}
