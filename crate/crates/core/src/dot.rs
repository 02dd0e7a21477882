//! Deterministic DOT rendering.

use std::fmt::Write as _;
use std::path::Path;

use crate::ext::ExtSubgraph;
use crate::graph::SimplicialGraph;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn render(name: &str, mut nodes: Vec<String>, mut edges: Vec<(String, String)>) -> String {
    nodes.sort();
    for e in &mut edges {
        if e.0 > e.1 {
            std::mem::swap(&mut e.0, &mut e.1);
        }
    }
    edges.sort();
    let mut out = format!("graph {} {{\n", quote(name));
    for n in &nodes {
        writeln!(out, "  {};", quote(n)).unwrap();
    }
    for (a, b) in &edges {
        writeln!(out, "  {} -- {};", quote(a), quote(b)).unwrap();
    }
    out.push_str("}\n");
    out
}

pub fn graph_to_dot(g: &SimplicialGraph) -> String {
    let edges = g
        .edges()
        .into_iter()
        .map(|(a, b)| (g.name(a).to_string(), g.name(b).to_string()))
        .collect();
    render("gamma", g.names().to_vec(), edges)
}

/// Vertices are labelled `v^(conjugator)`.
pub fn subgraph_to_dot(s: &ExtSubgraph) -> String {
    let (nodes, edges) = s.labelled_edges();
    render("extension", nodes, edges)
}

pub fn write_dot(text: &str, path: &Path) -> std::io::Result<()> {
    std::fs::write(path, text)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::ext::build_chain;
    use crate::graph::{build_graph, GraphSpec};
    use crate::word::{Element, SyllableSeq};

    fn count(text: &str, pat: &str) -> usize {
        text.lines().filter(|l| l.contains(pat)).count()
    }

    #[test]
    fn path_dot() {
        let dot = graph_to_dot(&build_graph(&GraphSpec::Path(4)).unwrap());
        assert_eq!(count(&dot, " -- "), 3);
        assert_eq!(dot.lines().count() - 2 - 3, 4);
        assert!(dot.starts_with("graph \"gamma\" {\n  \"a\";"));
    }

    #[test]
    fn gamma_dot_has_ten_nodes() {
        let dot = graph_to_dot(&build_graph(&GraphSpec::Gamma(2)).unwrap());
        assert_eq!(dot.lines().count() - 2 - count(&dot, " -- "), 10);
    }

    #[test]
    fn chain_dot_matches_builder() {
        let p4 = Arc::new(build_graph(&GraphSpec::Path(4)).unwrap());
        let e = Element::parse("d a", &p4).unwrap();
        let chain = build_chain(&SyllableSeq::from_element(&e));
        let dot = subgraph_to_dot(&chain);
        assert_eq!(dot.lines().count() - 2 - count(&dot, " -- "), chain.len());
        assert_eq!(count(&dot, " -- "), chain.edge_count());
        assert!(dot.contains("\"d^(a)\""));
        assert_eq!(dot, subgraph_to_dot(&build_chain(&SyllableSeq::from_element(&e))));
    }
}
