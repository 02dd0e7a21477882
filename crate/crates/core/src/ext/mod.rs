//! Vertices, adjacency and finite subgraphs of the extension graph.
//!
//! A vertex `v^g` is stored by its base `v` and a canonical conjugator: the
//! shortest element of the coset `C(v)g`, where `C(v)` is generated by the
//! star of `v`. Two vertices are equal exactly when their keys agree.

mod build;
mod subgraph;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{GraphError, SimplicialGraph, VertexId};
use crate::word::{dependent, Element, Syllable, WordError};

pub use build::{
    build_axial, build_ball, build_chain, build_lambda, ext_distance, DistanceMode,
    DEFAULT_LAMBDA_CAP,
};
pub use subgraph::{Exactness, ExtSubgraph, Provenance};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("decomposition count exceeds cap after {partial} decompositions{}",
        if *.girth_ok { "; retry with mode=chain" } else { "" })]
    LambdaOverflow { partial: usize, girth_ok: bool },
    #[error("subgraph would exceed {limit} vertices")]
    SizeGuard { limit: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("malformed vertex `{0}`; expected `name` or `name ^ (word)`")]
    BadTarget(String),
}

/// A vertex `base^conj` of the extension graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExtVertex {
    base: VertexId,
    conj: Element,
}

impl ExtVertex {
    pub fn new(base: VertexId, conj: &Element) -> Self {
        let kept = strip_left(conj.graph(), conj.nf(), base);
        Self {
            base,
            conj: Element::from_reduced(conj.graph(), kept),
        }
    }

    /// A vertex of the base copy of the defining graph.
    pub fn plain(graph: &Arc<SimplicialGraph>, base: VertexId) -> Self {
        Self {
            base,
            conj: Element::identity(graph),
        }
    }

    /// Parses `name` or `name ^ (word)`.
    pub fn parse(text: &str, graph: &Arc<SimplicialGraph>) -> Result<Self, ExtError> {
        let bad = || ExtError::BadTarget(text.to_string());
        let text = text.trim();
        let Some((name, rest)) = text.split_once('^') else {
            return Ok(Self::plain(graph, graph.vertex(text)?));
        };
        let rest = rest.trim();
        let word = rest
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let name = name.trim();
        if name.is_empty() {
            return Err(bad());
        }
        let base = graph.vertex(name)?;
        Ok(Self::new(base, &Element::parse(word, graph)?))
    }

    pub fn base(&self) -> VertexId {
        self.base
    }

    /// Canonical conjugator.
    pub fn conj(&self) -> &Element {
        &self.conj
    }

    pub fn graph(&self) -> &Arc<SimplicialGraph> {
        self.conj.graph()
    }

    /// `(v^g)^h = v^{gh}`.
    pub fn act(&self, h: &Element) -> Self {
        Self::new(self.base, &self.conj.mul(h))
    }

    /// The group element `conj⁻¹ · base · conj`.
    pub fn as_element(&self) -> Element {
        Element::generator(self.graph(), self.base).conjugate(&self.conj).expect("same graph")
    }

    pub fn label(&self) -> String {
        self.to_string()
    }
}

impl PartialOrd for ExtVertex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtVertex {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.base, &self.conj).cmp(&(other.base, &other.conj))
    }
}

impl fmt::Display for ExtVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = self.graph().name(self.base);
        if self.conj.is_identity() {
            f.write_str(name)
        } else {
            write!(f, "{name}^({})", self.conj)
        }
    }
}

impl fmt::Debug for ExtVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExtVertex({self})")
    }
}

impl Serialize for ExtVertex {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            base: &'a str,
            conjugator: String,
        }
        Repr {
            base: self.graph().name(self.base),
            conjugator: self.conj.to_string(),
        }
        .serialize(serializer)
    }
}

/// Deletes, left to right, every syllable in `st(v)` that commutes with all
/// syllables kept before it.
pub(crate) fn strip_left(graph: &SimplicialGraph, nf: &[Syllable], v: VertexId) -> Vec<Syllable> {
    let mut kept: Vec<Syllable> = Vec::with_capacity(nf.len());
    for &s in nf {
        let movable = graph.in_star(v, s.vertex)
            && kept.iter().all(|k| !dependent(graph, k.vertex, s.vertex));
        if !movable {
            kept.push(s);
        }
    }
    kept
}

/// Coset equality: same base and `conj_y · conj_x⁻¹` supported in `st(base)`.
pub fn ext_vertex_equal(x: &ExtVertex, y: &ExtVertex) -> bool {
    if x.base != y.base {
        return false;
    }
    let k = y.conj.mul(&x.conj.inverse());
    k.support().iter().all(|&s| x.graph().in_star(x.base, s))
}

/// Adjacency by the literal commutator test.
pub fn ext_adjacent(x: &ExtVertex, y: &ExtVertex) -> bool {
    if ext_vertex_equal(x, y) {
        return false;
    }
    let (a, b) = (x.as_element(), y.as_element());
    a.mul(&b).mul(&a.inverse()).mul(&b.inverse()).is_identity()
}

/// Adjacency by coset arithmetic; agrees with [`ext_adjacent`].
///
/// `u^h ~ v^g` iff `u ~ v` in the defining graph and, after stripping
/// `k = g h⁻¹` on the left modulo `st(v)`, every remaining syllable lies in
/// `st(u)`.
pub fn ext_adjacent_fast(x: &ExtVertex, y: &ExtVertex) -> bool {
    let graph = x.graph();
    if !graph.adjacent(x.base, y.base) {
        return false;
    }
    let k = y.conj.mul(&x.conj.inverse());
    strip_left(graph, k.nf(), y.base)
        .iter()
        .all(|s| graph.in_star(x.base, s.vertex))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, GraphSpec};

    fn g(spec: GraphSpec) -> Arc<SimplicialGraph> {
        Arc::new(build_graph(&spec).unwrap())
    }

    fn xv(text: &str, graph: &Arc<SimplicialGraph>) -> ExtVertex {
        ExtVertex::parse(text, graph).unwrap()
    }

    #[test]
    fn equality_examples() {
        let p4 = g(GraphSpec::Path(4));
        assert!(ext_vertex_equal(&xv("b^(a)", &p4), &xv("b", &p4)));
        assert_eq!(xv("b^(a)", &p4), xv("b", &p4));
        assert!(!ext_vertex_equal(&xv("c^(a)", &p4), &xv("c", &p4)));
        assert_ne!(xv("c^(a)", &p4), xv("c", &p4));
        let x = xv("c^(a d)", &p4);
        let y = x.act(&Element::identity(&p4));
        let hy = ExtVertex::new(
            x.base(),
            &Element::parse("b^2 d^-1 c", &p4).unwrap().mul(x.conj()),
        );
        assert!(ext_vertex_equal(&y, &hy));
        assert_eq!(y, hy);
    }

    #[test]
    fn adjacency_examples() {
        let p4 = g(GraphSpec::Path(4));
        assert!(ext_adjacent(&xv("b", &p4), &xv("c^(a)", &p4)));
        assert!(ext_adjacent_fast(&xv("b", &p4), &xv("c^(a)", &p4)));
        assert!(!ext_adjacent(&xv("a", &p4), &xv("d", &p4)));
        let c7 = g(GraphSpec::Cycle(7));
        assert!(!ext_adjacent(&xv("v_1", &c7), &xv("v_1", &c7)));
        assert!(!ext_adjacent_fast(&xv("v_1", &c7), &xv("v_1", &c7)));
    }

    #[test]
    fn parse_targets() {
        let g3 = g(GraphSpec::Gamma(3));
        let x = xv("u_1 ^ (t v u)", &g3);
        assert_eq!(x.to_string(), "u_1^(t v u)");
        assert_eq!(xv("u_1^(t v u)", &g3), x);
        assert!(ExtVertex::parse("u_1 ^ t", &g3).is_err());
        assert!(ExtVertex::parse("^ (t)", &g3).is_err());
        assert!(ExtVertex::parse("q", &g3).is_err());
    }

    #[test]
    fn canonical_key_drops_left_star_syllables() {
        let g2 = g(GraphSpec::Gamma(2));
        let x = xv("u_1 ^ (u v^2 u_1 t)", &g2);
        assert_eq!(x.conj().to_string(), "v^2 u_1 t");
        let y = xv("u_1 ^ (u v^2 t)", &g2);
        assert_eq!(y.conj().to_string(), "v^2 t");
    }
}
