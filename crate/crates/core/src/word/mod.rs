//! Elements of the right-angled Artin group on a defining graph.
//!
//! Every [`Element`] stores its canonical normal form: a reduced syllable
//! sequence, written left to right, that is lexicographically least under the
//! graph's vertex order among all commutation-equivalent reduced sequences.
//! Equal elements therefore have identical normal forms.
//!
//! Conjugation acts on the right: `x.conjugate(&h)` is `h⁻¹ x h`.

mod decomp;
mod reduce;

use std::cmp::Ordering;
use std::collections::{BTreeSet, BinaryHeap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::graph::{GraphError, SimplicialGraph, VertexId};

pub use decomp::{
    enumerate_syllable_decompositions, linearizations, pivot_points, Decompositions,
    Linearizations, SyllableSeq,
};
pub use reduce::{
    classify, classify_support, conjugacy_key, cyclic_syllable_reduce, is_star_word, star_length, Classification,
    EllipticWitness, Kind, LoxodromicCertificate,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("malformed token `{0}`")]
    BadToken(String),
    #[error("zero exponent in token `{0}`")]
    ZeroExponent(String),
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("operands live over different graphs")]
    MixedGraphs,
    #[error("operation needs a nonidentity element")]
    Identity,
    #[error("cap must be positive")]
    ZeroCap,
}

/// A nonzero power of a single vertex generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syllable {
    pub vertex: VertexId,
    pub exp: i64,
}

impl Syllable {
    pub fn new(vertex: VertexId, exp: i64) -> Self {
        assert!(exp != 0, "syllable exponent must be nonzero");
        Self { vertex, exp }
    }

    pub fn inverse(self) -> Self {
        Self {
            vertex: self.vertex,
            exp: -self.exp,
        }
    }
}

/// A group element in canonical normal form.
#[derive(Clone)]
pub struct Element {
    graph: Arc<SimplicialGraph>,
    nf: Vec<Syllable>,
}

impl Element {
    pub fn identity(graph: &Arc<SimplicialGraph>) -> Self {
        Self {
            graph: graph.clone(),
            nf: Vec::new(),
        }
    }

    pub fn generator(graph: &Arc<SimplicialGraph>, v: VertexId) -> Self {
        Self::syllable(graph, Syllable::new(v, 1))
    }

    pub fn syllable(graph: &Arc<SimplicialGraph>, s: Syllable) -> Self {
        Self {
            graph: graph.clone(),
            nf: vec![s],
        }
    }

    /// Product of the syllables in order, reduced and normalised.
    pub fn from_syllables<I>(graph: &Arc<SimplicialGraph>, syllables: I) -> Result<Self, WordError>
    where
        I: IntoIterator<Item = Syllable>,
    {
        let mut reduced = Vec::new();
        for s in syllables {
            push_syllable(graph, &mut reduced, s)?;
        }
        Ok(Self::from_reduced(graph, reduced))
    }

    /// Wraps a sequence already known to be reduced.
    pub(crate) fn from_reduced(graph: &Arc<SimplicialGraph>, reduced: Vec<Syllable>) -> Self {
        let nf = canonical_order(graph, &reduced);
        Self {
            graph: graph.clone(),
            nf,
        }
    }

    /// Parses whitespace-separated tokens `name` or `name^k`.
    ///
    /// The empty string and `1` denote the identity.
    pub fn parse(text: &str, graph: &Arc<SimplicialGraph>) -> Result<Self, WordError> {
        let text = text.trim();
        if text.is_empty() || text == "1" {
            return Ok(Self::identity(graph));
        }
        let mut syllables = Vec::new();
        for token in text.split_whitespace() {
            let (name, exp) = match token.split_once('^') {
                None => (token, 1),
                Some((name, exp)) => {
                    let exp: i64 = exp
                        .parse()
                        .map_err(|_| WordError::BadToken(token.to_string()))?;
                    if exp == 0 {
                        return Err(WordError::ZeroExponent(token.to_string()));
                    }
                    (name, exp)
                }
            };
            if name.is_empty() {
                return Err(WordError::BadToken(token.to_string()));
            }
            syllables.push(Syllable::new(graph.vertex(name)?, exp));
        }
        Self::from_syllables(graph, syllables)
    }

    pub fn graph(&self) -> &Arc<SimplicialGraph> {
        &self.graph
    }

    /// The canonical normal form, leftmost syllable first.
    pub fn nf(&self) -> &[Syllable] {
        &self.nf
    }

    /// Syllable length.
    pub fn len(&self) -> usize {
        self.nf.len()
    }

    pub fn is_identity(&self) -> bool {
        self.nf.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.nf.is_empty()
    }

    /// Word length over the vertex generators.
    pub fn word_length(&self) -> u64 {
        self.nf.iter().map(|s| s.exp.unsigned_abs()).sum()
    }

    pub fn support(&self) -> BTreeSet<VertexId> {
        self.nf.iter().map(|s| s.vertex).collect()
    }

    pub fn same_graph(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.graph, &other.graph) || self.graph.same_presentation(&other.graph)
    }

    fn check_graph(&self, other: &Self) -> Result<(), WordError> {
        if self.same_graph(other) {
            Ok(())
        } else {
            Err(WordError::MixedGraphs)
        }
    }

    pub fn inverse(&self) -> Self {
        let rev: Vec<Syllable> = self.nf.iter().rev().map(|s| s.inverse()).collect();
        Self::from_reduced(&self.graph, rev)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, WordError> {
        self.check_graph(other)?;
        let mut reduced = self.nf.clone();
        for &s in &other.nf {
            push_syllable(&self.graph, &mut reduced, s)?;
        }
        Ok(Self::from_reduced(&self.graph, reduced))
    }

    /// Product `self · other`.
    ///
    /// # Panics
    /// On mixed graphs or exponent overflow; see [`Element::checked_mul`].
    pub fn mul(&self, other: &Self) -> Self {
        self.checked_mul(other).expect("element product")
    }

    pub fn pow(&self, n: i64) -> Result<Self, WordError> {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut n = n.unsigned_abs();
        let mut acc = Self::identity(&self.graph);
        let mut sq = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.checked_mul(&sq)?;
            }
            n >>= 1;
            if n > 0 {
                sq = sq.checked_mul(&sq)?;
            }
        }
        Ok(acc)
    }

    /// `h⁻¹ · self · h`.
    pub fn conjugate(&self, h: &Self) -> Result<Self, WordError> {
        h.inverse().checked_mul(self)?.checked_mul(h)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("element serialises")
    }
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.nf == other.nf && self.same_graph(other)
    }
}

impl Eq for Element {}

impl Hash for Element {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.nf.hash(state);
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Element {
    fn cmp(&self, other: &Self) -> Ordering {
        self.nf.cmp(&other.nf)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_syllables(f, &self.graph, &self.nf)
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({self})")
    }
}

impl Serialize for Element {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry<'a> {
            v: &'a str,
            e: i64,
        }
        let mut seq = serializer.serialize_seq(Some(self.nf.len()))?;
        for s in &self.nf {
            seq.serialize_element(&Entry {
                v: self.graph.name(s.vertex),
                e: s.exp,
            })?;
        }
        seq.end()
    }
}

pub(crate) fn write_syllables(
    f: &mut impl fmt::Write,
    graph: &SimplicialGraph,
    syllables: &[Syllable],
) -> fmt::Result {
    if syllables.is_empty() {
        return f.write_str("1");
    }
    for (i, s) in syllables.iter().enumerate() {
        if i > 0 {
            f.write_char(' ')?;
        }
        f.write_str(graph.name(s.vertex))?;
        if s.exp != 1 {
            write!(f, "^{}", s.exp)?;
        }
    }
    Ok(())
}

pub fn format_syllables(graph: &SimplicialGraph, syllables: &[Syllable]) -> String {
    let mut out = String::new();
    write_syllables(&mut out, graph, syllables).expect("write to string");
    out
}

/// Appends `s` to a reduced sequence, merging with the nearest same-vertex
/// syllable reachable through commuting syllables.
pub(crate) fn push_syllable(
    graph: &SimplicialGraph,
    reduced: &mut Vec<Syllable>,
    s: Syllable,
) -> Result<(), WordError> {
    for j in (0..reduced.len()).rev() {
        let t = reduced[j];
        if t.vertex == s.vertex {
            let exp = t.exp.checked_add(s.exp).ok_or(WordError::ExponentOverflow)?;
            if exp == 0 {
                reduced.remove(j);
            } else {
                reduced[j].exp = exp;
            }
            return Ok(());
        }
        if !graph.adjacent(t.vertex, s.vertex) {
            break;
        }
    }
    reduced.push(s);
    Ok(())
}

/// Dependence in the trace order: same vertex or non-adjacent vertices.
#[inline]
pub(crate) fn dependent(graph: &SimplicialGraph, a: VertexId, b: VertexId) -> bool {
    !graph.adjacent(a, b)
}

/// Lex-least linearisation of a reduced sequence.
pub(crate) fn canonical_order(graph: &SimplicialGraph, reduced: &[Syllable]) -> Vec<Syllable> {
    let n = reduced.len();
    if n <= 1 {
        return reduced.to_vec();
    }
    let mut indegree = vec![0usize; n];
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..n {
        for j in i + 1..n {
            if dependent(graph, reduced[i].vertex, reduced[j].vertex) {
                succ[i].push(j);
                indegree[j] += 1;
            }
        }
    }
    let mut heap: BinaryHeap<std::cmp::Reverse<(VertexId, usize)>> = (0..n)
        .filter(|&i| indegree[i] == 0)
        .map(|i| std::cmp::Reverse((reduced[i].vertex, i)))
        .collect();
    let mut out = Vec::with_capacity(n);
    while let Some(std::cmp::Reverse((_, i))) = heap.pop() {
        out.push(reduced[i]);
        for &j in &succ[i] {
            indegree[j] -= 1;
            if indegree[j] == 0 {
                heap.push(std::cmp::Reverse((reduced[j].vertex, j)));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, GraphSpec};

    fn g(spec: GraphSpec) -> Arc<SimplicialGraph> {
        Arc::new(build_graph(&spec).unwrap())
    }

    fn el(text: &str, graph: &Arc<SimplicialGraph>) -> Element {
        Element::parse(text, graph).unwrap()
    }

    #[test]
    fn parse_examples() {
        let p4 = g(GraphSpec::Path(4));
        assert_eq!(el("a b a^-1", &p4).to_string(), "b");
        assert_eq!(el("b b c b^-1", &p4).to_string(), "b c");
        let g2 = g(GraphSpec::Gamma(2));
        let tvu = el("t v u", &g2);
        assert_eq!(tvu.len(), 3);
        assert_eq!(tvu.to_string(), "t v u");
        assert_eq!(el("1", &p4), Element::identity(&p4));
    }

    #[test]
    fn parse_errors() {
        let p4 = g(GraphSpec::Path(4));
        assert!(matches!(
            Element::parse("a z", &p4),
            Err(WordError::Graph(GraphError::UnknownVertex(_)))
        ));
        assert!(matches!(Element::parse("a^0", &p4), Err(WordError::ZeroExponent(_))));
        assert!(matches!(Element::parse("a^x", &p4), Err(WordError::BadToken(_))));
        assert!(matches!(Element::parse("^2", &p4), Err(WordError::BadToken(_))));
        assert!(matches!(
            Element::parse("a^9223372036854775807 a", &p4),
            Err(WordError::ExponentOverflow)
        ));
    }

    #[test]
    fn arithmetic_examples() {
        let p4 = g(GraphSpec::Path(4));
        assert!(el("d a", &p4).pow(0).unwrap().is_identity());
        assert!(el("a", &p4).mul(&el("a^-1", &p4)).is_identity());
        let conj = el("a c a", &p4).conjugate(&el("a^-1", &p4)).unwrap();
        assert_eq!(conj, el("a^2 c", &p4));
        assert_eq!(el("d a", &p4).pow(-2).unwrap(), el("a^-1 d^-1 a^-1 d^-1", &p4));
    }

    #[test]
    fn canonical_form_is_order_independent() {
        let c7 = g(GraphSpec::Cycle(7));
        assert_eq!(el("v_2 v_1", &c7).nf(), el("v_1 v_2", &c7).nf());
        assert_eq!(el("v_2 v_1", &c7).to_string(), "v_1 v_2");
        assert_eq!(el("v_7 v_1 v_2", &c7), el("v_1 v_7 v_2", &c7));
        assert_ne!(el("v_3 v_1", &c7), el("v_1 v_3", &c7));
    }

    #[test]
    fn mixed_graphs_rejected() {
        let a = el("a", &g(GraphSpec::Path(4)));
        let b = el("a", &g(GraphSpec::Path(5)));
        assert_eq!(a.checked_mul(&b).unwrap_err(), WordError::MixedGraphs);
    }

    #[test]
    fn json_shape() {
        let p4 = g(GraphSpec::Path(4));
        assert_eq!(
            serde_json::to_string(&el("d c^-2", &p4)).unwrap(),
            r#"[{"v":"c","e":-2},{"v":"d","e":1}]"#
        );
    }
}
