use std::fmt;
use std::sync::Arc;

use super::{dependent, format_syllables, Element, Syllable, WordError};
use crate::ext::ExtVertex;
use crate::graph::SimplicialGraph;

/// One syllable decomposition `s_n … s_1`, stored left to right.
#[derive(Clone)]
pub struct SyllableSeq {
    graph: Arc<SimplicialGraph>,
    syllables: Vec<Syllable>,
}

impl SyllableSeq {
    /// Wraps a syllable sequence without checking that it is reduced.
    pub fn new(graph: &Arc<SimplicialGraph>, syllables: Vec<Syllable>) -> Self {
        Self {
            graph: graph.clone(),
            syllables,
        }
    }

    /// The normal form of `g` read as a decomposition.
    pub fn from_element(g: &Element) -> Self {
        Self::new(g.graph(), g.nf().to_vec())
    }

    pub fn graph(&self) -> &Arc<SimplicialGraph> {
        &self.graph
    }

    /// Left to right, so index 0 holds `s_n`.
    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    /// `s_i` for `1 ≤ i ≤ n`.
    pub fn s(&self, i: usize) -> Syllable {
        self.syllables[self.syllables.len() - i]
    }

    pub fn element(&self) -> Element {
        Element::from_syllables(&self.graph, self.syllables.iter().copied())
            .expect("decomposition exponents are in range")
    }

    /// `s_i … s_1`.
    pub fn suffix(&self, i: usize) -> Element {
        let n = self.syllables.len();
        Element::from_syllables(&self.graph, self.syllables[n - i..].iter().copied())
            .expect("decomposition exponents are in range")
    }

    /// True when the sequence has no more syllables than its element needs.
    pub fn is_reduced(&self) -> bool {
        self.element().len() == self.len()
    }

    /// `(s_n … s_1)^m` as a sequence of `m·n` syllables.
    pub fn repeat(&self, m: usize) -> Self {
        Self::new(&self.graph, self.syllables.repeat(m))
    }

    /// Cyclic rotation moving the syllable at left-to-right position `pos` to
    /// the right end. The result represents a conjugate of the original.
    pub fn rotate_to_end(&self, pos: usize) -> Self {
        let mut s = self.syllables.clone();
        s.rotate_left(pos + 1);
        Self::new(&self.graph, s)
    }

    pub fn permuted(&self, perm: &[usize]) -> Self {
        Self::new(&self.graph, perm.iter().map(|&i| self.syllables[i]).collect())
    }
}

impl PartialEq for SyllableSeq {
    fn eq(&self, other: &Self) -> bool {
        self.syllables == other.syllables
    }
}

impl Eq for SyllableSeq {}

impl fmt::Display for SyllableSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_syllables(&self.graph, &self.syllables))
    }
}

impl fmt::Debug for SyllableSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SyllableSeq({self})")
    }
}

/// Index permutations of a syllable sequence that respect its trace order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Linearizations {
    /// `perms[k][p]` is the original index placed at position `p`.
    pub perms: Vec<Vec<usize>>,
    pub overflow: bool,
}

/// All orderings of `syllables` in which every dependent pair keeps its
/// relative order, in lexicographic order of index sequences, stopping at `cap`.
pub fn linearizations(graph: &SimplicialGraph, syllables: &[Syllable], cap: usize) -> Linearizations {
    let n = syllables.len();
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..n {
        for j in i + 1..n {
            if dependent(graph, syllables[i].vertex, syllables[j].vertex) {
                preds[j].push(i);
            }
        }
    }
    let mut state = Backtrack {
        preds: &preds,
        placed: vec![false; n],
        current: Vec::with_capacity(n),
        out: Vec::new(),
        cap,
        overflow: false,
    };
    state.run();
    Linearizations {
        perms: state.out,
        overflow: state.overflow,
    }
}

struct Backtrack<'a> {
    preds: &'a [Vec<usize>],
    placed: Vec<bool>,
    current: Vec<usize>,
    out: Vec<Vec<usize>>,
    cap: usize,
    overflow: bool,
}

impl Backtrack<'_> {
    fn run(&mut self) {
        if self.overflow {
            return;
        }
        let n = self.placed.len();
        if self.current.len() == n {
            if self.out.len() == self.cap {
                self.overflow = true;
            } else {
                self.out.push(self.current.clone());
            }
            return;
        }
        for i in 0..n {
            if self.placed[i] || !self.preds[i].iter().all(|&p| self.placed[p]) {
                continue;
            }
            self.placed[i] = true;
            self.current.push(i);
            self.run();
            self.current.pop();
            self.placed[i] = false;
            if self.overflow {
                return;
            }
        }
    }
}

/// Syllable decompositions of `g`, possibly truncated.
#[derive(Debug, Clone)]
pub struct Decompositions {
    pub seqs: Vec<SyllableSeq>,
    pub overflow: bool,
}

/// Every linearisation of the trace of `g`, truncated at `cap`.
pub fn enumerate_syllable_decompositions(
    g: &Element,
    cap: usize,
) -> Result<Decompositions, WordError> {
    if cap == 0 {
        return Err(WordError::ZeroCap);
    }
    if g.is_identity() {
        return Err(WordError::Identity);
    }
    let lin = linearizations(g.graph(), g.nf(), cap);
    let base = SyllableSeq::from_element(g);
    Ok(Decompositions {
        seqs: lin.perms.iter().map(|p| base.permuted(p)).collect(),
        overflow: lin.overflow,
    })
}

/// Pivot points `z_i = v_i^{s_i … s_1}` for `i = 1..n`, in that order.
pub fn pivot_points(s: &SyllableSeq) -> Vec<ExtVertex> {
    let mut prefix = Element::identity(s.graph());
    let mut out = Vec::with_capacity(s.len());
    for i in 1..=s.len() {
        let si = s.s(i);
        prefix = Element::syllable(s.graph(), si).mul(&prefix);
        out.push(ExtVertex::new(si.vertex, &prefix));
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

    fn count(text: &str, graph: &Arc<SimplicialGraph>) -> usize {
        let e = Element::parse(text, graph).unwrap();
        enumerate_syllable_decompositions(&e, 100).unwrap().seqs.len()
    }

    #[test]
    fn decomposition_counts() {
        let c7 = g(GraphSpec::Cycle(7));
        assert_eq!(count("v_1 v_4", &c7), 1);
        assert_eq!(count("v_2 v_1 v_7", &c7), 3);
        assert_eq!(count("v_1 v_2", &c7), 2);
    }

    #[test]
    fn decompositions_represent_the_element() {
        let c7 = g(GraphSpec::Cycle(7));
        let e = Element::parse("v_2 v_1 v_7 v_4^3", &c7).unwrap();
        for s in enumerate_syllable_decompositions(&e, 100).unwrap().seqs {
            assert_eq!(s.element(), e);
            assert_eq!(s.len(), e.len());
        }
    }

    #[test]
    fn cap_and_overflow() {
        let c7 = g(GraphSpec::Cycle(7));
        let e = Element::parse("v_2 v_1 v_7", &c7).unwrap();
        let d = enumerate_syllable_decompositions(&e, 2).unwrap();
        assert_eq!(d.seqs.len(), 2);
        assert!(d.overflow);
        let d = enumerate_syllable_decompositions(&e, 3).unwrap();
        assert!(!d.overflow);
        assert_eq!(
            enumerate_syllable_decompositions(&e, 0).unwrap_err(),
            WordError::ZeroCap
        );
    }

    #[test]
    fn pivot_examples() {
        let p4 = g(GraphSpec::Path(4));
        let e = Element::parse("d a", &p4).unwrap();
        let z = pivot_points(&SyllableSeq::from_element(&e));
        let a = p4.vertex("a").unwrap();
        let d = p4.vertex("d").unwrap();
        assert_eq!(z[0], ExtVertex::new(a, &Element::identity(&p4)));
        assert_eq!(z[1], ExtVertex::new(d, &e));
        let c7 = g(GraphSpec::Cycle(7));
        let v = Element::parse("v_3^2", &c7).unwrap();
        let z = pivot_points(&SyllableSeq::from_element(&v));
        assert_eq!(z, vec![ExtVertex::new(c7.vertex("v_3").unwrap(), &Element::identity(&c7))]);
    }

    #[test]
    fn rotation_is_a_conjugate() {
        let c7 = g(GraphSpec::Cycle(7));
        let e = Element::parse("v_7 v_3 v_6 v_2 v_5 v_1 v_4", &c7).unwrap();
        let s = SyllableSeq::from_element(&e);
        let r = s.rotate_to_end(1);
        assert_eq!(r.s(1), s.syllables()[1]);
        let h = Element::from_syllables(&c7, s.syllables()[2..].iter().copied()).unwrap();
        assert_eq!(e.conjugate(&h.inverse()).unwrap(), r.element());
    }
}
