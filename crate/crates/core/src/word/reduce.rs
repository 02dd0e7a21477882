use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use serde::Serialize;

use super::{dependent, Element, Syllable, WordError};
use crate::graph::{complement_induced, SimplicialGraph, VertexId};

/// Upper bound on states visited by the rotation search.
const ROTATION_STATE_LIMIT: usize = 200_000;

/// Positions of the syllables of `nf` that commute with everything to their left.
pub(crate) fn front_movable(graph: &SimplicialGraph, nf: &[Syllable]) -> Vec<usize> {
    (0..nf.len())
        .filter(|&j| (0..j).all(|i| !dependent(graph, nf[i].vertex, nf[j].vertex)))
        .collect()
}

/// Breadth-first closure under rotation moves, in discovery order.
fn rotation_closure(g: &Element) -> Vec<(Element, Element)> {
    let graph = g.graph().clone();
    let mut seen: HashSet<Vec<Syllable>> = HashSet::new();
    let mut order = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert(g.nf().to_vec());
    queue.push_back((g.clone(), Element::identity(&graph)));
    while let Some((x, c)) = queue.pop_front() {
        for j in front_movable(&graph, x.nf()) {
            let s = Element::syllable(&graph, x.nf()[j]);
            let Ok(y) = x.conjugate(&s) else { continue };
            if seen.contains(y.nf()) || seen.len() >= ROTATION_STATE_LIMIT {
                continue;
            }
            seen.insert(y.nf().to_vec());
            queue.push_back((y, c.mul(&s)));
        }
        order.push((x, c));
    }
    order
}

/// A minimal-syllable-length conjugate reachable by rotations, with the
/// conjugator `c` such that `reduced = c⁻¹ g c`.
pub fn cyclic_syllable_reduce(g: &Element) -> (Element, Element) {
    let closure = rotation_closure(g);
    let min = closure.iter().map(|(x, _)| x.len()).min().unwrap_or(0);
    closure
        .into_iter()
        .find(|(x, _)| x.len() == min)
        .expect("closure contains the start state")
}

/// Lex-least normal form among the minimal rotation conjugates of `g`.
pub fn conjugacy_key(g: &Element) -> Vec<Syllable> {
    let closure = rotation_closure(g);
    let min = closure.iter().map(|(x, _)| x.len()).min().unwrap_or(0);
    closure
        .into_iter()
        .filter(|(x, _)| x.len() == min)
        .map(|(x, _)| x.nf().to_vec())
        .min()
        .unwrap_or_default()
}

/// Whether the support of `g` lies in the star of a single vertex.
pub fn is_star_word(g: &Element) -> bool {
    let supp = g.support();
    supp.is_empty()
        || g
            .graph()
            .vertices()
            .any(|v| supp.iter().all(|&x| g.graph().in_star(v, x)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Elliptic,
    Loxodromic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EllipticWitness {
    /// At most one generator in the support.
    SmallSupport,
    /// Support split into two nonempty parts joined in the graph.
    Join { a: Vec<VertexId>, b: Vec<VertexId> },
    /// A vertex outside the support adjacent to all of it.
    Dominated { w: VertexId },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LoxodromicCertificate {
    /// Spanning tree of the complement graph induced on the support.
    pub complement_tree: Vec<(VertexId, VertexId)>,
    /// For every vertex `w` outside the support, a support vertex not adjacent to `w`.
    pub undominated: Vec<(VertexId, VertexId)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub kind: Kind,
    /// Support of the cyclically reduced conjugate.
    pub support: Vec<VertexId>,
    pub elliptic: Option<EllipticWitness>,
    pub loxodromic: Option<LoxodromicCertificate>,
}

impl Classification {
    pub fn is_loxodromic(&self) -> bool {
        self.kind == Kind::Loxodromic
    }

    /// Re-checks the witness directly against the graph.
    pub fn verify(&self, graph: &SimplicialGraph) -> bool {
        let supp: BTreeSet<VertexId> = self.support.iter().copied().collect();
        match (self.kind, &self.elliptic, &self.loxodromic) {
            (Kind::Elliptic, Some(EllipticWitness::SmallSupport), None) => supp.len() <= 1,
            (Kind::Elliptic, Some(EllipticWitness::Join { a, b }), None) => {
                let union: BTreeSet<VertexId> = a.iter().chain(b).copied().collect();
                !a.is_empty()
                    && !b.is_empty()
                    && union == supp
                    && union.len() == a.len() + b.len()
                    && a.iter().all(|&x| b.iter().all(|&y| graph.adjacent(x, y)))
            }
            (Kind::Elliptic, Some(EllipticWitness::Dominated { w }), None) => {
                !supp.contains(w) && supp.iter().all(|&x| graph.adjacent(*w, x))
            }
            (Kind::Loxodromic, None, Some(cert)) => {
                if supp.len() < 2 || cert.complement_tree.len() + 1 != supp.len() {
                    return false;
                }
                let mut parent: HashMap<VertexId, VertexId> =
                    supp.iter().map(|&v| (v, v)).collect();
                fn find(p: &mut HashMap<VertexId, VertexId>, x: VertexId) -> VertexId {
                    let up = p[&x];
                    if up == x {
                        return x;
                    }
                    let root = find(p, up);
                    p.insert(x, root);
                    root
                }
                for &(x, y) in &cert.complement_tree {
                    if !supp.contains(&x) || !supp.contains(&y) || graph.commute(x, y) {
                        return false;
                    }
                    let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                    if rx == ry {
                        return false;
                    }
                    parent.insert(rx, ry);
                }
                let outside: Vec<VertexId> = graph.vertices().filter(|v| !supp.contains(v)).collect();
                outside.len() == cert.undominated.len()
                    && cert.undominated.iter().zip(&outside).all(|(&(w, s), &o)| {
                        w == o && supp.contains(&s) && !graph.adjacent(w, s)
                    })
            }
            _ => false,
        }
    }
}

/// Elliptic/loxodromic classification of the conjugation action on the
/// extension graph, decided on a cyclically reduced conjugate.
pub fn classify(g: &Element) -> Classification {
    let (reduced, _) = cyclic_syllable_reduce(g);
    classify_support(g.graph(), &reduced.support())
}

pub fn classify_support(graph: &SimplicialGraph, supp: &BTreeSet<VertexId>) -> Classification {
    let support: Vec<VertexId> = supp.iter().copied().collect();
    let elliptic = |w| Classification {
        kind: Kind::Elliptic,
        support: support.clone(),
        elliptic: Some(w),
        loxodromic: None,
    };
    if supp.len() <= 1 {
        return elliptic(EllipticWitness::SmallSupport);
    }
    let (comp, connected) = complement_induced(graph, supp).expect("support is nonempty");
    if !connected {
        let dist = comp.distances_from(crate::graph::VertexId(0));
        let (mut a, mut b) = (Vec::new(), Vec::new());
        for (i, &v) in support.iter().enumerate() {
            if dist[i].is_some() {
                a.push(v);
            } else {
                b.push(v);
            }
        }
        return elliptic(EllipticWitness::Join { a, b });
    }
    if let Some(w) = graph
        .vertices()
        .find(|w| !supp.contains(w) && supp.iter().all(|&x| graph.adjacent(*w, x)))
    {
        return elliptic(EllipticWitness::Dominated { w });
    }
    let mut tree = Vec::new();
    let mut seen = vec![false; support.len()];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(i) = queue.pop_front() {
        for &crate::graph::VertexId(j) in comp.neighbors(crate::graph::VertexId(i)) {
            if !seen[j] {
                seen[j] = true;
                tree.push((support[i], support[j]));
                queue.push_back(j);
            }
        }
    }
    let undominated = graph
        .vertices()
        .filter(|w| !supp.contains(w))
        .map(|w| {
            let s = *supp.iter().find(|&&x| !graph.adjacent(w, x)).expect("not dominated");
            (w, s)
        })
        .collect();
    Classification {
        kind: Kind::Loxodromic,
        support,
        elliptic: None,
        loxodromic: Some(LoxodromicCertificate {
            complement_tree: tree,
            undominated,
        }),
    }
}

/// Star length and a factorisation `g = w_n … w_1` into star words with
/// additive word length, listed left to right.
///
/// Each step removes, from the right end of the trace, the star word with
/// the largest word length.
pub fn star_length(g: &Element) -> Result<(usize, Vec<Element>), WordError> {
    if g.is_identity() {
        return Err(WordError::Identity);
    }
    let graph = g.graph().clone();
    let mut rest: Vec<Syllable> = g.nf().to_vec();
    let mut pieces = Vec::new();
    while !rest.is_empty() {
        let mut best: Option<(u64, Vec<bool>)> = None;
        for v in graph.vertices() {
            let take = right_ideal_in_star(&graph, &rest, v);
            let weight: u64 = rest
                .iter()
                .zip(&take)
                .filter(|(_, &t)| t)
                .map(|(s, _)| s.exp.unsigned_abs())
                .sum();
            if best.as_ref().is_none_or(|(w, _)| weight > *w) {
                best = Some((weight, take));
            }
        }
        let (_, take) = best.expect("graph is nonempty");
        let piece: Vec<Syllable> = rest.iter().zip(&take).filter(|(_, &t)| t).map(|(s, _)| *s).collect();
        rest = rest.iter().zip(&take).filter(|(_, &t)| !t).map(|(s, _)| *s).collect();
        pieces.push(Element::from_reduced(&graph, piece));
    }
    pieces.reverse();
    Ok((pieces.len(), pieces))
}

/// Largest set of syllables with vertices in `st(v)` that can be moved
/// together to the right end of `nf`.
fn right_ideal_in_star(graph: &SimplicialGraph, nf: &[Syllable], v: VertexId) -> Vec<bool> {
    let n = nf.len();
    let mut take = vec![false; n];
    for j in (0..n).rev() {
        take[j] = graph.in_star(v, nf[j].vertex)
            && (j + 1..n).all(|k| take[k] || !dependent(graph, nf[j].vertex, nf[k].vertex));
    }
    take
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::graph::{build_graph, GraphSpec};

    fn g(spec: GraphSpec) -> Arc<SimplicialGraph> {
        Arc::new(build_graph(&spec).unwrap())
    }

    fn el(text: &str, graph: &Arc<SimplicialGraph>) -> Element {
        Element::parse(text, graph).unwrap()
    }

    #[test]
    fn cyclic_reduction_examples() {
        let p4 = g(GraphSpec::Path(4));
        let (r, c) = cyclic_syllable_reduce(&el("a c a", &p4));
        assert_eq!(r.len(), 2);
        assert_eq!(el("a c a", &p4).conjugate(&c).unwrap(), r);
        let (r, c) = cyclic_syllable_reduce(&el("d a", &p4));
        assert_eq!(r, el("d a", &p4));
        assert!(c.is_identity());
        let x = el("c d a c^-1", &p4);
        let (r, c) = cyclic_syllable_reduce(&x);
        assert_eq!(r, el("d a", &p4));
        assert_eq!(c, el("c^-1", &p4).inverse());
        assert_eq!(x.conjugate(&c).unwrap(), r);
    }

    #[test]
    fn conjugacy_key_is_class_invariant() {
        let c7 = g(GraphSpec::Cycle(7));
        let x = el("v_1 v_3 v_5^2", &c7);
        let h = el("v_2 v_6^-1 v_4", &c7);
        assert_eq!(conjugacy_key(&x), conjugacy_key(&x.conjugate(&h).unwrap()));
    }

    #[test]
    fn classify_examples() {
        let g2 = g(GraphSpec::Gamma(2));
        let v3 = classify(&el("v^3", &g2));
        assert_eq!((v3.kind, v3.elliptic.clone()), (Kind::Elliptic, Some(EllipticWitness::SmallSupport)));
        let p4 = g(GraphSpec::Path(4));
        let da = classify(&el("d a", &p4));
        assert_eq!(da.kind, Kind::Loxodromic);
        assert!(da.verify(&p4));
        let c4 = g(GraphSpec::Cycle(4));
        let x = classify(&el("v_1 v_3", &c4));
        assert_eq!(x.kind, Kind::Elliptic);
        assert!(x.verify(&c4));
        assert!(matches!(x.elliptic, Some(EllipticWitness::Dominated { w }) if c4.name(w) == "v_2"));
        let tvu = classify(&el("t v u", &g2));
        assert!(tvu.is_loxodromic() && tvu.verify(&g2));
        let join = classify(&el("v_1 v_2", &g(GraphSpec::Cycle(7))));
        assert!(matches!(join.elliptic, Some(EllipticWitness::Join { .. })));
    }

    #[test]
    fn classify_uses_the_reduced_conjugate() {
        let p4 = g(GraphSpec::Path(4));
        let x = el("a b a^-1", &p4);
        assert_eq!(classify(&x).kind, Kind::Elliptic);
        let y = el("b d a b^-1", &p4);
        assert_eq!(classify(&y).kind, Kind::Loxodromic);
    }

    #[test]
    fn star_length_examples() {
        let p4 = g(GraphSpec::Path(4));
        assert_eq!(star_length(&el("a c", &p4)).unwrap().0, 1);
        let (n, pieces) = star_length(&el("a d", &p4)).unwrap();
        assert_eq!(n, 2);
        let prod = pieces.iter().fold(Element::identity(&p4), |acc, w| acc.mul(w));
        assert_eq!(prod, el("a d", &p4));
        let g2 = g(GraphSpec::Gamma(2));
        assert_eq!(star_length(&el("t v u", &g2)).unwrap().0, 3);
        assert!(star_length(&Element::identity(&p4)).is_err());
    }
}
