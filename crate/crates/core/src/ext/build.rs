use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::subgraph::Collector;
use super::{ExtError, ExtSubgraph, ExtVertex, Exactness, Provenance};
use crate::graph::{graph_metrics, SimplicialGraph};
use crate::word::{
    classify, cyclic_syllable_reduce, enumerate_syllable_decompositions, Element, SyllableSeq,
};

pub const DEFAULT_LAMBDA_CAP: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceMode {
    /// Chain graph when the girth is at least 6, Λ otherwise.
    #[default]
    Auto,
    Chain,
    Lambda,
}

impl std::str::FromStr for DistanceMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "auto" => Ok(Self::Auto),
            "chain" => Ok(Self::Chain),
            "lambda" => Ok(Self::Lambda),
            _ => Err(format!("unknown mode `{s}` (auto, chain, lambda)")),
        }
    }
}

/// `Γ ∪ ⋃ Γ^{s_i … s_1}`, with copy `i` recorded as layer `i`.
pub fn build_chain(s: &SyllableSeq) -> ExtSubgraph {
    let graph = s.graph();
    let mut c = Collector::new(graph, None);
    for i in 0..=s.len() {
        c.add_copy(&s.suffix(i), i as i64).expect("no size limit");
    }
    c.finish(
        Provenance::Chain {
            word: s.to_string(),
        },
        Exactness::ChainEndpoints,
    )
}

/// Union of the chain graphs of every syllable decomposition of `g`.
///
/// The suffixes of all decompositions are deduplicated before copies are
/// added, so the cost is governed by distinct suffix elements.
pub fn build_lambda(g: &Element, cap: usize) -> Result<ExtSubgraph, ExtError> {
    let graph = g.graph();
    let mut c = Collector::new(graph, None);
    if g.is_identity() {
        c.add_copy(g, 0)?;
        return Ok(c.finish(
            Provenance::Lambda {
                element: g.to_string(),
                decompositions: 0,
            },
            Exactness::All,
        ));
    }
    let decs = enumerate_syllable_decompositions(g, cap)?;
    if decs.overflow {
        return Err(ExtError::LambdaOverflow {
            partial: decs.seqs.len(),
            girth_ok: graph_metrics(graph).girth.at_least(6),
        });
    }
    let mut suffixes: BTreeSet<(usize, Element)> = BTreeSet::new();
    for s in &decs.seqs {
        for i in 0..=s.len() {
            suffixes.insert((i, s.suffix(i)));
        }
    }
    for (i, p) in &suffixes {
        c.add_copy(p, *i as i64)?;
    }
    Ok(c.finish(
        Provenance::Lambda {
            element: g.to_string(),
            decompositions: decs.seqs.len(),
        },
        Exactness::All,
    ))
}

/// Truncated axial subgraph `⋃_{m=-nM..nM} Γ^{g(m)}`, where `g(qn + r)` is
/// `s_r … s_1 g^q`; each vertex is labelled by the first `m` it appears at.
pub fn build_axial(s: &SyllableSeq, m: usize) -> Result<ExtSubgraph, ExtError> {
    let graph = s.graph();
    check_axial(graph, s)?;
    let g = s.element();
    let shift = g.pow(-(m as i64))?;
    let long = s.repeat(2 * m);
    let n = s.len() as i64;
    let mut c = Collector::new(graph, None);
    for j in 0..=long.len() {
        let p = long.suffix(j).mul(&shift);
        c.add_copy(&p, j as i64 - n * m as i64)?;
    }
    Ok(c.finish(
        Provenance::Axial {
            word: s.to_string(),
            m,
        },
        Exactness::UpperBound,
    ))
}

fn check_axial(graph: &SimplicialGraph, s: &SyllableSeq) -> Result<(), ExtError> {
    let fail = |what: &str| Err(ExtError::Precondition(what.to_string()));
    if !graph_metrics(graph).girth.at_least(6) {
        return fail("girth of the defining graph is below 6");
    }
    if s.is_empty() || !s.is_reduced() {
        return fail("sequence is not a syllable decomposition");
    }
    let g = s.element();
    if cyclic_syllable_reduce(&g).0.len() != g.len() {
        return fail("element is not cyclically syllable-reduced");
    }
    if !classify(&g).is_loxodromic() {
        return fail("element is not loxodromic");
    }
    Ok(())
}

/// Vertices `w^{h c}` for `|h| ≤ radius`, where `c` is the conjugator of `base`.
pub fn build_ball(base: &ExtVertex, radius: usize, limit: usize) -> Result<ExtSubgraph, ExtError> {
    let graph = base.graph();
    let mut c = Collector::new(graph, Some(limit));
    let letters: Vec<Element> = graph
        .vertices()
        .flat_map(|v| {
            let x = Element::generator(graph, v);
            [x.clone(), x.inverse()]
        })
        .collect();
    let mut seen: BTreeSet<Element> = BTreeSet::new();
    let mut frontier = vec![Element::identity(graph)];
    seen.insert(Element::identity(graph));
    for level in 0..=radius {
        for h in &frontier {
            c.add_copy(&h.mul(base.conj()), level as i64)?;
        }
        if level == radius {
            break;
        }
        let mut next = Vec::new();
        for h in &frontier {
            for a in &letters {
                let x = h.mul(a);
                if x.word_length() == level as u64 + 1 && seen.insert(x.clone()) {
                    next.push(x);
                }
            }
        }
        next.sort();
        frontier = next;
    }
    Ok(c.finish(
        Provenance::Ball {
            base: base.to_string(),
            radius,
        },
        Exactness::UpperBound,
    ))
}

/// Exact extension-graph distance.
///
/// The pair is first translated so that `x` lies in the base copy; the chain
/// or Λ subgraph of the translated conjugator then contains a geodesic.
pub fn ext_distance(
    x: &ExtVertex,
    y: &ExtVertex,
    mode: DistanceMode,
    cap: usize,
) -> Result<usize, ExtError> {
    let graph: &Arc<SimplicialGraph> = x.graph();
    if !x.conj().same_graph(y.conj()) {
        return Err(crate::word::WordError::MixedGraphs.into());
    }
    let shift = x.conj().inverse();
    let a = ExtVertex::plain(graph, x.base());
    let b = y.act(&shift);
    if b.conj().is_identity() {
        return Ok(graph.distance(a.base(), b.base()).expect("defining graph is connected"));
    }
    let girth6 = graph_metrics(graph).girth.at_least(6);
    let use_chain = match mode {
        DistanceMode::Chain => true,
        DistanceMode::Lambda => false,
        DistanceMode::Auto => girth6,
    };
    let sub = if use_chain {
        build_chain(&SyllableSeq::from_element(b.conj()))
    } else {
        build_lambda(b.conj(), cap)?
    };
    Ok(sub.distance(&a, &b).expect("chain graphs are connected"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ext::{ext_adjacent, ExtVertex};
    use crate::graph::{build_graph, GraphSpec};

    fn g(spec: GraphSpec) -> Arc<SimplicialGraph> {
        Arc::new(build_graph(&spec).unwrap())
    }

    fn el(text: &str, graph: &Arc<SimplicialGraph>) -> Element {
        Element::parse(text, graph).unwrap()
    }

    fn xv(text: &str, graph: &Arc<SimplicialGraph>) -> ExtVertex {
        ExtVertex::parse(text, graph).unwrap()
    }

    #[test]
    fn chain_of_da_on_path() {
        let p4 = g(GraphSpec::Path(4));
        let chain = build_chain(&SyllableSeq::from_element(&el("d a", &p4)));
        assert!(chain.len() <= 12);
        assert!(chain.is_connected());
        let mut naive: Vec<ExtVertex> = Vec::new();
        for p in ["1", "a", "d a"] {
            for w in p4.vertices() {
                let v = ExtVertex::new(w, &el(p, &p4));
                if !naive.iter().any(|u| crate::ext::ext_vertex_equal(u, &v)) {
                    naive.push(v);
                }
            }
        }
        assert_eq!(chain.len(), naive.len());
        for (i, j) in chain.edges() {
            assert!(ext_adjacent(&chain.vertices()[i], &chain.vertices()[j]));
        }
    }

    #[test]
    fn distances_in_gamma() {
        let g2 = g(GraphSpec::Gamma(2));
        let chain = build_chain(&SyllableSeq::from_element(&el("t v u", &g2)));
        assert_eq!(chain.distance(&xv("u_1", &g2), &xv("u_2 ^ (t v u)", &g2)), Some(3));
        let g3 = g(GraphSpec::Gamma(3));
        let d = |a: &str, b: &str| {
            ext_distance(&xv(a, &g3), &xv(b, &g3), DistanceMode::Auto, DEFAULT_LAMBDA_CAP).unwrap()
        };
        assert_eq!(d("u_1", "u_1 ^ (t v u)"), 4);
        assert_eq!(d("u_1", "u_3 ^ (t v u)"), 5);
        assert_eq!(d("u_1", "t_2"), graph_distance(&g3, "u_1", "t_2"));
    }

    fn graph_distance(graph: &SimplicialGraph, a: &str, b: &str) -> usize {
        graph.distance(graph.vertex(a).unwrap(), graph.vertex(b).unwrap()).unwrap()
    }

    #[test]
    fn c7_square_distance() {
        let c7 = g(GraphSpec::Cycle(7));
        let g1 = el("v_7 v_3 v_6 v_2 v_5 v_1 v_4", &c7);
        let seq = SyllableSeq::from_element(&g1).repeat(2);
        let chain = build_chain(&seq);
        let x = xv("v_3", &c7);
        assert_eq!(chain.distance(&x, &x.act(&g1.pow(2).unwrap())), Some(21));
    }

    #[test]
    fn lambda_unions_chains() {
        let c7 = g(GraphSpec::Cycle(7));
        let x = el("v_2 v_1 v_7", &c7);
        let lam = build_lambda(&x, DEFAULT_LAMBDA_CAP).unwrap();
        let decs = enumerate_syllable_decompositions(&x, 10).unwrap();
        let mut all = BTreeSet::new();
        for s in &decs.seqs {
            all.extend(build_chain(s).vertices().iter().cloned());
        }
        assert_eq!(lam.len(), all.len());
        assert!(matches!(
            build_lambda(&x, 2),
            Err(ExtError::LambdaOverflow { partial: 2, .. })
        ));
        let single = el("v_1 v_4", &c7);
        let chain = build_chain(&SyllableSeq::from_element(&single));
        assert_eq!(build_lambda(&single, 10).unwrap().len(), chain.len());
    }

    #[test]
    fn axial_invariance_and_preconditions() {
        let c7 = g(GraphSpec::Cycle(7));
        let s = SyllableSeq::from_element(&el("v_7 v_3 v_6 v_2 v_5 v_1 v_4", &c7));
        let a2 = build_axial(&s, 2).unwrap();
        let a3 = build_axial(&s, 3).unwrap();
        assert!(a2.is_connected());
        let gg = s.element();
        for v in a2.vertices() {
            assert!(a3.contains(&v.act(&gg)));
        }
        for i in 0..=s.len() {
            for w in c7.vertices() {
                assert!(a2.contains(&ExtVertex::new(w, &s.suffix(i))));
            }
        }
        let p = g(GraphSpec::Cycle(4));
        let bad = SyllableSeq::from_element(&el("v_1 v_3", &p));
        assert!(matches!(build_axial(&bad, 1), Err(ExtError::Precondition(_))));
        let g2 = g(GraphSpec::Gamma(2));
        assert!(matches!(
            build_axial(&SyllableSeq::from_element(&el("t v u", &g2)), 1),
            Err(ExtError::Precondition(_))
        ));
        let not_reduced = SyllableSeq::from_element(&el("v_1 v_4 v_6 v_1", &c7));
        assert!(matches!(build_axial(&not_reduced, 1), Err(ExtError::Precondition(_))));
    }

    #[test]
    fn ball_radius_zero_is_the_graph() {
        let p4 = g(GraphSpec::Path(4));
        let ball = build_ball(&xv("a", &p4), 0, 100).unwrap();
        assert_eq!(ball.len(), 4);
        assert_eq!(ball.edge_count(), 3);
        assert!(matches!(
            build_ball(&xv("a", &p4), 3, 10),
            Err(ExtError::SizeGuard { limit: 10 })
        ));
    }

    #[test]
    fn ball_dominates_lambda() {
        let p4 = g(GraphSpec::Path(4));
        let a = xv("a", &p4);
        let target = xv("d ^ (d a)", &p4);
        let exact = ext_distance(&a, &target, DistanceMode::Lambda, 100).unwrap();
        let mut last = usize::MAX;
        for radius in 1..=3 {
            let ball = build_ball(&a, radius, 100_000).unwrap();
            if let Some(d) = ball.distance(&a, &target) {
                assert!(d >= exact);
                assert!(d <= last);
                last = d;
            }
        }
        assert_eq!(last, exact);
    }
}
