use super::{precondition, Certificate, Rational, TauError, TauMethod, TauResult};
use crate::ext::{ext_distance, DistanceMode, ExtVertex};
use crate::graph::{graph_metrics, VertexId};
use crate::word::{classify_support, cyclic_syllable_reduce, Element};

/// `τ(g) = d(x, x^{g²}) − d(x, x^g)` on a tree, for any basepoint `x`.
pub fn tau_tree(g: &Element, basepoint: Option<VertexId>) -> Result<TauResult, TauError> {
    let graph = g.graph();
    if !graph_metrics(graph).is_tree {
        return precondition("defining graph is not a tree");
    }
    let (r, _) = cyclic_syllable_reduce(g);
    if !classify_support(graph, &r.support()).is_loxodromic() {
        return precondition("element is not loxodromic");
    }
    let base = basepoint.unwrap_or(VertexId(0));
    if base.index() >= graph.len() {
        return precondition("basepoint is not a vertex");
    }
    let x = ExtVertex::plain(graph, base);
    let d1 = ext_distance(&x, &x.act(g), DistanceMode::Chain, 0)?;
    let d2 = ext_distance(&x, &x.act(&g.pow(2)?), DistanceMode::Chain, 0)?;
    let tau = d2 as i64 - d1 as i64;
    assert!(tau > 0 && tau % 2 == 0, "tree translation length {tau} is not a positive even integer");
    Ok(TauResult {
        tau: Rational::integer(tau),
        method: TauMethod::Tree,
        certificate: Certificate::Tree {
            basepoint: graph.name(base).to_string(),
            d1,
            d2,
        },
        exact: true,
    })
}

/// `τ(g) = 2·d_Γ(v1, v2) − 4` for a cyclically reduced loxodromic `g` of
/// syllable length 2.
pub fn tau_syllable2(g: &Element) -> Result<TauResult, TauError> {
    let graph = g.graph();
    if g.len() != 2 || cyclic_syllable_reduce(g).0.len() != 2 {
        return precondition("element is not cyclically reduced of syllable length 2");
    }
    if !classify_support(graph, &g.support()).is_loxodromic() {
        return precondition("element is not loxodromic");
    }
    let (a, b) = (g.nf()[0].vertex, g.nf()[1].vertex);
    let d = graph.distance(a, b).expect("defining graph is connected");
    Ok(TauResult {
        tau: Rational::integer(2 * d as i64 - 4),
        method: TauMethod::Syllable2,
        certificate: Certificate::Syllable2 {
            v1: graph.name(a).to_string(),
            v2: graph.name(b).to_string(),
            d_gamma: d,
        },
        exact: true,
    })
}
