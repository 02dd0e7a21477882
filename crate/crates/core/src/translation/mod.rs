//! Exact asymptotic translation lengths for the conjugation action on the
//! extension graph.
//!
//! [`tau`] dispatches to the strongest applicable method. Elliptic elements
//! get 0; trees, syllable length 2 and girth at least 6 have exact methods;
//! everything else gets a certified upper bound flagged `exact = false`.

mod closed;
mod rational;
mod spectrum;
mod sweep;

use serde::Serialize;
use thiserror::Error;

use crate::ext::{ExtError, DEFAULT_LAMBDA_CAP};
use crate::graph::{graph_metrics, GraphError, SimplicialGraph};
use crate::word::{classify_support, cyclic_syllable_reduce, Element, EllipticWitness, WordError};

pub use closed::{tau_syllable2, tau_tree};
pub use rational::Rational;
pub use spectrum::{
    enumerate_normal_forms, spectrum_scan, GraphSummary, SpectrumBudget, SpectrumEntry,
    SpectrumFacts, SpectrumReport,
};
pub use sweep::{link_sweep, running_min, tau_bounds, tau_girth6, Sweep};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TauError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Ext(#[from] ExtError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

pub(crate) fn precondition<T>(what: &str) -> Result<T, TauError> {
    Err(TauError::Precondition(what.to_string()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TauMethod {
    Elliptic,
    Tree,
    Syllable2,
    Girth6,
    BoundsOnly,
}

impl TauMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            TauMethod::Elliptic => "elliptic",
            TauMethod::Tree => "tree",
            TauMethod::Syllable2 => "syllable2",
            TauMethod::Girth6 => "girth6",
            TauMethod::BoundsOnly => "bounds_only",
        }
    }
}

/// Witness of a link sweep: `d = d(u, u^{w^m})` where `w = g^c` is the
/// rotated conjugate whose last syllable sits on `v1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepCertificate {
    pub u: String,
    pub m: usize,
    pub d: usize,
    pub v1: String,
    pub word: String,
    pub conjugator: String,
    /// Subgraph used for the distances: `chain` or `lambda`.
    pub subgraph: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bound {
    pub n: usize,
    pub upper: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Certificate {
    Elliptic {
        support: Vec<String>,
        witness: String,
    },
    Tree {
        basepoint: String,
        d1: usize,
        d2: usize,
    },
    Syllable2 {
        v1: String,
        v2: String,
        d_gamma: usize,
    },
    Girth6(SweepCertificate),
    BoundsOnly {
        #[serde(flatten)]
        witness: SweepCertificate,
        /// Running minimum of `d(u, u^{w^n})/n` over the sweep, per power.
        bounds: Vec<Bound>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TauResult {
    pub tau: Rational,
    pub method: TauMethod,
    pub certificate: Certificate,
    /// False when `tau` is only a certified upper bound.
    pub exact: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TauOptions {
    pub lambda_cap: usize,
    /// Highest power tried by the upper-bound sweep, beyond the vertex degree.
    pub bound_powers: usize,
}

impl Default for TauOptions {
    fn default() -> Self {
        Self {
            lambda_cap: DEFAULT_LAMBDA_CAP,
            bound_powers: 4,
        }
    }
}

/// Asymptotic translation length of `g` with a certificate.
pub fn tau(g: &Element, opts: &TauOptions) -> Result<TauResult, TauError> {
    let graph = g.graph().clone();
    let (r, c0) = cyclic_syllable_reduce(g);
    let class = classify_support(&graph, &r.support());
    if !class.is_loxodromic() {
        return Ok(elliptic_result(&graph, &class.support, class.elliptic.as_ref()));
    }
    let metrics = graph_metrics(&graph);
    if metrics.is_tree {
        return tau_tree(&r, None);
    }
    if r.len() == 2 {
        return tau_syllable2(&r);
    }
    let mut result = if metrics.girth.at_least(6) {
        tau_girth6(&r)?
    } else {
        sweep::tau_bounds_only(&r, opts)?
    };
    if let Certificate::Girth6(c) | Certificate::BoundsOnly { witness: c, .. } = &mut result.certificate {
        let c1 = Element::parse(&c.conjugator, &graph)?;
        c.conjugator = c0.mul(&c1).to_string();
    }
    Ok(result)
}

fn elliptic_result(
    graph: &SimplicialGraph,
    support: &[crate::graph::VertexId],
    witness: Option<&EllipticWitness>,
) -> TauResult {
    let names = |vs: &[crate::graph::VertexId]| -> Vec<String> {
        vs.iter().map(|&v| graph.name(v).to_string()).collect()
    };
    let witness = match witness {
        Some(EllipticWitness::SmallSupport) | None => "support has at most one vertex".to_string(),
        Some(EllipticWitness::Join { a, b }) => {
            format!("join {{{}}} * {{{}}}", names(a).join(","), names(b).join(","))
        }
        Some(EllipticWitness::Dominated { w }) => format!("support in link of {}", graph.name(*w)),
    };
    TauResult {
        tau: Rational::zero(),
        method: TauMethod::Elliptic,
        certificate: Certificate::Elliptic {
            support: names(support),
            witness,
        },
        exact: true,
    }
}

/// Recomputes a certificate from scratch against `g`.
pub fn verify_certificate(g: &Element, result: &TauResult, opts: &TauOptions) -> bool {
    sweep::verify(g, result, opts).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::graph::{build_graph, GraphSpec};

    fn g(spec: GraphSpec) -> Arc<SimplicialGraph> {
        Arc::new(build_graph(&spec).unwrap())
    }

    fn run(spec: GraphSpec, word: &str) -> (Element, TauResult) {
        let graph = g(spec);
        let e = Element::parse(word, &graph).unwrap();
        let r = tau(&e, &TauOptions::default()).unwrap();
        (e, r)
    }

    #[test]
    fn dispatcher_examples() {
        let (_, r) = run(GraphSpec::Star(3), "l1 l2");
        assert_eq!((r.tau, r.method), (Rational::zero(), TauMethod::Elliptic));
        let (e, r) = run(GraphSpec::Path(4), "d a");
        assert_eq!((r.tau, r.method, r.exact), (Rational::integer(2), TauMethod::Tree, true));
        assert_eq!(tau_syllable2(&e).unwrap().tau, Rational::integer(2));
        let (e, r) = run(GraphSpec::Cycle(7), "v_7 v_3 v_6 v_2 v_5 v_1 v_4");
        assert_eq!((r.tau, r.method), (Rational::new(21, 2), TauMethod::Girth6));
        assert!(verify_certificate(&e, &r, &TauOptions::default()));
    }

    #[test]
    fn gamma_is_bounded_not_certified() {
        let (e, r) = run(GraphSpec::Gamma(2), "t v u");
        assert_eq!((r.tau, r.method, r.exact), (Rational::new(7, 2), TauMethod::BoundsOnly, false));
        assert!(verify_certificate(&e, &r, &TauOptions::default()));
        assert!(matches!(tau_girth6(&e), Err(TauError::Precondition(_))));
    }

    #[test]
    fn json_shape() {
        let (_, r) = run(GraphSpec::Cycle(7), "v_7 v_3 v_6 v_2 v_5 v_1 v_4");
        let text = serde_json::to_string(&r).unwrap();
        assert!(text.starts_with(r#"{"tau":{"num":21,"den":2},"method":"girth6","certificate":{"u":"#));
        assert!(text.ends_with(r#""exact":true}"#));
    }
}
