use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use super::{tau, verify_certificate, Rational, TauOptions, TauResult};
use crate::graph::{graph_metrics, Girth, SimplicialGraph};
use crate::word::{conjugacy_key, Element, Syllable};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectrumBudget {
    pub max_syllables: usize,
    pub exponents: Vec<i64>,
    /// Only enumerate words whose syllables sit on pairwise distinct vertices.
    pub distinct_vertices: bool,
    /// Stop enumerating once this many normal forms have been produced.
    pub max_elements: usize,
}

impl SpectrumBudget {
    pub fn new(max_syllables: usize) -> Self {
        Self {
            max_syllables,
            exponents: vec![-1, 1],
            distinct_vertices: false,
            max_elements: 2_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphSummary {
    pub vertices: usize,
    pub edges: usize,
    pub girth: Girth,
    pub max_degree: usize,
    pub diameter: usize,
}

impl GraphSummary {
    pub fn of(graph: &SimplicialGraph) -> Self {
        let m = graph_metrics(graph);
        Self {
            vertices: graph.len(),
            edges: graph.edge_count(),
            girth: m.girth,
            max_degree: m.max_degree,
            diameter: m.diameter,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectrumEntry {
    pub element: String,
    pub result: TauResult,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectrumFacts {
    pub all_even: bool,
    pub all_integer: bool,
    pub max_denominator: i64,
    pub min_positive: Option<Rational>,
    pub exact_entries: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectrumReport {
    pub graph: GraphSummary,
    pub budget: SpectrumBudget,
    /// Normal forms enumerated before conjugacy deduplication.
    pub enumerated: usize,
    /// True when `max_elements` cut the enumeration short.
    pub truncated: bool,
    pub entries: Vec<SpectrumEntry>,
    /// Representatives whose computation failed, with the error text.
    pub failures: Vec<(String, String)>,
    pub facts: SpectrumFacts,
}

impl SpectrumReport {
    /// Distinct values with multiplicities.
    pub fn values(&self) -> BTreeMap<Rational, usize> {
        let mut out = BTreeMap::new();
        for e in &self.entries {
            *out.entry(e.result.tau).or_insert(0) += 1;
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("element,tau,method,exact\n");
        for e in &self.entries {
            out.push_str(&format!(
                "\"{}\",{},{},{}\n",
                e.element,
                e.result.tau,
                e.result.method.as_str(),
                e.result.exact
            ));
        }
        out
    }

    /// Re-verifies every certificate.
    pub fn verify(&self, graph: &std::sync::Arc<SimplicialGraph>, opts: &TauOptions) -> bool {
        self.entries.iter().all(|e| {
            Element::parse(&e.element, graph)
                .map(|g| verify_certificate(&g, &e.result, opts))
                .unwrap_or(false)
        })
    }
}

/// All nontrivial elements of syllable length at most `max_syllables` with
/// syllable exponents drawn from the budget, in order of length then normal form.
///
/// Every element of length `n` is an element of length `n − 1` times one syllable,
/// so extending each level by single syllables reaches all of them.
pub fn enumerate_normal_forms(
    graph: &std::sync::Arc<SimplicialGraph>,
    budget: &SpectrumBudget,
) -> (Vec<Element>, bool) {
    let mut exps: Vec<i64> = budget.exponents.iter().copied().filter(|&e| e != 0).collect();
    exps.sort_unstable();
    exps.dedup();
    let mut out = Vec::new();
    let mut level = vec![Element::identity(graph)];
    for n in 1..=budget.max_syllables {
        let mut seen: HashSet<Vec<Syllable>> = HashSet::new();
        let mut next = Vec::new();
        for x in &level {
            let supp = x.support();
            for v in graph.vertices() {
                if budget.distinct_vertices && supp.contains(&v) {
                    continue;
                }
                for &e in &exps {
                    let s = Element::syllable(graph, Syllable::new(v, e));
                    let Ok(y) = x.checked_mul(&s) else { continue };
                    if y.len() == n && seen.insert(y.nf().to_vec()) {
                        next.push(y);
                    }
                }
            }
        }
        next.sort();
        if out.len() + next.len() > budget.max_elements {
            let room = budget.max_elements - out.len();
            out.extend(next.into_iter().take(room));
            return (out, true);
        }
        out.extend(next.iter().cloned());
        level = next;
    }
    (out, false)
}

/// Translation lengths of one representative per conjugacy class found by
/// [`enumerate_normal_forms`].
pub fn spectrum_scan(
    graph: &std::sync::Arc<SimplicialGraph>,
    budget: &SpectrumBudget,
    opts: &TauOptions,
) -> SpectrumReport {
    let (elements, truncated) = enumerate_normal_forms(graph, budget);
    let enumerated = elements.len();
    let keyed: Vec<(Vec<Syllable>, Element)> = elements
        .into_par_iter()
        .map(|g| (conjugacy_key(&g), g))
        .collect();
    let mut seen = HashSet::new();
    let reps: Vec<Element> = keyed
        .into_iter()
        .filter_map(|(k, g)| seen.insert(k).then_some(g))
        .collect();
    let results: Vec<(String, Result<TauResult, String>)> = reps
        .par_iter()
        .map(|g| (g.to_string(), tau(g, opts).map_err(|e| e.to_string())))
        .collect();
    let mut entries = Vec::new();
    let mut failures = Vec::new();
    for (element, r) in results {
        match r {
            Ok(result) => entries.push(SpectrumEntry { element, result }),
            Err(e) => failures.push((element, e)),
        }
    }
    let exact: Vec<Rational> = entries.iter().filter(|e| e.result.exact).map(|e| e.result.tau).collect();
    let facts = SpectrumFacts {
        all_even: exact.iter().all(|t| t.is_integer() && t.num() % 2 == 0),
        all_integer: exact.iter().all(|t| t.is_integer()),
        max_denominator: exact.iter().map(|t| t.den()).max().unwrap_or(1),
        min_positive: exact.iter().copied().filter(|t| t.num() > 0).min(),
        exact_entries: exact.len(),
    };
    SpectrumReport {
        graph: GraphSummary::of(graph),
        budget: budget.clone(),
        enumerated,
        truncated,
        entries,
        failures,
        facts,
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::graph::{build_graph, GraphSpec};

    #[test]
    fn enumeration_counts_on_two_commuting_generators() {
        let graph = Arc::new(build_graph(&GraphSpec::Path(2)).unwrap());
        let (all, truncated) = enumerate_normal_forms(&graph, &SpectrumBudget::new(2));
        // a^±1, b^±1, and the four products a^±1 b^±1.
        assert_eq!((all.len(), truncated), (8, false));
    }

    #[test]
    fn path4_small_scan_is_even() {
        let graph = Arc::new(build_graph(&GraphSpec::Path(4)).unwrap());
        let report = spectrum_scan(&graph, &SpectrumBudget::new(2), &TauOptions::default());
        assert!(report.facts.all_even);
        assert!(report.failures.is_empty());
        assert_eq!(report.facts.min_positive, Some(Rational::integer(2)));
        assert!(report.verify(&graph, &TauOptions::default()));
    }
}
