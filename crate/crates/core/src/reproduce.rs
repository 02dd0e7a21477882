//! Reference values recomputed from scratch.

use std::sync::Arc;

use serde::Serialize;

use crate::ext::{ext_distance, DistanceMode, ExtVertex};
use crate::graph::{build_graph, GraphSpec, SimplicialGraph};
use crate::translation::{spectrum_scan, tau, Rational, SpectrumBudget, TauOptions};
use crate::word::Element;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReproRow {
    pub id: String,
    pub instance: String,
    pub expected: String,
    pub computed: String,
    /// Method or caveat attached to the computed value.
    pub note: String,
    #[serde(rename = "match")]
    pub matched: bool,
}

impl ReproRow {
    fn new(id: &str, instance: String, expected: impl ToString, computed: impl ToString, note: impl ToString) -> Self {
        let (expected, computed) = (expected.to_string(), computed.to_string());
        Self {
            id: id.to_string(),
            instance,
            matched: expected == computed,
            expected,
            computed,
            note: note.to_string(),
        }
    }

    fn failed(id: &str, instance: String, expected: impl ToString, err: impl ToString) -> Self {
        Self {
            id: id.to_string(),
            instance,
            expected: expected.to_string(),
            computed: format!("error: {}", err.to_string()),
            note: String::new(),
            matched: false,
        }
    }
}

fn graph(spec: GraphSpec) -> Arc<SimplicialGraph> {
    Arc::new(build_graph(&spec).expect("family graphs build"))
}

/// The odd-cycle element `v_{kl} … v_{2l} v_l` with `l = (k+1)/2`, indices mod `k`.
pub fn odd_cycle_word(k: usize) -> String {
    let l = k.div_ceil(2);
    (1..=k)
        .rev()
        .map(|j| {
            let i = (j * l) % k;
            format!("v_{}", if i == 0 { k } else { i })
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn tau_row(id: &str, spec: GraphSpec, word: &str, expected: Rational, opts: &TauOptions) -> ReproRow {
    let g = graph(spec.clone());
    let instance = format!("{spec} g={word}");
    let e = match Element::parse(word, &g) {
        Ok(e) => e,
        Err(err) => return ReproRow::failed(id, instance, expected, err),
    };
    match tau(&e, opts) {
        Ok(r) => {
            let note = if r.exact {
                r.method.as_str().to_string()
            } else {
                format!("{} (certified upper bound)", r.method.as_str())
            };
            ReproRow::new(id, instance, expected, r.tau, note)
        }
        Err(err) => ReproRow::failed(id, instance, expected, err),
    }
}

fn spectrum_row(
    id: &str,
    spec: GraphSpec,
    budget: SpectrumBudget,
    expected: &str,
    opts: &TauOptions,
    fact: impl Fn(&crate::translation::SpectrumReport) -> String,
) -> ReproRow {
    let g = graph(spec.clone());
    let report = spectrum_scan(&g, &budget, opts);
    let instance = format!(
        "{spec} S={} E={:?}{}",
        budget.max_syllables,
        budget.exponents,
        if budget.distinct_vertices { " distinct" } else { "" }
    );
    let note = format!("{} classes, {} exact", report.entries.len(), report.facts.exact_entries);
    if !report.failures.is_empty() {
        return ReproRow::failed(id, instance, expected, format!("{} failures", report.failures.len()));
    }
    ReproRow::new(id, instance, expected, fact(&report), note)
}

/// Every reference row.
pub fn reproduce(opts: &TauOptions) -> Vec<ReproRow> {
    let mut rows = Vec::new();
    let c7_word = "v_7 v_3 v_6 v_2 v_5 v_1 v_4";
    rows.push(tau_row("c7-rotation", GraphSpec::Cycle(7), c7_word, Rational::new(21, 2), opts));
    rows.push(tau_row(
        "c7-rotation-square",
        GraphSpec::Cycle(7),
        &format!("{c7_word} {c7_word}"),
        Rational::integer(21),
        opts,
    ));
    rows.push(tau_row("gamma2", GraphSpec::Gamma(2), "t v u", Rational::new(7, 2), opts));
    rows.push(tau_row("gamma4", GraphSpec::Gamma(4), "t v u", Rational::new(13, 4), opts));
    {
        let g = graph(GraphSpec::Gamma(4));
        let e = Element::parse("t v u", &g).expect("word parses").pow(4).expect("small");
        let d: Vec<String> = (1..=4)
            .map(|i| {
                let x = ExtVertex::parse(&format!("u_{i}"), &g).expect("vertex");
                ext_distance(&x, &x.act(&e), DistanceMode::Lambda, opts.lambda_cap)
                    .map_or_else(|err| err.to_string(), |d| d.to_string())
            })
            .collect();
        rows.push(ReproRow::new(
            "gamma4-distance",
            "gamma:4 min_i d(u_i, u_i^(g^4))".to_string(),
            13,
            d.iter().filter_map(|x| x.parse::<usize>().ok()).min().map_or("none".into(), |m| m.to_string()),
            format!("per i: {}", d.join(",")),
        ));
    }
    for k in 2..=6i64 {
        rows.push(tau_row(
            "gamma-family",
            GraphSpec::Gamma(k as usize),
            "t v u",
            Rational::new(3 * k + 1, k),
            opts,
        ));
    }
    for k in [7usize, 9, 11] {
        let kk = k as i64;
        rows.push(tau_row(
            "odd-cycle",
            GraphSpec::Cycle(k),
            &odd_cycle_word(k),
            Rational::new(kk * (kk - 4), 2),
            opts,
        ));
    }
    for (spec, word, d) in [
        (GraphSpec::Cycle(7), "v_1 v_4", 3i64),
        (GraphSpec::Cycle(10), "v_1 v_6", 5),
        (GraphSpec::Cycle(12), "v_1 v_7", 6),
        (GraphSpec::Path(6), "a f", 5),
    ] {
        rows.push(tau_row("length-two", spec, word, Rational::integer(2 * d - 4), opts));
    }
    rows.push(tau_row("path4-minimum", GraphSpec::Path(4), "d a", Rational::integer(2), opts));
    rows.push(spectrum_row(
        "path4-spectrum",
        GraphSpec::Path(4),
        SpectrumBudget::new(4),
        "all_even=true",
        opts,
        |r| format!("all_even={}", r.facts.all_even),
    ));
    rows.push(spectrum_row(
        "c8-spectrum",
        GraphSpec::Cycle(8),
        SpectrumBudget::new(4),
        "all_integer=true",
        opts,
        |r| format!("all_integer={}", r.facts.all_integer),
    ));
    rows.push(spectrum_row(
        "c7-spectrum",
        GraphSpec::Cycle(7),
        SpectrumBudget::new(4),
        "max_denominator<=2",
        opts,
        |r| match r.facts.max_denominator {
            d if d <= 2 => "max_denominator<=2".to_string(),
            d => format!("max_denominator={d}"),
        },
    ));
    let mut distinct = SpectrumBudget::new(7);
    distinct.exponents = vec![1];
    distinct.distinct_vertices = true;
    rows.push(spectrum_row(
        "c7-half-integer",
        GraphSpec::Cycle(7),
        distinct,
        "max_denominator=2 contains 21/2",
        opts,
        |r| {
            format!(
                "max_denominator={}{}",
                r.facts.max_denominator,
                if r.values().contains_key(&Rational::new(21, 2)) { " contains 21/2" } else { "" }
            )
        },
    ));
    rows
}
