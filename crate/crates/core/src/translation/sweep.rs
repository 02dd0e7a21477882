use rayon::prelude::*;

use super::{
    precondition, Bound, Certificate, Rational, SweepCertificate, TauError, TauMethod, TauOptions,
    TauResult,
};
use crate::ext::{build_chain, build_lambda, ext_distance, DistanceMode, ExtError, ExtVertex};
use crate::graph::{graph_metrics, VertexId};
use crate::word::{classify_support, cyclic_syllable_reduce, Element, SyllableSeq};

/// Outcome of sweeping `d(u, u^{w^m})/m` over `u ∈ lk(v1)` and `1 ≤ m ≤ max_m`.
#[derive(Debug, Clone)]
pub struct Sweep {
    pub v1: VertexId,
    /// Rotated decomposition, last syllable on `v1`.
    pub rotated: SyllableSeq,
    /// `rotated = g^conjugator`.
    pub conjugator: Element,
    /// `(u, m, d)` minimising `d/m`, ties broken by smaller `m`, then `u`.
    pub best: (VertexId, usize, usize),
    /// Every `(u, m, d)` evaluated, ordered by `m` then `u`.
    pub table: Vec<(VertexId, usize, usize)>,
    pub used_lambda: bool,
}

impl Sweep {
    pub fn value(&self) -> Rational {
        Rational::new(self.best.2 as i64, self.best.1 as i64)
    }

    fn certificate(&self) -> SweepCertificate {
        let graph = self.rotated.graph();
        SweepCertificate {
            u: graph.name(self.best.0).to_string(),
            m: self.best.1,
            d: self.best.2,
            v1: graph.name(self.v1).to_string(),
            word: self.rotated.to_string(),
            conjugator: self.conjugator.to_string(),
            subgraph: if self.used_lambda { "lambda" } else { "chain" },
        }
    }
}

/// Rotates a cyclically reduced `g` so that a minimum-degree syllable vertex
/// is rightmost, then measures `d(u, u^{w^m})` for every link vertex `u` and
/// power `m ≤ max_m`.
///
/// With `lambda` false, distances come from chain graphs, which is exact when
/// the girth is at least 6. Otherwise Λ is used, falling back to the chain
/// (an upper bound) when Λ exceeds `cap`.
pub fn link_sweep(g: &Element, max_m: usize, lambda: bool, cap: usize) -> Result<Sweep, TauError> {
    let graph = g.graph().clone();
    if g.is_identity() {
        return precondition("element is the identity");
    }
    let nf = g.nf();
    let pos = (0..nf.len())
        .rev()
        .min_by_key(|&p| (graph.degree(nf[p].vertex), nf[p].vertex))
        .expect("nonempty");
    let v1 = nf[pos].vertex;
    let seq = SyllableSeq::from_element(g);
    let rotated = seq.rotate_to_end(pos);
    let tail = Element::from_syllables(&graph, nf[pos + 1..].iter().copied())?;
    let conjugator = tail.inverse();
    let link: Vec<VertexId> = graph.neighbors(v1).to_vec();
    if link.is_empty() {
        return precondition("syllable vertex has empty link");
    }
    type Row = (Vec<(VertexId, usize, usize)>, bool);
    let rows: Vec<Result<Row, TauError>> = (1..=max_m)
        .into_par_iter()
        .map(|m| {
            let power = rotated.repeat(m);
            let w = power.element();
            if w.len() != power.len() {
                return precondition("power of the rotated word is not syllable-reduced");
            }
            let (sub, used_lambda) = if lambda {
                match build_lambda(&w, cap) {
                    Ok(sub) => (sub, true),
                    Err(ExtError::LambdaOverflow { .. }) => (build_chain(&power), false),
                    Err(e) => return Err(e.into()),
                }
            } else {
                (build_chain(&power), false)
            };
            let row = link
                .iter()
                .map(|&u| {
                    let x = ExtVertex::plain(&graph, u);
                    let d = sub.distance(&x, &x.act(&w)).expect("endpoints are in the subgraph");
                    (u, m, d)
                })
                .collect();
            Ok((row, used_lambda))
        })
        .collect();
    let mut table = Vec::new();
    let mut used_lambda = lambda;
    for row in rows {
        let (row, lam) = row?;
        used_lambda &= lam;
        table.extend(row);
    }
    let best = *table
        .iter()
        .min_by_key(|&&(u, m, d)| (Rational::new(d as i64, m as i64), m, u))
        .expect("nonempty sweep");
    Ok(Sweep {
        v1,
        rotated,
        conjugator,
        best,
        table,
        used_lambda,
    })
}

fn check_loxodromic_reduced(g: &Element) -> Result<(), TauError> {
    if cyclic_syllable_reduce(g).0.len() != g.len() {
        return precondition("element is not cyclically syllable-reduced");
    }
    if !classify_support(g.graph(), &g.support()).is_loxodromic() {
        return precondition("element is not loxodromic");
    }
    Ok(())
}

/// Exact `τ(g)` for girth at least 6 from a link sweep over powers up to
/// the degree of the rotated last syllable vertex.
pub fn tau_girth6(g: &Element) -> Result<TauResult, TauError> {
    if !graph_metrics(g.graph()).girth.at_least(6) {
        return precondition("girth of the defining graph is below 6");
    }
    check_loxodromic_reduced(g)?;
    let deg = g.nf().iter().map(|s| g.graph().degree(s.vertex)).min().unwrap_or(0);
    let sweep = link_sweep(g, deg, false, 0)?;
    Ok(TauResult {
        tau: sweep.value(),
        method: TauMethod::Girth6,
        certificate: Certificate::Girth6(sweep.certificate()),
        exact: true,
    })
}

/// Upper bound for any girth: Λ-distance link sweep over powers up to
/// `max(deg(v1), bound_powers)`.
pub(crate) fn tau_bounds_only(g: &Element, opts: &TauOptions) -> Result<TauResult, TauError> {
    check_loxodromic_reduced(g)?;
    let deg = g.nf().iter().map(|s| g.graph().degree(s.vertex)).min().unwrap_or(0);
    let sweep = link_sweep(g, deg.max(opts.bound_powers), true, opts.lambda_cap)?;
    let max_m = deg.max(opts.bound_powers);
    let mut bounds = Vec::with_capacity(max_m);
    let mut best: Option<Rational> = None;
    for m in 1..=max_m {
        for &(_, mm, d) in sweep.table.iter().filter(|t| t.1 == m) {
            let r = Rational::new(d as i64, mm as i64);
            best = Some(best.map_or(r, |b| b.min(r)));
        }
        bounds.push(Bound {
            n: m,
            upper: best.expect("nonempty row"),
        });
    }
    Ok(TauResult {
        tau: sweep.value(),
        method: TauMethod::BoundsOnly,
        certificate: Certificate::BoundsOnly {
            witness: sweep.certificate(),
            bounds,
        },
        exact: false,
    })
}

/// `u_n = d(x, x^{g^n})/n` for `n = 1..=n_max`, each an upper bound on `τ(g)`.
///
/// Distances come from Λ, or from the chain graph when Λ exceeds `cap`.
pub fn tau_bounds(
    g: &Element,
    n_max: usize,
    basepoint: &ExtVertex,
    cap: usize,
) -> Result<Vec<(usize, Rational)>, TauError> {
    if !classify_support(g.graph(), &cyclic_syllable_reduce(g).0.support()).is_loxodromic() {
        return precondition("element is not loxodromic");
    }
    let mut out = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let gn = g.pow(n as i64)?;
        let y = basepoint.act(&gn);
        let d = match ext_distance(basepoint, &y, DistanceMode::Lambda, cap) {
            Ok(d) => d,
            Err(ExtError::LambdaOverflow { .. }) => ext_distance(basepoint, &y, DistanceMode::Chain, cap)?,
            Err(e) => return Err(e.into()),
        };
        out.push((n, Rational::new(d as i64, n as i64)));
    }
    Ok(out)
}

/// Running minimum of a bound sequence.
pub fn running_min(bounds: &[(usize, Rational)]) -> Vec<(usize, Rational)> {
    let mut best: Option<Rational> = None;
    bounds
        .iter()
        .map(|&(n, r)| {
            let b = best.map_or(r, |b| b.min(r));
            best = Some(b);
            (n, b)
        })
        .collect()
}

pub(super) fn verify(g: &Element, result: &TauResult, opts: &TauOptions) -> Result<bool, TauError> {
    let graph = g.graph();
    let sweep_ok = |c: &SweepCertificate, lambda: bool| -> Result<bool, TauError> {
        let w = Element::parse(&c.word, graph)?;
        let conj = Element::parse(&c.conjugator, graph)?;
        if g.conjugate(&conj)? != w {
            return Ok(false);
        }
        let v1 = graph.vertex(&c.v1)?;
        let u = graph.vertex(&c.u)?;
        if !graph.adjacent(u, v1) || !w.support().contains(&v1) {
            return Ok(false);
        }
        let x = ExtVertex::plain(graph, u);
        let y = x.act(&w.pow(c.m as i64)?);
        let mode = if lambda { DistanceMode::Lambda } else { DistanceMode::Chain };
        let d = match ext_distance(&x, &y, mode, opts.lambda_cap) {
            Err(ExtError::LambdaOverflow { .. }) if lambda => ext_distance(&x, &y, DistanceMode::Chain, 0)?,
            other => other?,
        };
        Ok(d == c.d && result.tau * c.m as i64 == Rational::integer(c.d as i64))
    };
    match (&result.certificate, result.method) {
        (Certificate::Elliptic { .. }, TauMethod::Elliptic) => {
            let (r, _) = cyclic_syllable_reduce(g);
            Ok(result.tau.is_zero() && !classify_support(graph, &r.support()).is_loxodromic())
        }
        (Certificate::Tree { basepoint, d1, d2 }, TauMethod::Tree) => {
            let x = ExtVertex::plain(graph, graph.vertex(basepoint)?);
            let (r, _) = cyclic_syllable_reduce(g);
            let e1 = ext_distance(&x, &x.act(&r), DistanceMode::Chain, 0)?;
            let e2 = ext_distance(&x, &x.act(&r.pow(2)?), DistanceMode::Chain, 0)?;
            Ok(e1 == *d1 && e2 == *d2 && result.tau == Rational::integer(*d2 as i64 - *d1 as i64))
        }
        (Certificate::Syllable2 { v1, v2, d_gamma }, TauMethod::Syllable2) => {
            let d = graph
                .distance(graph.vertex(v1)?, graph.vertex(v2)?)
                .expect("connected");
            Ok(d == *d_gamma && result.tau == Rational::integer(2 * d as i64 - 4))
        }
        (Certificate::Girth6(c), TauMethod::Girth6) => {
            Ok(result.exact && c.subgraph == "chain" && sweep_ok(c, false)?)
        }
        (Certificate::BoundsOnly { witness, bounds }, TauMethod::BoundsOnly) => Ok(!result.exact
            && bounds.last().map(|b| b.upper) == Some(result.tau)
            && sweep_ok(witness, witness.subgraph == "lambda")?),
        _ => Ok(false),
    }
}
