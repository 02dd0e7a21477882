use std::collections::{BTreeSet, HashSet, VecDeque};
use std::sync::Arc;

use itertools::Itertools;

use super::OracleError;
use crate::graph::{SimplicialGraph, VertexId};
use crate::word::{Element, Syllable};

/// A generator or its inverse: `(vertex, ±1)`.
pub type Letter = (VertexId, i8);

/// Expands a syllable sequence into letters.
pub fn letters(syllables: &[Syllable]) -> Vec<Letter> {
    syllables
        .iter()
        .flat_map(|s| {
            let sign = if s.exp > 0 { 1 } else { -1 };
            std::iter::repeat_n((s.vertex, sign), s.exp.unsigned_abs() as usize)
        })
        .collect()
}

/// Number of maximal runs of letters on the same vertex.
pub fn runs(word: &[Letter]) -> usize {
    word.iter().dedup_by(|a, b| a.0 == b.0).count()
}

/// Every word reachable from `word` by swapping adjacent letters on distinct
/// adjacent vertices and, with `cancel`, deleting adjacent inverse pairs.
pub fn rewrite_closure(
    graph: &SimplicialGraph,
    word: &[Letter],
    cancel: bool,
    guard: usize,
) -> Result<HashSet<Vec<Letter>>, OracleError> {
    let mut seen: HashSet<Vec<Letter>> = HashSet::from([word.to_vec()]);
    let mut queue = VecDeque::from([word.to_vec()]);
    while let Some(w) = queue.pop_front() {
        for i in 0..w.len().saturating_sub(1) {
            let (a, b) = (w[i], w[i + 1]);
            let mut next = Vec::new();
            if a.0 != b.0 && graph.adjacent(a.0, b.0) {
                let mut x = w.clone();
                x.swap(i, i + 1);
                next.push(x);
            }
            if cancel && a.0 == b.0 && a.1 == -b.1 {
                let mut x = w.clone();
                x.drain(i..i + 2);
                next.push(x);
            }
            for x in next {
                if seen.insert(x.clone()) {
                    if seen.len() > guard {
                        return Err(OracleError::Guard(format!("rewrite closure above {guard} words")));
                    }
                    queue.push_back(x);
                }
            }
        }
    }
    Ok(seen)
}

/// Fewest syllables over every word equal to `word` by rewriting.
pub fn brute_syllable_length(
    graph: &SimplicialGraph,
    word: &[Letter],
    guard: usize,
) -> Result<usize, OracleError> {
    Ok(rewrite_closure(graph, word, true, guard)?
        .iter()
        .map(|w| runs(w))
        .min()
        .expect("closure contains the start word"))
}

/// Elements of word length at most `radius`, by breadth-first search over letters.
pub fn elements_within(
    graph: &Arc<SimplicialGraph>,
    radius: usize,
    guard: usize,
) -> Result<Vec<Element>, OracleError> {
    let letters: Vec<Element> = graph
        .vertices()
        .flat_map(|v| {
            let x = Element::generator(graph, v);
            [x.clone(), x.inverse()]
        })
        .collect();
    let mut seen: BTreeSet<Element> = BTreeSet::from([Element::identity(graph)]);
    let mut frontier = vec![Element::identity(graph)];
    for _ in 0..radius {
        let mut next = Vec::new();
        for h in &frontier {
            for a in &letters {
                let x = h.mul(a);
                if seen.insert(x.clone()) {
                    if seen.len() > guard {
                        return Err(OracleError::Guard(format!("more than {guard} conjugators")));
                    }
                    next.push(x);
                }
            }
        }
        frontier = next;
    }
    Ok(seen.into_iter().collect())
}

/// `min ‖h⁻¹ g h‖_syl` over `|h| ≤ radius`.
pub fn brute_min_syllable_conjugate(g: &Element, radius: usize, guard: usize) -> Result<usize, OracleError> {
    Ok(elements_within(g.graph(), radius, guard)?
        .iter()
        .map(|h| g.conjugate(h).expect("exponents stay small").len())
        .min()
        .expect("identity is a conjugator"))
}

/// Whether `subset` lies in `A ∪ B` for disjoint nonempty vertex sets `A`, `B`
/// with every vertex of `A` adjacent to every vertex of `B`, by trying all
/// `3^|V|` assignments.
pub fn exhaustive_join_search(graph: &SimplicialGraph, subset: &BTreeSet<VertexId>) -> Result<bool, OracleError> {
    let n = graph.len();
    if n > 12 {
        return Err(OracleError::Guard(format!("{n} vertices exceeds the join-search limit of 12")));
    }
    let mut side = vec![0u8; n];
    for code in 0..3usize.pow(n as u32) {
        let mut c = code;
        for s in side.iter_mut() {
            *s = (c % 3) as u8;
            c /= 3;
        }
        if subset.iter().any(|v| side[v.index()] == 0) {
            continue;
        }
        let a: Vec<usize> = (0..n).filter(|&i| side[i] == 1).collect();
        let b: Vec<usize> = (0..n).filter(|&i| side[i] == 2).collect();
        if a.is_empty() || b.is_empty() {
            continue;
        }
        if a.iter().all(|&x| b.iter().all(|&y| graph.adjacent(VertexId(x), VertexId(y)))) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Fewest star words in a factorisation of `g` with additive word length:
/// the minimum over all reduced words of a cut into contiguous star blocks.
pub fn brute_star_length(g: &Element, guard: usize) -> Result<usize, OracleError> {
    let graph = g.graph();
    let start = letters(g.nf());
    let class = rewrite_closure(graph, &start, false, guard)?;
    let is_star = |block: &[Letter]| {
        graph
            .vertices()
            .any(|v| block.iter().all(|&(x, _)| x == v || graph.adjacent(v, x)))
    };
    let mut best = usize::MAX;
    for w in &class {
        let n = w.len();
        let mut cost = vec![usize::MAX; n + 1];
        cost[0] = 0;
        for j in 1..=n {
            for i in 0..j {
                if cost[i] != usize::MAX && is_star(&w[i..j]) {
                    cost[j] = cost[j].min(cost[i] + 1);
                }
            }
        }
        best = best.min(cost[n]);
    }
    Ok(best)
}

/// Distinct orderings of the syllables of `g` that multiply to `g` without
/// merging, found by trying every permutation.
pub fn brute_decomposition_count(g: &Element) -> Result<usize, OracleError> {
    let n = g.len();
    if n > 8 {
        return Err(OracleError::Guard(format!("{n} syllables exceeds the permutation limit of 8")));
    }
    let nf = g.nf();
    let found: HashSet<Vec<Syllable>> = (0..n)
        .permutations(n)
        .map(|p| p.iter().map(|&i| nf[i]).collect::<Vec<_>>())
        .filter(|seq| {
            let e = Element::from_syllables(g.graph(), seq.iter().copied()).expect("small exponents");
            e == *g && runs(&letters(seq)) == n
        })
        .collect();
    Ok(found.len())
}
