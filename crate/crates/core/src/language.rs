//! Block languages: enumeration of `B_n(X)`, exact block counts and
//! periodic points.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::alphabet::{is_subword, Sym, Word};
use crate::bitset::VertexSet;
use crate::code::PeriodicPoint;
use crate::error::{Error, Result};
use crate::graph::LabeledGraph;
use crate::spec::{Caps, ShiftSpec};

/// `B_n(X)` in lexicographic order. Fails once more than `caps.words`
/// words have been produced.
pub fn enumerate_words(spec: &ShiftSpec, n: usize, caps: &Caps) -> Result<Vec<Word>> {
    words_of(&spec.presentation(caps)?, n, caps.words)
}

/// Labels of length-`n` paths of `g` in lexicographic order, deduplicated.
pub fn words_of(g: &LabeledGraph, n: usize, cap: usize) -> Result<Vec<Word>> {
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(n);
    extend_words(g, &g.all_vertices(), n, cap, &mut prefix, &mut |w| {
        out.push(Word(w.to_vec()));
        true
    })?;
    Ok(out)
}

/// Depth-first lexicographic walk over words readable from `state`.
/// `visit` returns false to stop early; the return value reports whether
/// the walk ran to completion.
fn extend_words(
    g: &LabeledGraph,
    state: &VertexSet,
    remaining: usize,
    cap: usize,
    prefix: &mut Vec<Sym>,
    visit: &mut dyn FnMut(&[Sym]) -> bool,
) -> Result<bool> {
    let mut produced = 0usize;
    extend_inner(g, state, remaining, cap, &mut produced, prefix, visit)
}

fn extend_inner(
    g: &LabeledGraph,
    state: &VertexSet,
    remaining: usize,
    cap: usize,
    produced: &mut usize,
    prefix: &mut Vec<Sym>,
    visit: &mut dyn FnMut(&[Sym]) -> bool,
) -> Result<bool> {
    if remaining == 0 {
        *produced += 1;
        if *produced > cap {
            return Err(Error::budget("word enumeration", cap));
        }
        return Ok(visit(prefix));
    }
    for a in g.alphabet().iter() {
        let next = g.successors(state, a);
        if next.is_empty() {
            continue;
        }
        prefix.push(a);
        let go_on = extend_inner(g, &next, remaining - 1, cap, produced, prefix, visit)?;
        prefix.pop();
        if !go_on {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exact `|B_n|` for `n = 0..=n_max`, counting subset states of the
/// automaton read from all vertices so every word is counted once.
pub fn count_words(g: &LabeledGraph, n_max: usize, state_cap: usize) -> Result<Vec<BigUint>> {
    let mut ids: HashMap<VertexSet, usize> = HashMap::new();
    let mut states: Vec<VertexSet> = Vec::new();
    let mut trans: Vec<Vec<usize>> = Vec::new();
    let mut intern = |s: VertexSet, states: &mut Vec<VertexSet>| -> Result<usize> {
        if let Some(&id) = ids.get(&s) {
            return Ok(id);
        }
        if states.len() >= state_cap {
            return Err(Error::blowup("block counting automaton", state_cap));
        }
        ids.insert(s.clone(), states.len());
        states.push(s);
        Ok(states.len() - 1)
    };
    let start = intern(g.all_vertices(), &mut states)?;
    let mut counts: BTreeMap<usize, BigUint> = BTreeMap::from([(start, BigUint::one())]);
    let mut totals = vec![BigUint::one()];
    for _ in 0..n_max {
        let mut next: BTreeMap<usize, BigUint> = BTreeMap::new();
        for (&s, c) in &counts {
            while trans.len() <= s {
                trans.push(Vec::new());
            }
            if trans[s].is_empty() {
                let mut t = Vec::new();
                for a in g.alphabet().iter() {
                    let succ = g.successors(&states[s], a);
                    if !succ.is_empty() {
                        t.push(intern(succ, &mut states)?);
                    }
                }
                // an empty transition list is stored as a sentinel to avoid recomputation
                if t.is_empty() {
                    t.push(usize::MAX);
                }
                trans[s] = t;
            }
            for &t in &trans[s] {
                if t != usize::MAX {
                    *next.entry(t).or_insert_with(BigUint::zero) += c;
                }
            }
        }
        totals.push(next.values().sum());
        counts = next;
    }
    Ok(totals)
}

/// All period-`p` points in lexicographic order of their length-`p` word.
pub fn periodic_points(spec: &ShiftSpec, p: usize, caps: &Caps) -> Result<Vec<PeriodicPoint>> {
    let g = spec.presentation(caps)?;
    periodic_points_of(&g, p, caps.words)
}

pub fn periodic_points_of(g: &LabeledGraph, p: usize, cap: usize) -> Result<Vec<PeriodicPoint>> {
    if p == 0 {
        return Err(Error::InvalidSpec("period must be at least 1".into()));
    }
    let mut out = Vec::new();
    let mut err = None;
    let mut prefix = Vec::with_capacity(p);
    // word enumeration is bounded by its own cap; the point list by `cap`
    extend_words(g, &g.all_vertices(), p, usize::MAX, &mut prefix, &mut |w| {
        if g.presents_periodic(w) {
            if out.len() == cap {
                err = Some(Error::budget("periodic point enumeration", cap));
                return false;
            }
            out.push(PeriodicPoint::new(Word(w.to_vec())));
        }
        true
    })?;
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// Lexicographically least word of length `n` in the language of a
/// trimmed graph.
pub fn least_word(g: &LabeledGraph, n: usize) -> Option<Word> {
    let mut state = g.all_vertices();
    let mut w = Vec::with_capacity(n);
    for _ in 0..n {
        let (a, next) = g
            .alphabet()
            .iter()
            .map(|a| (a, g.successors(&state, a)))
            .find(|(_, s)| !s.is_empty())?;
        w.push(a);
        state = next;
    }
    Some(Word(w))
}

/// Lexicographically least word of length `k` in the language of a trimmed
/// graph that does not occur inside `avoid`.
pub fn least_word_avoiding(g: &LabeledGraph, k: usize, avoid: &[Sym]) -> Option<Word> {
    // Depth-first in lexicographic order; branching only continues while the
    // prefix still occurs in `avoid`, after which the greedy completion is
    // the least extension.
    fn go(g: &LabeledGraph, state: &VertexSet, k: usize, avoid: &[Sym], prefix: &mut Vec<Sym>) -> Option<Vec<Sym>> {
        if prefix.len() == k {
            return (!is_subword(prefix, avoid)).then(|| prefix.clone());
        }
        for a in g.alphabet().iter() {
            let next = g.successors(state, a);
            if next.is_empty() {
                continue;
            }
            prefix.push(a);
            let found = if !is_subword(prefix, avoid) {
                complete_greedy(g, &next, k - prefix.len()).map(|tail| {
                    let mut w = prefix.clone();
                    w.extend(tail);
                    w
                })
            } else {
                go(g, &next, k, avoid, prefix)
            };
            prefix.pop();
            if found.is_some() {
                return found;
            }
        }
        None
    }
    go(g, &g.all_vertices(), k, avoid, &mut Vec::with_capacity(k)).map(Word)
}

fn complete_greedy(g: &LabeledGraph, state: &VertexSet, len: usize) -> Option<Vec<Sym>> {
    let mut s = state.clone();
    let mut w = Vec::with_capacity(len);
    for _ in 0..len {
        let (a, next) = g
            .alphabet()
            .iter()
            .map(|a| (a, g.successors(&s, a)))
            .find(|(_, n)| !n.is_empty())?;
        w.push(a);
        s = next;
    }
    Some(w)
}
