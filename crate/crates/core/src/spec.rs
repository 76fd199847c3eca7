//! Shift specifications: forbidden-word SFTs and labeled-graph sofic shifts.

use std::collections::BTreeSet;

use crate::alphabet::{is_subword, Alphabet, Sym, Word};
use crate::error::{Error, Result};
use crate::graph::{Edge, LabeledGraph};

/// Resource limits shared by the exponential constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Subset-construction and automaton state limit.
    pub states: usize,
    /// Limit on explicitly enumerated words.
    pub words: usize,
    /// Limit on the number of choice symbols `2^|A| - 1`.
    pub choice_symbols: usize,
}

pub const STATE_CAP_ENV: &str = "SHIFTLAB_STATE_CAP";

impl Default for Caps {
    fn default() -> Self {
        Caps {
            states: 20_000,
            words: 1_000_000,
            choice_symbols: 4_095,
        }
    }
}

impl Caps {
    /// Defaults, with the state cap overridden by `SHIFTLAB_STATE_CAP`.
    pub fn from_env() -> Self {
        let mut caps = Caps::default();
        if let Some(cap) = std::env::var(STATE_CAP_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&c| c > 0)
        {
            caps.states = cap;
        }
        caps
    }
}

/// An M-step shift of finite type: all forbidden words have length M+1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SftSpec {
    alphabet: Alphabet,
    forbidden: BTreeSet<Word>,
    /// Forbidden words shorter than `memory + 1` as given; they only matter
    /// for finite words, where padding cannot see a word's right end.
    short: BTreeSet<Word>,
    memory: usize,
}

impl SftSpec {
    /// Normalizes an arbitrary finite forbidden list: shorter words are
    /// replaced by all their right extensions to the maximal length, and
    /// single-symbol constraints are lifted to length 2.
    pub fn new(alphabet: Alphabet, forbidden: Vec<Word>) -> Result<Self> {
        if forbidden.iter().any(|w| w.is_empty()) {
            return Err(Error::InvalidSpec("the empty word cannot be forbidden".into()));
        }
        if forbidden
            .iter()
            .any(|w| w.iter().any(|&s| s as usize >= alphabet.len()))
        {
            return Err(Error::InvalidSpec("forbidden word uses an unknown symbol".into()));
        }
        let Some(max_len) = forbidden.iter().map(Word::len).max() else {
            return Ok(SftSpec {
                alphabet,
                forbidden: BTreeSet::new(),
                short: BTreeSet::new(),
                memory: 0,
            });
        };
        let len = max_len.max(2);
        let k = alphabet.len() as Sym;
        let mut out = BTreeSet::new();
        let mut short = BTreeSet::new();
        for w in forbidden {
            let pad = len - w.len();
            if pad > 0 {
                short.insert(w.clone());
            }
            if w.len() == 1 && len == 2 && max_len == 1 {
                // lift a forbidden symbol to every 2-word containing it
                for b in 0..k {
                    out.insert(Word(vec![w[0], b]));
                    out.insert(Word(vec![b, w[0]]));
                }
                continue;
            }
            for ext in all_words(k, pad) {
                let mut v = w.0.clone();
                v.extend(ext);
                out.insert(Word(v));
            }
        }
        Ok(SftSpec {
            alphabet,
            forbidden: out,
            short,
            memory: len - 1,
        })
    }

    /// Parses forbidden words written as strings over the alphabet.
    pub fn from_strs(symbols: &[&str], forbidden: &[&str]) -> Result<Self> {
        let alphabet = Alphabet::new(symbols.iter().copied())?;
        let words = forbidden
            .iter()
            .map(|w| alphabet.parse_word(w))
            .collect::<Result<Vec<_>>>()?;
        Self::new(alphabet, words)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn forbidden(&self) -> &BTreeSet<Word> {
        &self.forbidden
    }

    pub fn memory(&self) -> usize {
        self.memory
    }

    /// True when `w` contains no forbidden word.
    pub fn admits(&self, w: &[Sym]) -> bool {
        let l = self.memory + 1;
        let padded_ok = w.len() < l || w.windows(l).all(|win| !self.forbidden.contains(win));
        padded_ok && !self.short.iter().any(|f| is_subword(f, w))
    }

    /// Copy of this spec with one forbidden word removed.
    pub fn without(&self, word: &Word) -> SftSpec {
        let mut s = self.clone();
        s.forbidden.remove(word);
        s
    }

    /// De Bruijn presentation: vertices are M-blocks, an edge `u -> v`
    /// carries the last symbol of `v` when `u·last(v)` is not forbidden.
    /// The result is right-resolving and trimmed.
    pub fn to_presentation(&self, caps: &Caps) -> Result<LabeledGraph> {
        let k = self.alphabet.len();
        let m = self.memory;
        let count = (k as f64).powi(m as i32);
        if count > caps.states as f64 {
            return Err(Error::blowup("de Bruijn presentation", caps.states));
        }
        let blocks: Vec<Vec<Sym>> = all_words(k as Sym, m).collect();
        let index_of = |b: &[Sym]| b.iter().fold(0usize, |acc, &s| acc * k + s as usize);
        let mut edges = Vec::new();
        for (i, u) in blocks.iter().enumerate() {
            for a in 0..k as Sym {
                let mut win = u.clone();
                win.push(a);
                if self.forbidden.contains(win.as_slice()) {
                    continue;
                }
                edges.push(Edge {
                    from: i,
                    to: index_of(&win[1..]),
                    label: a,
                });
            }
        }
        let names = blocks
            .iter()
            .map(|b| Word(b.clone()).display(&self.alphabet).to_string())
            .collect();
        let g = LabeledGraph::new(self.alphabet.clone(), names, edges)?.trim();
        if g.vertex_count() == 0 {
            return Err(Error::EmptyShift("no allowed block extends bi-infinitely".into()));
        }
        Ok(g)
    }
}

/// All words of length `len` over `0..k`, in lexicographic order.
pub(crate) fn all_words(k: Sym, len: usize) -> impl Iterator<Item = Vec<Sym>> {
    let total = (k as usize).checked_pow(len as u32).unwrap_or(usize::MAX);
    (0..total).map(move |mut idx| {
        let mut w = vec![0; len];
        for slot in w.iter_mut().rev() {
            *slot = (idx % k as usize) as Sym;
            idx /= k as usize;
        }
        w
    })
}

/// A shift space given by finite data.
#[derive(Clone, Debug, PartialEq)]
pub enum ShiftSpec {
    Sft(SftSpec),
    Sofic(LabeledGraph),
}

impl ShiftSpec {
    /// Wraps a graph, rejecting graphs that present the empty shift.
    pub fn sofic(g: LabeledGraph) -> Result<Self> {
        if g.trim().vertex_count() == 0 {
            return Err(Error::EmptyShift("graph has no bi-infinite path".into()));
        }
        Ok(ShiftSpec::Sofic(g))
    }

    pub fn alphabet(&self) -> &Alphabet {
        match self {
            ShiftSpec::Sft(s) => s.alphabet(),
            ShiftSpec::Sofic(g) => g.alphabet(),
        }
    }

    /// A trimmed right-resolving presentation of the shift.
    pub fn presentation(&self, caps: &Caps) -> Result<LabeledGraph> {
        match self {
            ShiftSpec::Sft(s) => s.to_presentation(caps),
            ShiftSpec::Sofic(g) => {
                let t = g.trim();
                if t.vertex_count() == 0 {
                    return Err(Error::EmptyShift("graph has no bi-infinite path".into()));
                }
                if t.is_right_resolving() {
                    Ok(t)
                } else {
                    t.determinize(caps.states)
                }
            }
        }
    }
}

impl From<SftSpec> for ShiftSpec {
    fn from(s: SftSpec) -> Self {
        ShiftSpec::Sft(s)
    }
}

/// Named shifts used throughout tests and examples.
pub mod catalog {
    use super::*;

    /// Binary sequences without two consecutive 1s.
    pub fn golden_mean() -> ShiftSpec {
        SftSpec::from_strs(&["0", "1"], &["11"]).unwrap().into()
    }

    pub fn full_shift(k: usize) -> ShiftSpec {
        let syms: Vec<String> = (0..k).map(|i| i.to_string()).collect();
        SftSpec::new(Alphabet::new(syms).unwrap(), Vec::new()).unwrap().into()
    }

    /// Runs of 1s between consecutive 0s have even length.
    pub fn even_shift() -> ShiftSpec {
        let g = LabeledGraph::from_names(
            Alphabet::new(["0", "1"]).unwrap(),
            &["a", "b"],
            &[("a", "a", "0"), ("a", "b", "1"), ("b", "a", "1")],
        )
        .unwrap();
        ShiftSpec::Sofic(g)
    }
}
