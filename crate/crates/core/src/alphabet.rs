//! Alphabets, symbols and finite words.
//!
//! Symbols are stored as indices into an [`Alphabet`]; the alphabet order is
//! the linear order used for lexicographic enumeration and tie-breaking.

use std::borrow::Borrow;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// Index of a symbol inside its alphabet.
pub type Sym = u32;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<String>,
    index: BTreeMap<String, Sym>,
}

impl Alphabet {
    pub fn new<I, S>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::InvalidSpec("alphabet is empty".into()));
        }
        let mut index = BTreeMap::new();
        for (i, s) in symbols.iter().enumerate() {
            if index.insert(s.clone(), i as Sym).is_some() {
                return Err(Error::InvalidSpec(format!("duplicate symbol {s:?}")));
            }
        }
        Ok(Alphabet { symbols, index })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn name(&self, s: Sym) -> &str {
        &self.symbols[s as usize]
    }

    pub fn lookup(&self, name: &str) -> Option<Sym> {
        self.index.get(name).copied()
    }

    pub fn sym(&self, name: &str) -> Result<Sym> {
        self.lookup(name)
            .ok_or_else(|| Error::InvalidSpec(format!("symbol {name:?} is not in the alphabet")))
    }

    pub fn iter(&self) -> impl Iterator<Item = Sym> + '_ {
        0..self.symbols.len() as Sym
    }

    /// True when some symbol is longer than one character, in which case
    /// rendered words separate symbols with `.`.
    pub fn multi_char(&self) -> bool {
        self.symbols.iter().any(|s| s.chars().count() != 1)
    }

    /// Parses a word from a string. Multi-character alphabets require `.`
    /// separators; single-character alphabets read one char per symbol.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        if text.is_empty() {
            return Ok(Word::empty());
        }
        let syms = if self.multi_char() {
            text.split('.').map(|p| self.sym(p)).collect::<Result<Vec<_>>>()?
        } else {
            text.chars()
                .map(|c| self.sym(&c.to_string()))
                .collect::<Result<Vec<_>>>()?
        };
        Ok(Word(syms))
    }

    pub fn render(&self, word: &[Sym]) -> String {
        let sep = if self.multi_char() { "." } else { "" };
        word.iter().map(|&s| self.name(s)).collect::<Vec<_>>().join(sep)
    }
}

/// A finite word over some alphabet. The empty word is allowed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Sym>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Sym] {
        &self.0
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> WordDisplay<'a> {
        WordDisplay {
            word: &self.0,
            alphabet,
        }
    }

    pub fn concat(parts: &[&[Sym]]) -> Word {
        Word(parts.iter().flat_map(|p| p.iter().copied()).collect())
    }
}

impl From<Vec<Sym>> for Word {
    fn from(v: Vec<Sym>) -> Self {
        Word(v)
    }
}

impl Borrow<[Sym]> for Word {
    fn borrow(&self) -> &[Sym] {
        &self.0
    }
}

impl std::ops::Deref for Word {
    type Target = [Sym];
    fn deref(&self) -> &[Sym] {
        &self.0
    }
}

pub struct WordDisplay<'a> {
    word: &'a [Sym],
    alphabet: &'a Alphabet,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("ε");
        }
        f.write_str(&self.alphabet.render(self.word))
    }
}

/// Contiguous occurrence test; the empty word occurs in every word.
pub fn is_subword(u: &[Sym], w: &[Sym]) -> bool {
    u.is_empty() || (u.len() <= w.len() && w.windows(u.len()).any(|win| win == u))
}
