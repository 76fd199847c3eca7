//! Choice symbols (non-empty subsets of an alphabet) and their fillings.

use num_bigint::BigUint;
use num_traits::One;

use crate::alphabet::{Alphabet, Sym, Word};
use crate::error::{Error, Result};

/// A non-empty subset of a base alphabet, stored as a bit mask.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChoiceSymbol(u64);

impl ChoiceSymbol {
    pub fn from_members(members: &[Sym]) -> Result<Self> {
        let mut mask = 0u64;
        for &s in members {
            if s >= 64 {
                return Err(Error::InvalidSpec(
                    "choice symbols support at most 64 base symbols".into(),
                ));
            }
            mask |= 1 << s;
        }
        if mask == 0 {
            return Err(Error::InvalidSpec("choice symbol must be non-empty".into()));
        }
        Ok(ChoiceSymbol(mask))
    }

    pub fn singleton(s: Sym) -> Self {
        ChoiceSymbol(1 << s)
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn size(self) -> u32 {
        self.0.count_ones()
    }

    pub fn contains(self, s: Sym) -> bool {
        s < 64 && self.0 & (1 << s) != 0
    }

    /// Members in alphabet order.
    pub fn members(self) -> impl Iterator<Item = Sym> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            if m == 0 {
                return None;
            }
            let t = m.trailing_zeros();
            m &= m - 1;
            Some(t as Sym)
        })
    }

    pub fn first(self) -> Sym {
        self.0.trailing_zeros() as Sym
    }

    pub fn second(self) -> Option<Sym> {
        self.members().nth(1)
    }

    /// Canonical `{a,b}` encoding with members in alphabet order.
    pub fn encode(self, base: &Alphabet) -> String {
        let names: Vec<&str> = self.members().map(|s| base.name(s)).collect();
        format!("{{{}}}", names.join(","))
    }
}

/// The power alphabet `Â` of a base alphabet, ordered by subset size and
/// then by member list.
#[derive(Clone, Debug, PartialEq)]
pub struct ChoiceAlphabet {
    base: Alphabet,
    symbols: Vec<ChoiceSymbol>,
    alphabet: Alphabet,
}

impl ChoiceAlphabet {
    pub fn new(base: &Alphabet, cap: usize) -> Result<Self> {
        let k = base.len();
        let size = if k >= 63 { usize::MAX } else { (1usize << k) - 1 };
        if k >= 63 || size > cap {
            return Err(Error::AlphabetBlowup { size, cap });
        }
        let mut symbols: Vec<ChoiceSymbol> = (1..=size as u64).map(ChoiceSymbol).collect();
        symbols.sort_by_key(|c| (c.size(), c.members().collect::<Vec<_>>()));
        let alphabet = Alphabet::new(symbols.iter().map(|c| c.encode(base)))?;
        Ok(ChoiceAlphabet {
            base: base.clone(),
            symbols,
            alphabet,
        })
    }

    pub fn base(&self) -> &Alphabet {
        &self.base
    }

    /// The choice symbols as a plain alphabet of encodings.
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn symbols(&self) -> &[ChoiceSymbol] {
        &self.symbols
    }

    pub fn choice(&self, s: Sym) -> ChoiceSymbol {
        self.symbols[s as usize]
    }

    pub fn index_of(&self, c: ChoiceSymbol) -> Sym {
        self.symbols
            .iter()
            .position(|&d| d == c)
            .expect("choice symbol in alphabet") as Sym
    }
}

/// A finite word of choice symbols.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChoiceWord(pub Vec<ChoiceSymbol>);

impl ChoiceWord {
    pub fn parse(base: &Alphabet, parts: &[&[&str]]) -> Result<Self> {
        parts
            .iter()
            .map(|p| {
                let m = p.iter().map(|s| base.sym(s)).collect::<Result<Vec<_>>>()?;
                ChoiceSymbol::from_members(&m)
            })
            .collect::<Result<Vec<_>>>()
            .map(ChoiceWord)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|Φ(ŵ)| = Π |ŵ_i|`, exactly.
    pub fn filling_count(&self) -> BigUint {
        self.0
            .iter()
            .fold(BigUint::one(), |acc, c| acc * BigUint::from(c.size()))
    }

    /// `Φ(ŵ)` in lexicographic order; fails when `|Φ(ŵ)| > cap`.
    pub fn fillings(&self, cap: usize) -> Result<Vec<Word>> {
        if self.filling_count() > BigUint::from(cap) {
            return Err(Error::budget("filling enumeration", cap));
        }
        let mut out = vec![Vec::with_capacity(self.len())];
        for c in &self.0 {
            out = out
                .into_iter()
                .flat_map(|w| {
                    c.members().map(move |s| {
                        let mut v = w.clone();
                        v.push(s);
                        v
                    })
                })
                .collect();
        }
        Ok(out.into_iter().map(Word).collect())
    }

    pub fn encode(&self, base: &Alphabet) -> Vec<String> {
        self.0.iter().map(|c| c.encode(base)).collect()
    }
}
