//! Sliding block codes, periodic points and higher block recoding.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::alphabet::{Alphabet, Sym, Word};
use crate::error::{Error, Result};
use crate::graph::{Edge, LabeledGraph};
use crate::language::words_of;
use crate::spec::{Caps, ShiftSpec};

/// A point `x` with `x_{i+p} = x_i`, stored as one period starting at 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PeriodicPoint {
    cycle: Word,
}

impl PeriodicPoint {
    pub fn new(cycle: Word) -> Self {
        assert!(!cycle.is_empty(), "a periodic point needs period >= 1");
        PeriodicPoint { cycle }
    }

    pub fn period(&self) -> usize {
        self.cycle.len()
    }

    pub fn cycle(&self) -> &Word {
        &self.cycle
    }

    /// `σ^k(x)`: the point read from coordinate `k`.
    pub fn rotate(&self, k: usize) -> PeriodicPoint {
        let p = self.period();
        let k = k % p;
        let mut c = self.cycle.0[k..].to_vec();
        c.extend_from_slice(&self.cycle.0[..k]);
        PeriodicPoint::new(Word(c))
    }

    /// `len` consecutive coordinates starting at `start` (may be negative).
    pub fn window(&self, start: isize, len: usize) -> Vec<Sym> {
        let p = self.period() as isize;
        (0..len as isize)
            .map(|i| self.cycle.0[(start + i).rem_euclid(p) as usize])
            .collect()
    }
}

type RuleFn = dyn Fn(&[Sym]) -> Option<Sym> + Send + Sync;

/// The local rule of a sliding block code.
#[derive(Clone)]
pub enum BlockMap {
    /// Explicit window → symbol table.
    Table(BTreeMap<Vec<Sym>, Sym>),
    /// Rule evaluated on demand, for windows too long to tabulate.
    Rule(Arc<RuleFn>),
}

impl fmt::Debug for BlockMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlockMap::Table(t) => write!(f, "Table({} windows)", t.len()),
            BlockMap::Rule(_) => f.write_str("Rule"),
        }
    }
}

/// `φ(x)_i = Φ(x_{[i-m, i+n]})` with memory `m` and anticipation `n`.
#[derive(Clone, Debug)]
pub struct SlidingBlockCode {
    pub memory: usize,
    pub anticipation: usize,
    pub source: Alphabet,
    pub target: Alphabet,
    pub map: BlockMap,
}

impl SlidingBlockCode {
    pub fn identity(alphabet: &Alphabet) -> Self {
        let table = alphabet.iter().map(|s| (vec![s], s)).collect();
        SlidingBlockCode {
            memory: 0,
            anticipation: 0,
            source: alphabet.clone(),
            target: alphabet.clone(),
            map: BlockMap::Table(table),
        }
    }

    pub fn window_len(&self) -> usize {
        self.memory + self.anticipation + 1
    }

    pub fn eval(&self, window: &[Sym]) -> Option<Sym> {
        debug_assert_eq!(window.len(), self.window_len());
        match &self.map {
            BlockMap::Table(t) => t.get(window).copied(),
            BlockMap::Rule(f) => f(window),
        }
    }

    fn undefined(&self, window: &[Sym]) -> Error {
        Error::UndefinedWindow(self.source.render(window))
    }

    /// Image of a periodic point; windows wrap around the period.
    pub fn apply(&self, p: &PeriodicPoint) -> Result<PeriodicPoint> {
        let len = self.window_len();
        let ext = p.window(-(self.memory as isize), p.period() + len - 1);
        let out = ext
            .windows(len)
            .map(|win| self.eval(win).ok_or_else(|| self.undefined(win)))
            .collect::<Result<Vec<_>>>()?;
        Ok(PeriodicPoint::new(Word(out)))
    }

    /// Image of a finite word: one output symbol per full window.
    pub fn apply_word(&self, w: &[Sym]) -> Result<Vec<Sym>> {
        if w.len() < self.window_len() {
            return Ok(Vec::new());
        }
        w.windows(self.window_len())
            .map(|win| self.eval(win).ok_or_else(|| self.undefined(win)))
            .collect()
    }

    /// Same code with an explicit table over the given windows.
    pub fn tabulate<'a>(&self, windows: impl IntoIterator<Item = &'a [Sym]>) -> Result<SlidingBlockCode> {
        let table = windows
            .into_iter()
            .map(|w| self.eval(w).map(|s| (w.to_vec(), s)).ok_or_else(|| self.undefined(w)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(SlidingBlockCode {
            map: BlockMap::Table(table),
            ..self.clone()
        })
    }
}

/// `X^[N]` together with the conjugacy `β_N` and its inverse.
#[derive(Clone, Debug)]
pub struct HigherBlock {
    pub shift: ShiftSpec,
    pub code: SlidingBlockCode,
    pub inverse: SlidingBlockCode,
}

/// Recodes `X` over the alphabet of its `N`-blocks. The result is presented
/// by the graph whose vertices are `(N-1)`-paths of a right-resolving
/// presentation and whose edges are `N`-paths labeled by their blocks.
pub fn higher_block(spec: &ShiftSpec, n: usize, caps: &Caps) -> Result<HigherBlock> {
    if n == 0 {
        return Err(Error::InvalidSpec("block length must be at least 1".into()));
    }
    let base = spec.alphabet();
    if n == 1 {
        return Ok(HigherBlock {
            shift: spec.clone(),
            code: SlidingBlockCode::identity(base),
            inverse: SlidingBlockCode::identity(base),
        });
    }
    let g = spec.presentation(caps)?;
    let blocks = words_of(&g, n, caps.words)?;
    let names: Vec<String> = blocks.iter().map(|b| base.render(b)).collect();
    let alphabet = Alphabet::new(names)?;
    let block_sym: BTreeMap<Vec<Sym>, Sym> = blocks
        .iter()
        .enumerate()
        .map(|(i, b)| (b.0.clone(), i as Sym))
        .collect();

    // paths of n-1 edges, as edge-index sequences, in lexicographic order
    let mut paths: Vec<Vec<usize>> = (0..g.edge_count()).map(|e| vec![e]).collect();
    for _ in 1..n - 1 {
        let mut longer = Vec::new();
        for p in &paths {
            let last = g.edges()[*p.last().unwrap()].to;
            for (i, e) in g.edges().iter().enumerate() {
                if e.from == last {
                    let mut q = p.clone();
                    q.push(i);
                    longer.push(q);
                }
            }
            if longer.len() > caps.states {
                return Err(Error::blowup("higher block presentation", caps.states));
            }
        }
        paths = longer;
    }
    if paths.len() > caps.states {
        return Err(Error::blowup("higher block presentation", caps.states));
    }
    let index: BTreeMap<&[usize], usize> = paths.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
    let mut edges = Vec::new();
    for (i, p) in paths.iter().enumerate() {
        let last = g.edges()[*p.last().unwrap()].to;
        for (ei, e) in g.edges().iter().enumerate() {
            if e.from != last {
                continue;
            }
            let mut full = p.clone();
            full.push(ei);
            let label: Vec<Sym> = full.iter().map(|&k| g.edges()[k].label).collect();
            let to = index[&full[1..]];
            edges.push(Edge {
                from: i,
                to,
                label: block_sym[&label],
            });
        }
    }
    let vertex_names = paths.iter().map(|p| path_name(&g, p)).collect();
    let graph = LabeledGraph::new(alphabet.clone(), vertex_names, edges)?.trim();

    let code = SlidingBlockCode {
        memory: 0,
        anticipation: n - 1,
        source: base.clone(),
        target: alphabet.clone(),
        map: BlockMap::Table(block_sym.clone()),
    };
    let inverse = SlidingBlockCode {
        memory: 0,
        anticipation: 0,
        source: alphabet,
        target: base.clone(),
        map: BlockMap::Table(block_sym.iter().map(|(b, &s)| (vec![s], b[0])).collect()),
    };
    Ok(HigherBlock {
        shift: ShiftSpec::Sofic(graph),
        code,
        inverse,
    })
}

fn path_name(g: &LabeledGraph, p: &[usize]) -> String {
    let e0 = &g.edges()[p[0]];
    let mut s = g.vertices()[e0.from].clone();
    for &k in p {
        let e = &g.edges()[k];
        s.push('|');
        s.push_str(g.alphabet().name(e.label));
        s.push('>');
        s.push_str(&g.vertices()[e.to]);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::topological_entropy;
    use crate::language::{enumerate_words, periodic_points};
    use crate::spec::catalog;

    #[test]
    fn identity_code_fixes_points() {
        let a = Alphabet::new(["0", "1"]).unwrap();
        let id = SlidingBlockCode::identity(&a);
        let p = PeriodicPoint::new(a.parse_word("0100").unwrap());
        assert_eq!(id.apply(&p).unwrap(), p);
    }

    #[test]
    fn xor_with_next() {
        let a = Alphabet::new(["0", "1"]).unwrap();
        let xor = SlidingBlockCode {
            memory: 0,
            anticipation: 1,
            source: a.clone(),
            target: a.clone(),
            map: BlockMap::Rule(Arc::new(|w: &[Sym]| Some(w[0] ^ w[1]))),
        };
        let img = xor.apply(&PeriodicPoint::new(a.parse_word("01").unwrap())).unwrap();
        assert_eq!(a.render(img.cycle()), "11");
        assert_eq!(xor.apply_word(&[0, 1, 1]).unwrap(), vec![1, 0]);
    }

    #[test]
    fn undefined_window_is_reported() {
        let a = Alphabet::new(["0", "1"]).unwrap();
        let partial = SlidingBlockCode {
            map: BlockMap::Table(BTreeMap::from([(vec![0], 0)])),
            ..SlidingBlockCode::identity(&a)
        };
        let err = partial.apply(&PeriodicPoint::new(Word(vec![0, 1]))).unwrap_err();
        assert!(matches!(err, Error::UndefinedWindow(w) if w == "1"));
    }

    #[test]
    fn golden_mean_two_block_alphabet() {
        let hb = higher_block(&catalog::golden_mean(), 2, &Caps::default()).unwrap();
        assert_eq!(hb.shift.alphabet().symbols(), &["00", "01", "10"]);
        let words = enumerate_words(&hb.shift, 2, &Caps::default()).unwrap();
        let rendered: Vec<String> = words.iter().map(|w| hb.shift.alphabet().render(w)).collect();
        // overlap condition: ab allowed iff a's last symbol equals b's first
        assert_eq!(rendered, vec!["00.00", "00.01", "01.10", "10.00", "10.01"]);
    }

    #[test]
    fn beta_two_on_period_two_point() {
        let gm = catalog::golden_mean();
        let hb = higher_block(&gm, 2, &Caps::default()).unwrap();
        let p = PeriodicPoint::new(gm.alphabet().parse_word("01").unwrap());
        let img = hb.code.apply(&p).unwrap();
        assert_eq!(hb.shift.alphabet().render(img.cycle()), "01.10");
        assert_eq!(hb.inverse.apply(&img).unwrap(), p);
    }

    #[test]
    fn n_equal_one_is_identity() {
        let gm = catalog::golden_mean();
        let hb = higher_block(&gm, 1, &Caps::default()).unwrap();
        assert_eq!(hb.shift, gm);
        let p = PeriodicPoint::new(Word(vec![0, 1, 0]));
        assert_eq!(hb.code.apply(&p).unwrap(), p);
    }

    #[test]
    fn higher_block_preserves_entropy() {
        let gm = catalog::golden_mean();
        let h = topological_entropy(&gm, &Caps::default()).unwrap().value;
        for n in 2..=4 {
            let hb = higher_block(&gm, n, &Caps::default()).unwrap();
            let hn = topological_entropy(&hb.shift, &Caps::default()).unwrap().value;
            assert!((h - hn).abs() < 1e-9, "N={n}: {h} vs {hn}");
        }
    }

    #[test]
    fn rotation_commutes_with_beta() {
        let spec = catalog::even_shift();
        let hb = higher_block(&spec, 3, &Caps::default()).unwrap();
        for p in periodic_points(&spec, 6, &Caps::default()).unwrap() {
            let img = hb.code.apply(&p).unwrap();
            assert_eq!(hb.code.apply(&p.rotate(1)).unwrap(), img.rotate(1));
            assert_eq!(hb.inverse.apply(&img).unwrap(), p);
        }
    }
}
