//! Parameters of the marker construction: the core component, the lengths
//! `n` and `k`, the marker words `M`, `S`, `C` and the bucket `Υ`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Deserialize;

use crate::alphabet::{is_subword, Sym, Word};
use crate::entropy::{ln_big, perron_eigenvalue};
use crate::error::{Error, Result};
use crate::graph::LabeledGraph;
use crate::language::{count_words, least_word, least_word_avoiding, words_of};
use crate::spec::{Caps, ShiftSpec};

/// Largest `n` tried by the length search.
pub const MAX_SEARCH_LENGTH: usize = 1_000_000;
/// Block lengths used for the empirical growth constant.
const ALPHA_HORIZON: usize = 64;

/// The entropy-carrying irreducible part of a presentation.
#[derive(Clone, Debug)]
pub struct Core {
    pub graph: LabeledGraph,
    /// Vertex count.
    pub v: usize,
    /// Largest shortest-path distance between two vertices.
    pub rho: usize,
    pub lambda: f64,
    /// `0.99 · min_{k ≤ 64} |B_k| / λ^k`, a search heuristic only.
    pub alpha: f64,
}

/// Picks the component of largest Perron eigenvalue (first on ties) of the
/// right-resolving presentation and minimizes it.
pub fn select_core(spec: &ShiftSpec, caps: &Caps) -> Result<Core> {
    let g = spec.presentation(caps)?;
    let mut best: Option<(f64, LabeledGraph)> = None;
    for comp in g.scc_decompose() {
        let lambda = perron_eigenvalue(&comp.adjacency())?.eigenvalue;
        if best.as_ref().is_none_or(|(b, _)| lambda > *b + 1e-12) {
            best = Some((lambda, comp));
        }
    }
    let (lambda, comp) = best.ok_or_else(|| Error::EmptyShift("presentation has no cycle".into()))?;
    if lambda <= 1.0 + 1e-12 {
        return Err(Error::ZeroEntropy);
    }
    let graph = comp.minimize_right_resolving()?;
    let rho = graph
        .shortest_path_diameter()
        .ok_or_else(|| Error::Internal("irreducible core is disconnected".into()))?;
    let counts = count_words(&graph, ALPHA_HORIZON, caps.states)?;
    let ratio = (1..=ALPHA_HORIZON)
        .map(|k| (ln_big(&counts[k]) - k as f64 * lambda.ln()).exp())
        .fold(f64::INFINITY, f64::min);
    Ok(Core {
        v: graph.vertex_count(),
        rho,
        lambda,
        alpha: 0.99 * ratio,
        graph,
    })
}

/// Result of the length search together with the interval it satisfied.
#[derive(Clone, Debug)]
pub struct Lengths {
    pub n: usize,
    pub k: usize,
    /// Open interval `(lower, upper)` that `k` lies in.
    pub lower: f64,
    pub upper: f64,
    /// `|B_k|` of the core, which must exceed `n - k + 1`.
    pub block_count: BigUint,
}

/// `ln(vρ²n/α) / ((1-ε) ln λ)` and `(εn - 2ρ)/2`, with `ρ = 0` counted as
/// one in the first term.
pub fn length_bounds(core: &Core, epsilon: f64, n: usize) -> (f64, f64) {
    let rho_w = core.rho.max(1) as f64;
    let lower = (core.v as f64 * rho_w * rho_w * n as f64 / core.alpha).ln() / ((1.0 - epsilon) * core.lambda.ln());
    let upper = (epsilon * n as f64 - 2.0 * core.rho as f64) / 2.0;
    (lower, upper)
}

/// Smallest `n` whose interval holds an integer, with `k` the least such
/// integer, subject to the exact check `|B_k| > n - k + 1`.
pub fn choose_n_k(core: &Core, epsilon: f64, caps: &Caps) -> Result<Lengths> {
    check_epsilon(epsilon)?;
    for n in 1..=MAX_SEARCH_LENGTH {
        let (lower, upper) = length_bounds(core, epsilon, n);
        let k = if lower < 0.0 { 1 } else { lower.floor() as usize + 1 };
        if (k as f64) >= upper || k >= n {
            continue;
        }
        let block_count = count_words(&core.graph, k, caps.states)?.pop().unwrap();
        if block_count > BigUint::from(n - k + 1) {
            return Ok(Lengths {
                n,
                k,
                lower,
                upper,
                block_count,
            });
        }
    }
    Err(Error::Infeasible(format!(
        "no admissible (n, k) with n <= {MAX_SEARCH_LENGTH}"
    )))
}

pub(crate) fn check_epsilon(epsilon: f64) -> Result<()> {
    if epsilon > 0.0 && epsilon < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidSpec(format!("epsilon must lie in (0, 1), got {epsilon}")))
    }
}

/// The words `M`, `S`, `C` with their anchoring in the core: `M S C` is read
/// along the path from `m_start`, which ends at `c_end`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Marker {
    pub m: Word,
    pub s: Word,
    pub c: Word,
    pub m_start: usize,
    pub c_end: usize,
}

/// `M` is the least `n`-word of the core and `C` the least `k`-word missing
/// from it; `S` is the least among the shortest connectors.
pub fn find_marker(core: &LabeledGraph, n: usize, k: usize) -> Result<Marker> {
    let m = least_word(core, n).ok_or_else(|| Error::Internal("core has no word of length n".into()))?;
    let c = least_word_avoiding(core, k, &m)
        .ok_or_else(|| Error::Internal("every k-word occurs in M despite the count check".into()))?;
    let (m_start, m_end) = (0..core.vertex_count())
        .find_map(|v| core.walk(v, &m).map(|end| (v, end)))
        .ok_or_else(|| Error::Internal("M is not readable in the core".into()))?;
    let (s, u) = core
        .shortest_labeled_path(m_end, |u| core.walk(u, &c).is_some())
        .ok_or_else(|| Error::Internal("no connector from M to C".into()))?;
    let c_end = core.walk(u, &c).unwrap();
    Ok(Marker {
        m,
        s: Word(s),
        c,
        m_start,
        c_end,
    })
}

/// Anchors user-supplied marker words, checking that `M S C` is a word of
/// the core and that `C` does not occur in `M`.
pub fn anchor_marker(core: &LabeledGraph, m: Word, s: Word, c: Word) -> Result<Marker> {
    if c.is_empty() || is_subword(&c, &m) {
        return Err(Error::Infeasible(
            "C must be a non-empty word that does not occur in M".into(),
        ));
    }
    let msc = Word::concat(&[&m, &s, &c]);
    let (m_start, c_end) = (0..core.vertex_count())
        .find_map(|v| core.walk(v, &msc).map(|end| (v, end)))
        .ok_or_else(|| Error::Infeasible("M S C is not a word of the core".into()))?;
    Ok(Marker {
        m,
        s,
        c,
        m_start,
        c_end,
    })
}

/// Bucket statistics for the inner words `F` of length `f`.
///
/// Every `F` is read from the start vertex `s*` nearest to `c_end` among
/// those admitting it (least index on ties); `ℓ` is that distance and `r`
/// the distance from the end of `F` to the nearest vertex from which `C`
/// leads back to `c_end`.
#[derive(Clone, Debug)]
pub struct Upsilon {
    pub f: usize,
    pub ell: usize,
    pub r: usize,
    pub count: BigUint,
    /// Exact sizes of all non-empty buckets `(ℓ, r)`.
    pub buckets: BTreeMap<(usize, usize), BigUint>,
}

/// Start and end vertices of one inner word with the bucket it falls into.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Placement {
    pub start: usize,
    pub end: usize,
    pub ell: usize,
    pub r: usize,
}

/// Distances needed to place inner words relative to a marker.
#[derive(Clone, Debug)]
pub(crate) struct Geometry {
    from_c_end: Vec<Option<usize>>,
    /// `r` as a function of the end vertex of `F`.
    back_to_c: Vec<Option<usize>>,
    pub(crate) c_starts: Vec<usize>,
}

impl Geometry {
    pub(crate) fn new(core: &LabeledGraph, marker: &Marker) -> Self {
        let c_starts: Vec<usize> = (0..core.vertex_count())
            .filter(|&u| core.walk(u, &marker.c) == Some(marker.c_end))
            .collect();
        let back_to_c = (0..core.vertex_count())
            .map(|v| {
                let d = core.distances_from(v);
                c_starts.iter().filter_map(|&u| d[u]).min()
            })
            .collect();
        Geometry {
            from_c_end: core.distances_from(marker.c_end),
            back_to_c,
            c_starts,
        }
    }

    /// Placement given the end vertex reached from each start (`None` when
    /// the word cannot be read from that start).
    fn place(&self, ends: impl Iterator<Item = (usize, Option<usize>)>) -> Option<Placement> {
        let (ell, start, end) = ends
            .filter_map(|(s, e)| Some((self.from_c_end[s]?, s, e?)))
            .min_by_key(|&(d, s, _)| (d, s))?;
        let r = self.back_to_c[end]?;
        Some(Placement { start, end, ell, r })
    }
}

pub(crate) fn place_word(core: &LabeledGraph, geo: &Geometry, f: &[Sym]) -> Option<Placement> {
    geo.place((0..core.vertex_count()).map(|s| (s, core.walk(s, f))))
}

/// Exact bucket sizes by a dynamic program over the partial maps
/// "start vertex ↦ end vertex" induced by words of length `f`.
pub fn build_upsilon(core: &LabeledGraph, marker: &Marker, f: usize, caps: &Caps) -> Result<Upsilon> {
    if f == 0 {
        return Err(Error::Infeasible("inner word length f must be at least 1".into()));
    }
    let n = core.vertex_count();
    const DEAD: u32 = u32::MAX;
    let identity: Vec<u32> = (0..n as u32).collect();
    let mut layer: HashMap<Vec<u32>, BigUint> = HashMap::from([(identity, BigUint::one())]);
    for _ in 0..f {
        let mut next: HashMap<Vec<u32>, BigUint> = HashMap::new();
        for (map, count) in &layer {
            for a in core.alphabet().iter() {
                let stepped: Vec<u32> = map
                    .iter()
                    .map(|&v| {
                        if v == DEAD {
                            DEAD
                        } else {
                            core.step(v as usize, a).map_or(DEAD, |t| t as u32)
                        }
                    })
                    .collect();
                if stepped.iter().all(|&v| v == DEAD) {
                    continue;
                }
                *next.entry(stepped).or_insert_with(BigUint::zero) += count;
            }
        }
        if next.len() > caps.states {
            return Err(Error::blowup("inner word classification", caps.states));
        }
        layer = next;
    }
    let geo = Geometry::new(core, marker);
    let mut buckets: BTreeMap<(usize, usize), BigUint> = BTreeMap::new();
    for (map, count) in layer {
        let ends = map
            .iter()
            .enumerate()
            .map(|(s, &e)| (s, (e != DEAD).then_some(e as usize)));
        if let Some(p) = geo.place(ends) {
            *buckets.entry((p.ell, p.r)).or_insert_with(BigUint::zero) += count;
        }
    }
    let (&(ell, r), count) = buckets
        .iter()
        .fold(None::<(&(usize, usize), &BigUint)>, |best, (key, c)| match best {
            Some((_, b)) if b >= c => best,
            _ => Some((key, c)),
        })
        .ok_or_else(|| Error::Infeasible("no inner word can be placed between markers".into()))?;
    Ok(Upsilon {
        f,
        ell,
        r,
        count: count.clone(),
        buckets,
    })
}

/// All parameters of the construction.
#[derive(Clone, Debug)]
pub struct BoostPlan {
    /// `None` for manual plans.
    pub epsilon: Option<f64>,
    pub core: Core,
    pub n: usize,
    pub k: usize,
    pub marker: Marker,
    pub upsilon: Upsilon,
    /// The search interval, for automatic plans.
    pub lengths: Option<Lengths>,
}

impl BoostPlan {
    pub fn f(&self) -> usize {
        self.upsilon.f
    }

    /// Length `l` of the connector `S`.
    pub fn l(&self) -> usize {
        self.marker.s.len()
    }

    /// Length of one repeated block `L F R C`.
    pub fn period(&self) -> usize {
        self.upsilon.ell + self.upsilon.f + self.upsilon.r + self.k
    }

    /// `η_K`, the length of the words of `Γ_K`.
    pub fn eta(&self, reps: usize) -> usize {
        self.n + self.l() + self.k + reps * self.period()
    }

    /// `(1-ε) ln λ` for automatic plans.
    pub fn target(&self) -> Option<f64> {
        self.epsilon.map(|e| (1.0 - e) * self.core.lambda.ln())
    }

    /// `M S C`, the common prefix of every word of the family.
    pub fn head(&self) -> Word {
        Word::concat(&[&self.marker.m, &self.marker.s, &self.marker.c])
    }

    /// Words of the chosen bucket, in lexicographic order.
    pub fn upsilon_words(&self, cap: usize) -> Result<Vec<Word>> {
        let geo = Geometry::new(&self.core.graph, &self.marker);
        let (ell, r) = (self.upsilon.ell, self.upsilon.r);
        Ok(words_of(&self.core.graph, self.f(), cap)?
            .into_iter()
            .filter(|w| place_word(&self.core.graph, &geo, w).is_some_and(|p| p.ell == ell && p.r == r))
            .collect())
    }

    /// Named validity checks, each computed exactly.
    pub fn checks(&self, caps: &Caps) -> Result<Vec<(&'static str, bool)>> {
        let g = &self.core.graph;
        let mut out = vec![
            ("C does not occur in M", !is_subword(&self.marker.c, &self.marker.m)),
            ("M S C is a word of the core", g.accepts(&self.head())),
            (
                "|M| = n and |C| = k",
                self.marker.m.len() == self.n && self.marker.c.len() == self.k,
            ),
            ("f >= 1", self.f() >= 1),
            ("|Upsilon| >= 1", !self.upsilon.count.is_zero()),
        ];
        if let Some(len) = &self.lengths {
            out.push((
                "lower < k < upper",
                len.lower < self.k as f64 && (self.k as f64) < len.upper,
            ));
            let bk = count_words(g, self.k, caps.states)?.pop().unwrap();
            out.push(("|B_k| > n - k + 1", bk > BigUint::from(self.n - self.k + 1)));
            out.push(("f = n - 2k - 2rho", self.f() + 2 * self.k + 2 * self.core.rho == self.n));
        }
        Ok(out)
    }
}

/// Builds the plan for a given `ε` from scratch.
pub fn auto_plan(spec: &ShiftSpec, epsilon: f64, caps: &Caps) -> Result<BoostPlan> {
    check_epsilon(epsilon)?;
    let core = select_core(spec, caps)?;
    let lengths = choose_n_k(&core, epsilon, caps)?;
    let (n, k) = (lengths.n, lengths.k);
    let marker = find_marker(&core.graph, n, k)?;
    let f = n - 2 * k - 2 * core.rho;
    let upsilon = build_upsilon(&core.graph, &marker, f, caps)?;
    Ok(BoostPlan {
        epsilon: Some(epsilon),
        core,
        n,
        k,
        marker,
        upsilon,
        lengths: Some(lengths),
    })
}

/// User-chosen lengths and marker words. `f` defaults to `n - 2k - 2ρ`.
#[derive(Clone, Debug, Deserialize)]
pub struct ManualPlan {
    pub n: usize,
    pub k: usize,
    #[serde(default)]
    pub f: Option<usize>,
    #[serde(rename = "M")]
    pub m: String,
    #[serde(rename = "S", default)]
    pub s: String,
    #[serde(rename = "C")]
    pub c: String,
}

/// Builds a plan from fixed parameters without the length inequality.
pub fn manual_plan(spec: &ShiftSpec, manual: &ManualPlan, caps: &Caps) -> Result<BoostPlan> {
    let core = select_core(spec, caps)?;
    let alphabet = core.graph.alphabet();
    let parse = |t: &str| -> Result<Word> {
        if t.is_empty() {
            Ok(Word::empty())
        } else {
            alphabet.parse_word(t)
        }
    };
    let (m, s, c) = (parse(&manual.m)?, parse(&manual.s)?, parse(&manual.c)?);
    if m.len() != manual.n || c.len() != manual.k {
        return Err(Error::InvalidSpec("M must have length n and C length k".into()));
    }
    let marker = anchor_marker(&core.graph, m, s, c)?;
    let f = match manual.f {
        Some(f) => f,
        None => manual
            .n
            .checked_sub(2 * manual.k + 2 * core.rho)
            .ok_or_else(|| Error::Infeasible("n - 2k - 2rho is negative".into()))?,
    };
    let upsilon = build_upsilon(&core.graph, &marker, f, caps)?;
    Ok(BoostPlan {
        epsilon: None,
        core,
        n: manual.n,
        k: manual.k,
        marker,
        upsilon,
        lengths: None,
    })
}
