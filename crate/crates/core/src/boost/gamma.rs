//! The word family `Γ_K = { M S C (L F R C)^K }` and its overlap checks.

use std::collections::{HashMap, HashSet};

use num_bigint::BigUint;

use crate::alphabet::{is_subword, Sym, Word};
use crate::boost::plan::{place_word, BoostPlan, Geometry};
use crate::entropy::ln_big;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct GammaFamily {
    pub plan: BoostPlan,
    /// Number `K` of repeated blocks.
    pub reps: usize,
    pub eta: usize,
    /// `|Γ_K| = |Υ|^K`.
    pub size: BigUint,
    /// `ln |Γ_K|`.
    pub log_size: f64,
    /// The words themselves, in lexicographic order of their inner words,
    /// when `|Γ_K|` is within the enumeration cap.
    pub words: Option<Vec<Word>>,
}

impl GammaFamily {
    pub fn words(&self) -> Result<&[Word]> {
        self.words
            .as_deref()
            .ok_or_else(|| Error::budget("word family enumeration", usize::MAX))
    }

    /// Start offsets of the designed occurrences of `C`.
    pub fn marker_positions(&self) -> Vec<usize> {
        let p = &self.plan;
        (0..=self.reps).map(|j| p.n + p.l() + j * p.period()).collect()
    }
}

/// Builds `Γ_K`, enumerating it when `|Υ|^K ≤ cap`. Enumerated words are
/// checked to be distinct words of the core of length `η_K`.
pub fn gamma(plan: &BoostPlan, reps: usize, cap: usize) -> Result<GammaFamily> {
    let size = plan.upsilon.count.pow(reps as u32);
    let eta = plan.eta(reps);
    let log_size = reps as f64 * ln_big(&plan.upsilon.count);
    let words = if size <= BigUint::from(cap) {
        let blocks = blocks(plan, cap)?;
        let mut words = vec![plan.head().0];
        for _ in 0..reps {
            words = words
                .into_iter()
                .flat_map(|w| {
                    blocks.iter().map(move |b| {
                        let mut v = w.clone();
                        v.extend_from_slice(b);
                        v
                    })
                })
                .collect();
        }
        let g = &plan.core.graph;
        let distinct: HashSet<&Vec<Sym>> = words.iter().collect();
        if distinct.len() != words.len() {
            return Err(Error::Internal("family words are not distinct".into()));
        }
        if let Some(bad) = words.iter().find(|w| w.len() != eta || !g.accepts(w)) {
            return Err(Error::Internal(format!(
                "family word {} is not a word of length {eta}",
                g.alphabet().render(bad)
            )));
        }
        Some(words.into_iter().map(Word).collect())
    } else {
        None
    };
    Ok(GammaFamily {
        plan: plan.clone(),
        reps,
        eta,
        size,
        log_size,
        words,
    })
}

/// The blocks `L F R C` for every `F` of the chosen bucket.
fn blocks(plan: &BoostPlan, cap: usize) -> Result<Vec<Vec<Sym>>> {
    let g = &plan.core.graph;
    let geo = Geometry::new(g, &plan.marker);
    let mut out = Vec::new();
    for f in plan.upsilon_words(cap)? {
        let place = place_word(g, &geo, &f).expect("bucket words are placeable");
        let (l, _) = g
            .shortest_labeled_path(plan.marker.c_end, |v| v == place.start)
            .expect("core is irreducible");
        let (r, _) = g
            .shortest_labeled_path(place.end, |u| geo.c_starts.contains(&u))
            .expect("core is irreducible");
        out.push(Word::concat(&[&l, &f, &r, &plan.marker.c]).0);
    }
    Ok(out)
}

/// A self-overlap `w[q..] = w'[..η-q]` between two family words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Overlap {
    pub first: usize,
    pub second: usize,
    pub shift: usize,
}

#[derive(Clone, Debug)]
pub struct OverlapVerdict {
    /// Failures of the word-independent checks.
    pub structural: Vec<String>,
    /// First overlap with shift in `[1, η-k-1]`, when enumerated.
    pub inner: Option<Overlap>,
    /// First overlap with shift in `[η-k, η-1]`, when enumerated. These do
    /// not affect the recoding.
    pub tail: Option<Overlap>,
    pub exhaustive: bool,
}

impl OverlapVerdict {
    /// The structural checks hold and no inner overlap was found.
    pub fn passed(&self) -> bool {
        self.structural.is_empty() && self.inner.is_none()
    }

    /// Passed, and backed by the exhaustive pairwise comparison.
    pub fn verified(&self) -> bool {
        self.passed() && self.exhaustive
    }
}

/// Structural checks on the template plus, for enumerated families, the
/// comparison of every ordered pair at every shift `1 ≤ q < η`.
pub fn check_no_overlap(family: &GammaFamily) -> OverlapVerdict {
    let p = &family.plan;
    let (eta, k, l) = (family.eta, p.k, p.l());
    let c = &p.marker.c;
    let mut structural = Vec::new();
    if is_subword(c, &p.marker.m) {
        structural.push("C occurs in M".to_string());
    }
    // a shift below l+k lines M S C up against itself
    let head = p.head();
    for q in 1..(l + k).min(head.len()) {
        if head[q..] == head[..head.len() - q] {
            structural.push(format!("M S C is {q}-periodic"));
        }
    }
    // for larger shifts the copy of M must swallow a designed C
    let positions = family.marker_positions();
    for q in (l + k)..eta.saturating_sub(k) {
        let end = (q + p.n).min(eta);
        if !positions.iter().any(|&s| s >= q && s + k <= end) {
            structural.push(format!("window at {q} holds no designed C"));
            break;
        }
    }
    let mut verdict = OverlapVerdict {
        structural,
        inner: None,
        tail: None,
        exhaustive: false,
    };
    let Some(words) = &family.words else {
        return verdict;
    };
    for w in words {
        // inner words may contain C as well; only the designed copies matter
        if let Some(&s) = positions.iter().find(|&&s| w[s..s + k] != c[..]) {
            verdict.structural.push(format!("C missing at designed position {s}"));
            break;
        }
    }
    for q in 1..eta {
        let len = eta - q;
        let mut first_with_prefix: HashMap<&[Sym], usize> = HashMap::new();
        for (i, w) in words.iter().enumerate() {
            first_with_prefix.entry(&w[..len]).or_insert(i);
        }
        let hit = words.iter().enumerate().find_map(|(i, w)| {
            first_with_prefix.get(&w[q..]).map(|&j| Overlap {
                first: i,
                second: j,
                shift: q,
            })
        });
        if let Some(o) = hit {
            if q + k < eta {
                verdict.inner.get_or_insert(o);
            } else {
                verdict.tail.get_or_insert(o);
            }
        }
    }
    verdict.exhaustive = true;
    verdict
}
