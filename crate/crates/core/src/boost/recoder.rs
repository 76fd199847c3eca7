//! The conjugacy that replaces each occurrence of a family word by one new
//! symbol followed by a run of stars.
//!
//! With `m = η - k - 1`, the forward code reads `x_{[i-m, i+η-1]}` and
//! outputs `w̄` when `w ∈ Γ_K` starts at `i`, `∗` when one starts at
//! `i - j` for some `1 ≤ j ≤ m`, and `x_i` otherwise. The inverse reads
//! `y_{[i-m, i]}` and expands the nearest `w̄` on the left.

use std::collections::HashMap;
use std::sync::Arc;

use crate::alphabet::{Alphabet, Sym, Word};
use crate::boost::gamma::{GammaFamily, OverlapVerdict};
use crate::code::{BlockMap, SlidingBlockCode};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct Recoder {
    pub forward: SlidingBlockCode,
    pub inverse: SlidingBlockCode,
    /// `A ∪ {∗} ∪ W_K`: the base symbols keep their indices, then the star,
    /// then one symbol per family word.
    pub alphabet: Alphabet,
    pub star: Sym,
    pub eta: usize,
    pub k: usize,
}

impl Recoder {
    /// The new symbol standing for the `i`-th family word.
    pub fn word_symbol(&self, i: usize) -> Sym {
        self.star + 1 + i as Sym
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet.len()
    }
}

/// Fresh name based on `want` that avoids `taken`.
fn fresh(want: String, taken: &std::collections::HashSet<String>) -> String {
    let mut name = want;
    while taken.contains(&name) {
        name.push('\'');
    }
    name
}

pub fn build_recoder(family: &GammaFamily, verdict: &OverlapVerdict) -> Result<Recoder> {
    if !verdict.verified() {
        return Err(Error::OverlapUnverified(
            match (&verdict.inner, verdict.structural.first()) {
                (Some(o), _) => format!("family words overlap at shift {}", o.shift),
                (None, Some(s)) => s.clone(),
                (None, None) => "pairwise check was not run on an enumerated family".into(),
            },
        ));
    }
    let words: Vec<Word> = family.words()?.to_vec();
    let base = family.plan.core.graph.alphabet().clone();
    let (eta, k) = (family.eta, family.plan.k);
    if eta <= k {
        return Err(Error::Internal("family words must be longer than C".into()));
    }
    let m = eta - k - 1;

    let mut taken: std::collections::HashSet<String> = base.symbols().iter().cloned().collect();
    let mut names: Vec<String> = base.symbols().to_vec();
    let star_name = fresh("*".into(), &taken);
    taken.insert(star_name.clone());
    names.push(star_name);
    for w in &words {
        let n = fresh(format!("<{}>", base.render(w)), &taken);
        taken.insert(n.clone());
        names.push(n);
    }
    let alphabet = Alphabet::new(names)?;
    let star = base.len() as Sym;
    let first_word = star + 1;

    let index: Arc<HashMap<Vec<Sym>, usize>> =
        Arc::new(words.iter().enumerate().map(|(i, w)| (w.0.clone(), i)).collect());
    let head = family.plan.head().0;
    let fwd_index = Arc::clone(&index);
    let forward_rule = move |win: &[Sym]| -> Option<Sym> {
        let starts_here = |s: usize| -> Option<usize> {
            let cand = &win[s..s + eta];
            if cand[..head.len()] != head[..] {
                return None;
            }
            fwd_index.get(cand).copied()
        };
        if let Some(i) = starts_here(m) {
            return Some(first_word + i as Sym);
        }
        if (1..=m).any(|j| starts_here(m - j).is_some()) {
            return Some(star);
        }
        Some(win[m])
    };
    let inverse_words: Vec<Vec<Sym>> = words.iter().map(|w| w.0.clone()).collect();
    let inverse_rule = move |win: &[Sym]| -> Option<Sym> {
        let cur = win[m];
        if cur < star {
            return Some(cur);
        }
        if cur > star {
            return Some(inverse_words[(cur - first_word) as usize][0]);
        }
        (1..=m).find_map(|j| {
            let t = win[m - j];
            (t > star).then(|| inverse_words[(t - first_word) as usize][j])
        })
    };
    Ok(Recoder {
        forward: SlidingBlockCode {
            memory: m,
            anticipation: eta - 1,
            source: base.clone(),
            target: alphabet.clone(),
            map: BlockMap::Rule(Arc::new(forward_rule)),
        },
        inverse: SlidingBlockCode {
            memory: m,
            anticipation: 0,
            source: alphabet.clone(),
            target: base,
            map: BlockMap::Rule(Arc::new(inverse_rule)),
        },
        alphabet,
        star,
        eta,
        k,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boost::gamma::{check_no_overlap, gamma};
    use crate::boost::plan::{manual_plan, ManualPlan};
    use crate::code::PeriodicPoint;
    use crate::language::periodic_points_of;
    use crate::spec::{catalog, Caps};

    fn family(reps: usize) -> GammaFamily {
        let m = ManualPlan {
            n: 9,
            k: 2,
            f: Some(3),
            m: "100000000".into(),
            s: String::new(),
            c: "01".into(),
        };
        let plan = manual_plan(&catalog::golden_mean(), &m, &Caps::default()).unwrap();
        gamma(&plan, reps, 1000).unwrap()
    }

    #[test]
    fn single_occurrence_becomes_bar_and_stars() {
        let fam = family(1);
        let rec = build_recoder(&fam, &check_no_overlap(&fam)).unwrap();
        assert_eq!(rec.alphabet_size(), 2 + 1 + 3);
        let w = &fam.words().unwrap()[1];
        // pad with zeros so that no other family word fits
        let mut cycle = w.0.clone();
        cycle.extend([0; 6]);
        let x = PeriodicPoint::new(Word(cycle));
        let y = rec.forward.apply(&x).unwrap();
        let c = y.cycle();
        assert_eq!(c[0], rec.word_symbol(1));
        assert!(c[1..fam.eta - 2].iter().all(|&s| s == rec.star));
        assert_eq!(&c[fam.eta - 2..], &x.cycle()[fam.eta - 2..]);
        assert_eq!(rec.inverse.apply(&y).unwrap(), x);
    }

    #[test]
    fn points_without_family_words_are_fixed() {
        let fam = family(1);
        let rec = build_recoder(&fam, &check_no_overlap(&fam)).unwrap();
        let zero = PeriodicPoint::new(Word(vec![0]));
        assert_eq!(rec.forward.apply(&zero).unwrap(), zero);
    }

    #[test]
    fn small_periods_round_trip() {
        let fam = family(1);
        let rec = build_recoder(&fam, &check_no_overlap(&fam)).unwrap();
        let g = &fam.plan.core.graph;
        for p in 1..=18 {
            for x in periodic_points_of(g, p, 1 << 20).unwrap() {
                let y = rec.forward.apply(&x).unwrap();
                assert_eq!(rec.inverse.apply(&y).unwrap(), x);
                assert_eq!(rec.forward.apply(&x.rotate(3)).unwrap(), y.rotate(3));
            }
        }
    }

    #[test]
    fn refuses_overlapping_family() {
        let m = ManualPlan {
            n: 3,
            k: 2,
            f: Some(3),
            m: "000".into(),
            s: String::new(),
            c: "01".into(),
        };
        let plan = manual_plan(&catalog::golden_mean(), &m, &Caps::default()).unwrap();
        let fam = gamma(&plan, 1, 1000).unwrap();
        assert!(matches!(
            build_recoder(&fam, &check_no_overlap(&fam)),
            Err(Error::OverlapUnverified(_))
        ));
    }
}
