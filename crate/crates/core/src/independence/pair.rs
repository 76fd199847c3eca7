//! Asymptotic pairs from multi-member choice symbols.
//!
//! A multi-member edge of the trimmed hat presentation sits on a
//! bi-infinite path `cycle* · path · edge · path · cycle*`. Filling every
//! coordinate with the first member gives `x`; switching the multi-member
//! coordinate to its second member gives `y`.

use std::collections::VecDeque;

use crate::alphabet::{Sym, Word};
use crate::choice::ChoiceWord;
use crate::error::{Error, Result};
use crate::graph::LabeledGraph;
use crate::independence::hat::{hat_presentation, HatPresentation};
use crate::spec::{Caps, ShiftSpec};

/// `…LLL M RRR…` with `M` starting at coordinate 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EventuallyPeriodic {
    pub left: Word,
    pub middle: Word,
    pub right: Word,
}

impl EventuallyPeriodic {
    pub fn at(&self, i: isize) -> Sym {
        let m = self.middle.len() as isize;
        if i < 0 {
            let l = self.left.len() as isize;
            self.left[(i.rem_euclid(l)) as usize]
        } else if i < m {
            self.middle[i as usize]
        } else {
            self.right[((i - m) % self.right.len() as isize) as usize]
        }
    }

    /// Coordinates `[from, to)`.
    pub fn window(&self, from: isize, to: isize) -> Vec<Sym> {
        (from..to).map(|i| self.at(i)).collect()
    }
}

#[derive(Clone, Debug)]
pub struct AsymptoticPair {
    pub x: EventuallyPeriodic,
    pub y: EventuallyPeriodic,
    pub diff_index: isize,
    /// The choice labels of the path the pair was filled from.
    pub choices: ChoiceWord,
}

impl AsymptoticPair {
    /// Coordinates in `[from, to)` where the two points differ.
    pub fn differences(&self, from: isize, to: isize) -> Vec<isize> {
        (from..to).filter(|&i| self.x.at(i) != self.y.at(i)).collect()
    }
}

/// Extracts a pair of points differing in exactly one coordinate.
pub fn asymptotic_pair(spec: &ShiftSpec, caps: &Caps) -> Result<AsymptoticPair> {
    let hat = hat_presentation(spec, caps)?;
    let pair = pair_from_hat(&hat)?;
    let g = spec.presentation(caps)?;
    verify(&pair, &g)?;
    Ok(pair)
}

fn pair_from_hat(hat: &HatPresentation) -> Result<AsymptoticPair> {
    let g = &hat.graph;
    let base = hat.choices.base();
    let edge = (0..g.edge_count())
        .filter(|&e| hat.label(e).size() >= 2)
        .min_by_key(|&e| {
            let ed = &g.edges()[e];
            (
                hat.label(e).encode(base),
                g.vertices()[ed.from].clone(),
                g.vertices()[ed.to].clone(),
                e,
            )
        })
        .ok_or(Error::ZeroIndependenceEntropy)?;
    let on_cycle = cyclic_vertices(g);
    let (u, v) = (g.edges()[edge].from, g.edges()[edge].to);
    let into_u = path_between(g, u, &on_cycle, false)
        .ok_or_else(|| Error::Internal("trimmed vertex not reachable from a cycle".into()))?;
    let out_of_v = path_between(g, v, &on_cycle, true)
        .ok_or_else(|| Error::Internal("trimmed vertex does not reach a cycle".into()))?;
    let a = into_u.first().map_or(u, |&e| g.edges()[e].from);
    let b = out_of_v.last().map_or(v, |&e| g.edges()[e].to);
    let left_cycle = shortest_cycle(g, a).ok_or_else(|| Error::Internal("no cycle at vertex".into()))?;
    let right_cycle = shortest_cycle(g, b).ok_or_else(|| Error::Internal("no cycle at vertex".into()))?;

    let labels = |edges: &[usize]| -> Vec<_> { edges.iter().map(|&e| hat.label(e)).collect() };
    let first = |cs: &[crate::choice::ChoiceSymbol]| Word(cs.iter().map(|c| c.first()).collect());
    let mut middle_choices = labels(&into_u);
    let diff_index = middle_choices.len() as isize;
    middle_choices.push(hat.label(edge));
    middle_choices.extend(labels(&out_of_v));

    let x = EventuallyPeriodic {
        left: first(&labels(&left_cycle)),
        middle: first(&middle_choices),
        right: first(&labels(&right_cycle)),
    };
    let mut y = x.clone();
    y.middle.0[diff_index as usize] = hat
        .label(edge)
        .second()
        .expect("multi-member label has a second member");
    let mut all = labels(&left_cycle);
    all.extend(middle_choices);
    all.extend(labels(&right_cycle));
    Ok(AsymptoticPair {
        x,
        y,
        diff_index,
        choices: ChoiceWord(all),
    })
}

/// Checks both points against the presentation: the periodic tails are
/// cycles and a window of three tail periods around the middle is allowed.
fn verify(pair: &AsymptoticPair, g: &LabeledGraph) -> Result<()> {
    for p in [&pair.x, &pair.y] {
        if !g.presents_periodic(&p.left) || !g.presents_periodic(&p.right) {
            return Err(Error::Internal("periodic tail is not a point of the shift".into()));
        }
        let from = -3 * p.left.len() as isize;
        let to = (p.middle.len() + 3 * p.right.len()) as isize;
        if !g.accepts(&p.window(from, to)) {
            return Err(Error::Internal("asymptotic pair window is not allowed".into()));
        }
    }
    let from = -3 * pair.x.left.len() as isize;
    let to = (pair.x.middle.len() + 3 * pair.x.right.len()) as isize;
    if pair.differences(from, to) != vec![pair.diff_index] {
        return Err(Error::Internal("points must differ at exactly one index".into()));
    }
    Ok(())
}

fn cyclic_vertices(g: &LabeledGraph) -> Vec<bool> {
    let mut on = vec![false; g.vertex_count()];
    for c in g.scc_components() {
        for v in c {
            on[v] = true;
        }
    }
    on
}

/// Shortest edge path between `start` and the nearest vertex with
/// `target[v]` (forward from `start` when `forward`, else into `start`).
fn path_between(g: &LabeledGraph, start: usize, target: &[bool], forward: bool) -> Option<Vec<usize>> {
    if target[start] {
        return Some(Vec::new());
    }
    let mut parent: Vec<Option<usize>> = vec![None; g.vertex_count()];
    let mut seen = vec![false; g.vertex_count()];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(w) = queue.pop_front() {
        let step: Vec<(usize, usize)> = if forward {
            g.out_edge_ids(w).iter().map(|&e| (g.edges()[e].to, e)).collect()
        } else {
            g.in_edge_ids(w).iter().map(|&e| (g.edges()[e].from, e)).collect()
        };
        for (next, eid) in step {
            if seen[next] {
                continue;
            }
            seen[next] = true;
            parent[next] = Some(eid);
            if target[next] {
                let mut path = Vec::new();
                let mut cur = next;
                while cur != start {
                    let e = parent[cur].unwrap();
                    path.push(e);
                    cur = if forward { g.edges()[e].from } else { g.edges()[e].to };
                }
                if forward {
                    path.reverse();
                }
                return Some(path);
            }
            queue.push_back(next);
        }
    }
    None
}

/// Shortest closed path through `v`, as edge indices starting at `v`.
fn shortest_cycle(g: &LabeledGraph, v: usize) -> Option<Vec<usize>> {
    let mut parent: Vec<Option<usize>> = vec![None; g.vertex_count()];
    let mut seen = vec![false; g.vertex_count()];
    let mut queue = VecDeque::new();
    for &id in g.out_edge_ids(v) {
        let e = &g.edges()[id];
        if e.to == v {
            return Some(vec![id]);
        }
        if !seen[e.to] {
            seen[e.to] = true;
            parent[e.to] = Some(id);
            queue.push_back(e.to);
        }
    }
    while let Some(w) = queue.pop_front() {
        for &id in g.out_edge_ids(w) {
            let e = &g.edges()[id];
            if e.to == v {
                let mut path = vec![id];
                let mut cur = w;
                while let Some(pe) = parent[cur] {
                    path.push(pe);
                    cur = g.edges()[pe].from;
                    if cur == v {
                        break;
                    }
                }
                path.reverse();
                return Some(path);
            }
            if !seen[e.to] && e.to != v {
                seen[e.to] = true;
                parent[e.to] = Some(id);
                queue.push_back(e.to);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::higher_block;
    use crate::spec::catalog;

    #[test]
    fn golden_mean_pair() {
        let gm = catalog::golden_mean();
        let p = asymptotic_pair(&gm, &Caps::default()).unwrap();
        assert_eq!(p.diff_index, 0);
        assert_eq!(p.x.window(-4, 4), vec![0; 8]);
        let mut y = vec![0; 8];
        y[4] = 1;
        assert_eq!(p.y.window(-4, 4), y);
        assert_eq!(p.differences(-20, 20), vec![0]);
    }

    #[test]
    fn full_shift_pair() {
        let p = asymptotic_pair(&catalog::full_shift(2), &Caps::default()).unwrap();
        assert_eq!(p.differences(-10, 10), vec![p.diff_index]);
        assert!(p.x.window(-10, 10).iter().all(|&s| s == 0));
    }

    #[test]
    fn higher_block_has_no_pair() {
        let hb = higher_block(&catalog::golden_mean(), 2, &Caps::default()).unwrap();
        assert!(matches!(
            asymptotic_pair(&hb.shift, &Caps::default()),
            Err(Error::ZeroIndependenceEntropy)
        ));
    }

    #[test]
    fn even_shift_pair_is_verified() {
        let p = asymptotic_pair(&catalog::even_shift(), &Caps::default()).unwrap();
        assert_eq!(p.differences(-30, 30), vec![p.diff_index]);
    }
}
