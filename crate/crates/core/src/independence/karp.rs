//! Maximum mean cycle (Karp) for weights of the form `ln w`, `w` a
//! positive integer, with exact comparison of the resulting means.

use std::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::entropy::ln_big;
use crate::graph::LabeledGraph;

/// The value `ln(product) / length`, compared exactly.
#[derive(Clone, Debug)]
pub struct LogRatio {
    pub product: BigUint,
    pub length: usize,
}

impl LogRatio {
    pub fn new(product: BigUint, length: usize) -> Self {
        assert!(length > 0, "mean over an empty cycle");
        LogRatio { product, length }
    }

    pub fn zero() -> Self {
        LogRatio::new(BigUint::one(), 1)
    }

    pub fn value(&self) -> f64 {
        ln_big(&self.product) / self.length as f64
    }

    pub fn is_zero(&self) -> bool {
        self.product.is_one()
    }

    /// Smallest `(n, k)` with `ln(n)/k` equal to this value.
    pub fn reduced(&self) -> LogRatio {
        if self.product.is_one() {
            return LogRatio::zero();
        }
        let (base, exps) = factor_small(&self.product);
        let mut g = self.length;
        for &(_, e) in &exps {
            g = gcd(g, e);
        }
        match base {
            // a factor above the small primes: only trivial reduction is safe
            Some(_) => self.clone(),
            None => {
                let mut p = BigUint::one();
                for &(q, e) in &exps {
                    p *= BigUint::from(q).pow((e / g) as u32);
                }
                LogRatio::new(p, self.length / g)
            }
        }
    }
}

impl PartialEq for LogRatio {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for LogRatio {}

impl PartialOrd for LogRatio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LogRatio {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (self.value(), other.value());
        if (a - b).abs() > 1e-9 * a.abs().max(b.abs()).max(1.0) {
            return a.partial_cmp(&b).unwrap();
        }
        // ln(P)/L vs ln(Q)/K  <=>  P^K vs Q^L
        let lhs = self.product.pow(other.length as u32);
        let rhs = other.product.pow(self.length as u32);
        lhs.cmp(&rhs)
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Exponents over primes below 64; returns a leftover factor if any.
fn factor_small(x: &BigUint) -> (Option<BigUint>, Vec<(u32, usize)>) {
    let mut rest = x.clone();
    let mut out = Vec::new();
    for p in (2u32..64).filter(|&p| (2..p).all(|d| p % d != 0)) {
        let bp = BigUint::from(p);
        let mut e = 0;
        while (&rest % &bp).to_u32() == Some(0) {
            rest /= &bp;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    }
    ((!rest.is_one()).then_some(rest), out)
}

/// A closed walk given by edge indices of the graph.
#[derive(Clone, Debug)]
pub struct MeanCycle {
    pub edges: Vec<usize>,
    pub mean: LogRatio,
}

/// Maximum mean cycle over all components of `g`, with edge weight
/// `ln weight(e)`. Returns `None` for acyclic graphs.
pub fn max_mean_cycle(g: &LabeledGraph, weight: &dyn Fn(usize) -> u64) -> Option<MeanCycle> {
    g.scc_components()
        .iter()
        .filter_map(|c| component_max_mean(g, c, weight))
        .max_by(|a, b| a.mean.cmp(&b.mean).then_with(|| b.edges.cmp(&a.edges)))
}

fn component_max_mean(g: &LabeledGraph, comp: &[usize], weight: &dyn Fn(usize) -> u64) -> Option<MeanCycle> {
    let n = comp.len();
    let mut local = vec![usize::MAX; g.vertex_count()];
    for (i, &v) in comp.iter().enumerate() {
        local[v] = i;
    }
    let edges: Vec<(usize, usize, usize, f64)> = g
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| local[e.from] != usize::MAX && local[e.to] != usize::MAX)
        .map(|(i, e)| (i, local[e.from], local[e.to], (weight(i) as f64).ln()))
        .collect();
    if edges.is_empty() {
        return None;
    }
    // best[k][v]: max weight of a walk with k edges ending at v
    let mut best = vec![vec![f64::NEG_INFINITY; n]; n + 1];
    let mut pred = vec![vec![usize::MAX; n]; n + 1];
    best[0].iter_mut().for_each(|x| *x = 0.0);
    for k in 1..=n {
        for (ei, &(_, u, v, w)) in edges.iter().enumerate() {
            if best[k - 1][u] == f64::NEG_INFINITY {
                continue;
            }
            let cand = best[k - 1][u] + w;
            if cand > best[k][v] + 1e-12 {
                best[k][v] = cand;
                pred[k][v] = ei;
            }
        }
    }
    let score = |v: usize| -> f64 {
        (0..n)
            .filter(|&k| best[k][v] > f64::NEG_INFINITY)
            .map(|k| (best[n][v] - best[k][v]) / (n - k) as f64)
            .fold(f64::INFINITY, f64::min)
    };
    let scores: Vec<f64> = (0..n)
        .map(|v| {
            if best[n][v] > f64::NEG_INFINITY {
                score(v)
            } else {
                f64::NEG_INFINITY
            }
        })
        .collect();
    let top = scores.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mut candidates: Vec<MeanCycle> = Vec::new();
    for v in (0..n).filter(|&v| scores[v] >= top - 1e-9) {
        // walk back the optimal n-edge walk and cut out its cycles
        let mut walk = Vec::with_capacity(n);
        let mut cur = v;
        for k in (1..=n).rev() {
            let ei = pred[k][cur];
            walk.push(ei);
            cur = edges[ei].1;
        }
        walk.reverse();
        for cycle in cycles_on_walk(&walk, &edges) {
            let product = cycle
                .iter()
                .fold(BigUint::one(), |acc, &ei| acc * BigUint::from(weight(edges[ei].0)));
            let global: Vec<usize> = cycle.iter().map(|&ei| edges[ei].0).collect();
            candidates.push(MeanCycle {
                mean: LogRatio::new(product, global.len()),
                edges: global,
            });
        }
    }
    candidates
        .into_iter()
        .max_by(|a, b| a.mean.cmp(&b.mean).then_with(|| b.edges.len().cmp(&a.edges.len())))
}

/// Simple cycles obtained by repeatedly cutting the first repeated vertex.
fn cycles_on_walk(walk: &[usize], edges: &[(usize, usize, usize, f64)]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    let mut seen_at: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
    if let Some(&first) = walk.first() {
        seen_at.insert(edges[first].1, 0);
    }
    for &ei in walk {
        stack.push(ei);
        let to = edges[ei].2;
        if let Some(&pos) = seen_at.get(&to) {
            let cycle: Vec<usize> = stack.drain(pos..).collect();
            for e in &cycle {
                seen_at.remove(&edges[*e].2);
            }
            seen_at.insert(to, pos);
            out.push(cycle);
        } else {
            seen_at.insert(to, stack.len());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;

    fn ratio(p: u32, l: usize) -> LogRatio {
        LogRatio::new(BigUint::from(p), l)
    }

    #[test]
    fn exact_ties() {
        assert_eq!(ratio(2, 2), ratio(4, 4));
        assert!(ratio(3, 2) > ratio(4, 4));
        assert!(ratio(1, 3) < ratio(2, 100));
        assert_eq!(ratio(1, 1), LogRatio::zero());
    }

    #[test]
    fn reduction() {
        let r = ratio(64, 12).reduced();
        assert_eq!((r.product.to_u32().unwrap(), r.length), (2, 2));
        let r = ratio(12, 4).reduced();
        assert_eq!((r.product.to_u32().unwrap(), r.length), (12, 4));
        assert!(ratio(1, 7).reduced().is_zero());
    }

    #[test]
    fn picks_heavier_cycle() {
        // a: loop weight 2 (mean ln2); a<->b with weights 3,3 (mean ln3)
        let g = LabeledGraph::from_names(
            Alphabet::new(["p", "q", "r"]).unwrap(),
            &["a", "b"],
            &[("a", "a", "p"), ("a", "b", "q"), ("b", "a", "r")],
        )
        .unwrap();
        let w = |e: usize| [2, 3, 3][e];
        let c = max_mean_cycle(&g, &w).unwrap();
        assert_eq!(c.mean, ratio(9, 2));
        assert_eq!(c.edges.len(), 2);
    }

    #[test]
    fn walk_cycles() {
        // edges as (id, from, to, w): 0->1->0->1
        let e = vec![(0, 0, 1, 0.0), (1, 1, 0, 0.0)];
        let cyc = cycles_on_walk(&[0, 1, 0], &e);
        assert_eq!(cyc, vec![vec![0, 1]]);
    }
}
