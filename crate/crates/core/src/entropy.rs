//! Topological entropy: Perron eigenvalues of irreducible components and
//! the exact block-counting route.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::language::count_words;
use crate::spec::{Caps, ShiftSpec};

const TOLERANCE: f64 = 1e-12;
const MAX_ITERATIONS: usize = 1_000_000;
/// Longest block length accepted by the counting oracle.
pub const MAX_COUNT_LENGTH: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Perron {
    pub eigenvalue: f64,
    /// Half-width of the Collatz–Wielandt bracket around the eigenvalue.
    pub residual: f64,
    pub iterations: usize,
}

/// Spectral radius of the adjacency matrix of a strongly connected graph.
///
/// Power iteration runs on `A + I`, whose dominant eigenvalue is simple and
/// strictly dominant even when `A` is periodic. At each step the ratios
/// `((A+I)x)_i / x_i` bracket the spectral radius from both sides, and the
/// bracket half-width is reported as the residual.
pub fn perron_eigenvalue(adjacency: &[Vec<u64>]) -> Result<Perron> {
    let n = adjacency.len();
    if n == 0 || adjacency.iter().all(|row| row.iter().all(|&x| x == 0)) {
        return Err(Error::NoEdges);
    }
    if !strongly_connected(adjacency) {
        return Err(Error::NotIrreducible("adjacency matrix is reducible".into()));
    }
    // a strongly connected graph with one out-edge per vertex is a cycle
    if adjacency.iter().all(|row| row.iter().sum::<u64>() == 1) {
        return Ok(Perron {
            eigenvalue: 1.0,
            residual: 0.0,
            iterations: 0,
        });
    }
    let mut x = vec![1.0f64; n];
    let mut y = vec![0.0f64; n];
    let mut best = (0.0, f64::INFINITY);
    let mut iterations = 0;
    while iterations < MAX_ITERATIONS {
        iterations += 1;
        for (i, row) in adjacency.iter().enumerate() {
            y[i] = x[i] + row.iter().zip(&x).map(|(&a, &xj)| a as f64 * xj).sum::<f64>();
        }
        let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
        for i in 0..n {
            let r = y[i] / x[i];
            lo = lo.min(r);
            hi = hi.max(r);
        }
        if hi - lo < best.1 - best.0 {
            best = (lo, hi);
        }
        let scale = y.iter().cloned().fold(0.0, f64::max);
        for i in 0..n {
            x[i] = y[i] / scale;
        }
        if (best.1 - best.0) / 2.0 <= TOLERANCE * best.1.max(1.0) {
            break;
        }
    }
    Ok(Perron {
        eigenvalue: (best.0 + best.1) / 2.0 - 1.0,
        residual: (best.1 - best.0) / 2.0,
        iterations,
    })
}

fn strongly_connected(a: &[Vec<u64>]) -> bool {
    let n = a.len();
    let reach = |forward: bool| {
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for v in 0..n {
                let w = if forward { a[u][v] } else { a[v][u] };
                if w > 0 && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    };
    reach(true) && reach(false)
}

#[derive(Clone, Debug, PartialEq)]
pub struct EntropyReport {
    /// Entropy in nats.
    pub value: f64,
    pub eigenvalue: f64,
    /// Index of the winning component in `scc_components` order.
    pub component: usize,
    pub iterations: usize,
    pub residual: f64,
}

/// `h(X) = max_H ln λ_H` over the irreducible components `H` of a
/// right-resolving presentation.
pub fn topological_entropy(spec: &ShiftSpec, caps: &Caps) -> Result<EntropyReport> {
    let g = spec.presentation(caps)?;
    let comps = g.scc_components();
    let mut best: Option<EntropyReport> = None;
    for (i, c) in comps.iter().enumerate() {
        let p = perron_eigenvalue(&g.induced(c).adjacency())?;
        if best.as_ref().is_none_or(|b| p.eigenvalue > b.eigenvalue) {
            best = Some(EntropyReport {
                value: p.eigenvalue.ln().max(0.0),
                eigenvalue: p.eigenvalue,
                component: i,
                iterations: p.iterations,
                residual: p.residual,
            });
        }
    }
    best.ok_or_else(|| Error::EmptyShift("presentation has no cycle".into()))
}

#[derive(Clone, Debug, PartialEq)]
pub struct BlockCount {
    pub n: usize,
    pub count: BigUint,
    /// `ln|B_n| / n`.
    pub rate: f64,
}

/// Exact `|B_n|` for `n = 1..=n_max` with the growth rates `ln|B_n|/n`.
pub fn entropy_by_counting(spec: &ShiftSpec, n_max: usize, caps: &Caps) -> Result<Vec<BlockCount>> {
    if n_max == 0 {
        return Err(Error::InvalidSpec("n_max must be at least 1".into()));
    }
    if n_max > MAX_COUNT_LENGTH {
        return Err(Error::budget("block counting length", MAX_COUNT_LENGTH));
    }
    let g = spec.presentation(caps)?;
    let counts = count_words(&g, n_max, caps.states)?;
    Ok(counts
        .into_iter()
        .enumerate()
        .skip(1)
        .map(|(n, count)| BlockCount {
            n,
            rate: ln_big(&count) / n as f64,
            count,
        })
        .collect())
}

/// Natural logarithm of a big integer (`-inf` for zero).
pub fn ln_big(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap().ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().unwrap();
    top.ln() + shift as f64 * std::f64::consts::LN_2
}
