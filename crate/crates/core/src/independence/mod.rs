//! Independence entropy.
//!
//! `h_ind(X)` is the growth rate of the largest filling count over blocks of
//! the multi-choice shift `X̂`. For sofic `X` the trimmed presentation of
//! `X̂` is a finite graph whose edges carry the weight `ln|â|`, so
//! `h_ind(X)` is its maximum cycle mean and has the form `ln(n)/k`.

mod hat;
mod karp;
mod pair;

pub use hat::{hat_presentation, hat_sft, hat_sofic, HatPresentation, HatSft};
pub use karp::{max_mean_cycle, LogRatio, MeanCycle};
pub use pair::{asymptotic_pair, AsymptoticPair, EventuallyPeriodic};

use num_bigint::BigUint;
use num_traits::One;

use crate::choice::ChoiceWord;
use crate::error::{Error, Result};
use crate::spec::{Caps, ShiftSpec};

#[derive(Clone, Debug)]
pub struct IndEntropyReport {
    /// `h_ind` in nats.
    pub value: f64,
    /// An optimal cycle of `X̂`, rotated to its least encoding.
    pub cycle: ChoiceWord,
    /// The value as `ln(n)/k` in lowest terms.
    pub ratio: LogRatio,
}

impl IndEntropyReport {
    pub fn cycle_encoding(&self, spec: &ShiftSpec) -> Vec<String> {
        self.cycle.encode(spec.alphabet())
    }
}

/// Exact independence entropy via the maximum mean cycle of the hat
/// presentation.
pub fn ind_entropy_exact(spec: &ShiftSpec, caps: &Caps) -> Result<IndEntropyReport> {
    let hat = hat_presentation(spec, caps)?;
    ind_entropy_of(&hat)
}

pub fn ind_entropy_of(hat: &HatPresentation) -> Result<IndEntropyReport> {
    let best = max_mean_cycle(&hat.graph, &|e| hat.weight(e))
        .ok_or_else(|| Error::EmptyShift("multi-choice presentation has no cycle".into()))?;
    let labels: Vec<_> = best.edges.iter().map(|&e| hat.label(e)).collect();
    let base = hat.choices.base();
    let rotation = (0..labels.len())
        .min_by_key(|&r| {
            labels[r..]
                .iter()
                .chain(&labels[..r])
                .map(|c| c.encode(base))
                .collect::<Vec<_>>()
        })
        .unwrap_or(0);
    let mut cycle = labels[rotation..].to_vec();
    cycle.extend_from_slice(&labels[..rotation]);
    let ratio = best.mean.reduced();
    Ok(IndEntropyReport {
        value: ratio.value(),
        cycle: ChoiceWord(cycle),
        ratio,
    })
}

#[derive(Clone, Debug)]
pub struct ApproxReport {
    pub m: usize,
    /// `max ln|Φ(ŵ)| / m` over `ŵ ∈ B_m(X̂)`.
    pub value: f64,
    /// The maximal filling count itself.
    pub fillings: BigUint,
    pub witness: ChoiceWord,
}

impl ApproxReport {
    pub fn ratio(&self) -> LogRatio {
        LogRatio::new(self.fillings.clone(), self.m)
    }
}

/// The finite-`m` quantity from the definition of `h_ind`, computed by a
/// longest-path dynamic program over `m` steps of the hat presentation.
pub fn ind_entropy_approx(spec: &ShiftSpec, m: usize, caps: &Caps) -> Result<ApproxReport> {
    let hat = hat_presentation(spec, caps)?;
    ind_entropy_approx_of(&hat, m)
}

pub fn ind_entropy_approx_of(hat: &HatPresentation, m: usize) -> Result<ApproxReport> {
    if m == 0 {
        return Err(Error::InvalidSpec("block length m must be at least 1".into()));
    }
    let g = &hat.graph;
    let n = g.vertex_count();
    let mut best: Vec<Option<BigUint>> = vec![Some(BigUint::one()); n];
    let mut pred: Vec<Vec<usize>> = Vec::with_capacity(m);
    for _ in 0..m {
        let mut next: Vec<Option<BigUint>> = vec![None; n];
        let mut step_pred = vec![usize::MAX; n];
        for (ei, e) in g.edges().iter().enumerate() {
            let Some(b) = &best[e.from] else { continue };
            let cand = b * BigUint::from(hat.weight(ei));
            if next[e.to].as_ref().is_none_or(|cur| cand > *cur) {
                next[e.to] = Some(cand);
                step_pred[e.to] = ei;
            }
        }
        pred.push(step_pred);
        best = next;
    }
    let (end, fillings) = best
        .iter()
        .enumerate()
        .filter_map(|(v, b)| b.as_ref().map(|b| (v, b.clone())))
        .fold(None::<(usize, BigUint)>, |acc, (v, b)| match acc {
            Some((_, ref cur)) if *cur >= b => acc,
            _ => Some((v, b)),
        })
        .ok_or_else(|| Error::EmptyShift("multi-choice presentation is empty".into()))?;
    let mut witness = Vec::with_capacity(m);
    let mut v = end;
    for step in pred.iter().rev() {
        let ei = step[v];
        witness.push(hat.label(ei));
        v = g.edges()[ei].from;
    }
    witness.reverse();
    Ok(ApproxReport {
        m,
        value: crate::entropy::ln_big(&fillings) / m as f64,
        fillings,
        witness: ChoiceWord(witness),
    })
}
