//! Invariant checks for a single shift and a seeded random-SFT fuzzer.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::alphabet::{Alphabet, Word};
use crate::code::higher_block;
use crate::entropy::{entropy_by_counting, topological_entropy};
use crate::error::{Error, Result};
use crate::independence::{asymptotic_pair, hat_presentation, ind_entropy_approx_of, ind_entropy_of};
use crate::spec::{all_words, Caps, SftSpec, ShiftSpec};

pub const COUNT_LENGTH: usize = 40;
pub const APPROX_LENGTH: usize = 60;
pub const ORACLE_TOLERANCE: f64 = 0.05;

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, passed: bool, detail: String) -> Check {
    Check { name, passed, detail }
}

/// Runs every invariant on one shift.
pub fn check_spec(spec: &ShiftSpec, caps: &Caps) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let g = spec.presentation(caps)?;
    out.push(check(
        "presentation is right-resolving",
        g.is_right_resolving(),
        String::new(),
    ));

    let h = topological_entropy(spec, caps)?.value;
    let hat = hat_presentation(spec, caps)?;
    let exact = ind_entropy_of(&hat)?;
    out.push(check(
        "h_ind <= h",
        exact.value <= h + 1e-9,
        format!("h_ind={:.10} h={h:.10}", exact.value),
    ));

    let counted = entropy_by_counting(spec, COUNT_LENGTH, caps)?
        .pop()
        .expect("counting returns every length");
    out.push(check(
        "spectral entropy matches ln|B_40|/40",
        (counted.rate - h).abs() <= ORACLE_TOLERANCE,
        format!("rate={:.10} h={h:.10}", counted.rate),
    ));

    let approx = ind_entropy_approx_of(&hat, APPROX_LENGTH)?;
    out.push(check(
        "approx(60) brackets exact h_ind",
        approx.ratio() >= exact.ratio && approx.value - exact.value <= ORACLE_TOLERANCE,
        format!("approx={:.10} exact={:.10}", approx.value, exact.value),
    ));

    let multi = (0..hat.graph.edge_count()).any(|e| hat.label(e).size() >= 2);
    let pair = match asymptotic_pair(spec, caps) {
        Ok(p) => (
            p.differences(-64, 64) == vec![p.diff_index],
            "verified pair".to_string(),
        ),
        Err(Error::ZeroIndependenceEntropy) => (!multi && exact.ratio.is_zero(), "no multi-member label".into()),
        Err(e) => return Err(e),
    };
    out.push(check(
        "positive h_ind yields an asymptotic pair",
        pair.0 && (exact.ratio.is_zero() || multi),
        pair.1,
    ));

    let hb = higher_block(spec, 2, caps)?;
    let hb_h = topological_entropy(&hb.shift, caps)?.value;
    let hb_ind = ind_entropy_of(&hat_presentation(&hb.shift, caps)?)?;
    out.push(check(
        "2-block recoding keeps h and kills h_ind",
        (hb_h - h).abs() <= 1e-9 && hb_ind.ratio.is_zero(),
        format!("h={hb_h:.10} h_ind={:.10}", hb_ind.value),
    ));

    if let ShiftSpec::Sft(s) = spec {
        let worst = monotonicity_violation(s, caps)?;
        out.push(check(
            "removing a forbidden word never lowers h_ind",
            worst.is_none(),
            worst
                .map(|w| format!("violated by removing {}", s.alphabet().render(&w)))
                .unwrap_or_default(),
        ));
    }
    Ok(out)
}

/// A forbidden word whose removal decreases `h_ind`, if any.
pub fn monotonicity_violation(spec: &SftSpec, caps: &Caps) -> Result<Option<Word>> {
    let base = ind_entropy_of(&hat_presentation(&spec.clone().into(), caps)?)?;
    for w in spec.forbidden() {
        let bigger: ShiftSpec = spec.without(w).into();
        let r = ind_entropy_of(&hat_presentation(&bigger, caps)?)?;
        if r.ratio < base.ratio {
            return Ok(Some(w.clone()));
        }
    }
    Ok(None)
}

/// A random non-empty SFT with alphabet size 2 or 3 and memory 1 or 2.
/// Each word of length `memory + 1` is forbidden with a probability drawn
/// once per shift from `[0.1, 0.5]`.
pub fn random_sft(rng: &mut ChaCha8Rng, caps: &Caps) -> SftSpec {
    loop {
        let k = rng.gen_range(2..=3usize);
        let memory = rng.gen_range(1..=2usize);
        let p: f64 = rng.gen_range(0.1..0.5);
        let forbidden: Vec<Word> = all_words(k as u32, memory + 1)
            .filter(|_| rng.gen_bool(p))
            .map(Word)
            .collect();
        let alphabet = Alphabet::new((0..k).map(|i| i.to_string())).unwrap();
        let Ok(spec) = SftSpec::new(alphabet, forbidden) else {
            continue;
        };
        // keep the drawn memory even when no word of full length was kept
        if spec.memory() != memory && !spec.forbidden().is_empty() {
            continue;
        }
        if ShiftSpec::from(spec.clone()).presentation(caps).is_ok() {
            return spec;
        }
    }
}

/// The fuzz suite: `trials` random SFTs drawn from `seed`.
pub fn random_suite(trials: usize, seed: u64, caps: &Caps) -> Vec<SftSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials).map(|_| random_sft(&mut rng, caps)).collect()
}

/// Per-check pass counts over a suite.
#[derive(Clone, Debug, PartialEq)]
pub struct SuiteSummary {
    pub trials: usize,
    pub rows: Vec<(&'static str, usize, usize)>,
    /// First failure per check, as `(trial, detail)`.
    pub failures: Vec<(&'static str, usize, String)>,
}

pub fn run_suite(specs: &[SftSpec], caps: &Caps) -> Result<SuiteSummary> {
    let mut rows: Vec<(&'static str, usize, usize)> = Vec::new();
    let mut failures = Vec::new();
    for (i, s) in specs.iter().enumerate() {
        for c in check_spec(&s.clone().into(), caps)? {
            let row = match rows.iter_mut().find(|r| r.0 == c.name) {
                Some(r) => r,
                None => {
                    rows.push((c.name, 0, 0));
                    rows.last_mut().unwrap()
                }
            };
            row.2 += 1;
            if c.passed {
                row.1 += 1;
            } else if !failures.iter().any(|f: &(&str, usize, String)| f.0 == c.name) {
                failures.push((c.name, i, c.detail));
            }
        }
    }
    Ok(SuiteSummary {
        trials: specs.len(),
        rows,
        failures,
    })
}
