//! Recoding a sofic shift so that its independence entropy approaches its
//! topological entropy.
//!
//! A plan fixes a marker `M S C` and a bucket `Υ` of inner words. The words
//! `M S C (L F R C)^K` with `F ∈ Υ` cannot overlap, so replacing each
//! occurrence by one fresh symbol and a run of stars is a conjugacy. In the
//! image every such symbol can be swapped freely, which certifies
//! `h_ind ≥ K ln|Υ| / η_K`.

mod certificate;
mod gamma;
mod plan;
mod recoder;

pub use certificate::{certificate, realize_witness, Certificate, Realization, Witness};
pub use gamma::{check_no_overlap, gamma, GammaFamily, Overlap, OverlapVerdict};
pub use plan::{
    anchor_marker, auto_plan, build_upsilon, choose_n_k, find_marker, length_bounds, manual_plan, select_core,
    BoostPlan, Core, Lengths, ManualPlan, Marker, Upsilon, MAX_SEARCH_LENGTH,
};
pub use recoder::{build_recoder, Recoder};

use crate::entropy::topological_entropy;
use crate::error::{Error, Result};
use crate::independence::{ind_entropy_exact, IndEntropyReport};
use crate::spec::{Caps, ShiftSpec};

#[derive(Clone, Debug)]
pub struct BoundEntry {
    pub epsilon: f64,
    pub n: usize,
    pub k: usize,
    pub limit: f64,
    pub target: f64,
}

/// Bracket for the supremum of `h_ind` over the conjugacy class.
#[derive(Clone, Debug)]
pub struct SupIndReport {
    pub lower: f64,
    pub upper: f64,
    pub h_ind: IndEntropyReport,
    pub entries: Vec<BoundEntry>,
    /// `h_ind` of the shift itself already equals `h`.
    pub attained: bool,
}

pub fn sup_ind_report(spec: &ShiftSpec, epsilons: &[f64], caps: &Caps) -> Result<SupIndReport> {
    let h = topological_entropy(spec, caps)?.value;
    let h_ind = ind_entropy_exact(spec, caps)?;
    let mut entries = Vec::new();
    if h > 1e-12 {
        for &epsilon in epsilons {
            let plan = auto_plan(spec, epsilon, caps)?;
            // only the limit enters the bound, so one repetition suffices
            let cert = certificate(&gamma(&plan, 1, 0)?, None);
            if cert.meets_target() != Some(true) {
                return Err(Error::Internal(format!(
                    "certificate limit {} misses the target at epsilon {epsilon}",
                    cert.limit
                )));
            }
            entries.push(BoundEntry {
                epsilon,
                n: plan.n,
                k: plan.k,
                limit: cert.limit,
                target: cert.target.unwrap_or_default(),
            });
        }
    }
    let lower = entries.iter().map(|e| e.limit).fold(h_ind.value, f64::max);
    Ok(SupIndReport {
        lower,
        upper: h,
        attained: (h_ind.value - h).abs() <= 1e-12,
        h_ind,
        entries,
    })
}
