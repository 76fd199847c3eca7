//! A hand-picked plan on the golden mean shift, small enough to enumerate
//! every family word, check all overlaps and build the recoder.
//!
//! ```text
//! cargo run --example boost_manual
//! ```

use std::path::Path;

use shiftlab::boost::{build_recoder, certificate, check_no_overlap, gamma, manual_plan, realize_witness};
use shiftlab::io::load_manual_plan;
use shiftlab::{catalog, Caps};

fn main() -> shiftlab::Result<()> {
    let caps = Caps::from_env();
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data");
    let spec = catalog::golden_mean();
    let plan = manual_plan(&spec, &load_manual_plan(&data.join("golden_manual_plan.json"))?, &caps)?;
    println!("|Upsilon| = {}, buckets {:?}", plan.upsilon.count, plan.upsilon.buckets);

    for reps in 1..=4 {
        let family = gamma(&plan, reps, caps.words)?;
        let verdict = check_no_overlap(&family);
        let rec = build_recoder(&family, &verdict)?;
        let cert = certificate(&family, Some(&rec));
        let r = realize_witness(&family, &rec)?;
        println!(
            "K = {reps}: eta = {}, |Gamma| = {}, value = {:.10} (limit {:.10}), witness of length {} padded by {:?}",
            family.eta,
            family.size,
            cert.value,
            cert.limit,
            cert.witness.len(),
            r.pad.0
        );
    }
    Ok(())
}
