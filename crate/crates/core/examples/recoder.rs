//! The recoding conjugacy on periodic points: every family word becomes one
//! fresh symbol and a run of stars, and the inverse restores it.
//!
//! ```text
//! cargo run --example recoder
//! ```

use std::path::Path;

use shiftlab::boost::{build_recoder, check_no_overlap, gamma, manual_plan};
use shiftlab::code::PeriodicPoint;
use shiftlab::io::{load_manual_plan, recoder_to_json};
use shiftlab::{catalog, Caps, Word};

fn main() -> shiftlab::Result<()> {
    let caps = Caps::from_env();
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data");
    let spec = catalog::golden_mean();
    let plan = manual_plan(&spec, &load_manual_plan(&data.join("golden_manual_plan.json"))?, &caps)?;
    let family = gamma(&plan, 1, caps.words)?;
    let rec = build_recoder(&family, &check_no_overlap(&family))?;

    let base = spec.alphabet();
    for w in family.words()? {
        let x = PeriodicPoint::new(Word::concat(&[w, &[0, 0, 1, 0]]));
        let y = rec.forward.apply(&x)?;
        let back = rec.inverse.apply(&y)?;
        println!(
            "({})^inf -> ({})^inf, inverse ok: {}",
            base.render(x.cycle()),
            y.cycle().display(&rec.alphabet),
            back == x
        );
    }
    let doc = recoder_to_json(&family, &rec, &spec, &caps)?;
    match doc.forward.table {
        Some(t) => println!("forward window {}: {} table rows", rec.forward.window_len(), t.len()),
        None => println!(
            "forward window {}: too many windows to tabulate, kept as a rule",
            rec.forward.window_len()
        ),
    }
    Ok(())
}
