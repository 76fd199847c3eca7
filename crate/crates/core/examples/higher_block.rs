//! Passing to N-blocks keeps the topological entropy but destroys all
//! independence: adjacent block symbols overlap, so no coordinate is free.
//!
//! ```text
//! cargo run --example higher_block
//! ```

use shiftlab::code::{higher_block, PeriodicPoint};
use shiftlab::entropy::topological_entropy;
use shiftlab::independence::ind_entropy_exact;
use shiftlab::{catalog, Caps, Word};

fn main() -> shiftlab::Result<()> {
    let caps = Caps::from_env();
    let spec = catalog::golden_mean();
    for n in 1..=3 {
        let hb = higher_block(&spec, n, &caps)?;
        let h = topological_entropy(&hb.shift, &caps)?;
        let ind = ind_entropy_exact(&hb.shift, &caps)?;
        println!(
            "N = {n}: {} symbols, h = {:.10}, h_ind = {:.10}",
            hb.shift.alphabet().len(),
            h.value,
            ind.value
        );
    }

    let hb = higher_block(&spec, 3, &caps)?;
    let x = PeriodicPoint::new(Word(vec![0, 1, 0, 0]));
    let y = hb.code.apply(&x)?;
    println!(
        "(0100)^inf -> ({})^inf -> back: {}",
        y.cycle().display(hb.shift.alphabet()),
        hb.inverse.apply(&y)? == x
    );
    Ok(())
}
