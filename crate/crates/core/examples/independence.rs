//! Independence entropy: the exact maximum mean cycle of the multi-choice
//! presentation next to the finite-length quantity it is the limit of.
//!
//! ```text
//! cargo run --example independence
//! ```

use shiftlab::independence::{hat_presentation, ind_entropy_approx_of, ind_entropy_of};
use shiftlab::{catalog, Caps};

fn main() -> shiftlab::Result<()> {
    let caps = Caps::from_env();
    let spec = catalog::golden_mean();
    let hat = hat_presentation(&spec, &caps)?;
    let exact = ind_entropy_of(&hat)?;
    println!(
        "h_ind = ln({})/{} = {:.10}, optimal cycle {}",
        exact.ratio.product,
        exact.ratio.length,
        exact.value,
        exact.cycle_encoding(&spec).join(" ")
    );
    // odd lengths gain one extra free coordinate, so the sequence zigzags down
    for m in [1, 2, 3, 4, 5, 10, 11, 60] {
        let a = ind_entropy_approx_of(&hat, m)?;
        println!("  m = {m:2}: {} fillings, {:.6}", a.fillings, a.value);
    }
    Ok(())
}
