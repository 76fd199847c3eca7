//! Topological entropy from the Perron eigenvalue, checked against exact
//! block counts.
//!
//! ```text
//! cargo run --example entropy
//! ```

use shiftlab::entropy::{entropy_by_counting, topological_entropy};
use shiftlab::{catalog, Caps};

fn main() -> shiftlab::Result<()> {
    let caps = Caps::from_env();
    for (name, spec) in [
        ("golden mean", catalog::golden_mean()),
        ("even shift", catalog::even_shift()),
        ("full 3-shift", catalog::full_shift(3)),
    ] {
        let h = topological_entropy(&spec, &caps)?;
        println!("{name}: h = {:.10} (eigenvalue {:.10})", h.value, h.eigenvalue);
        for c in entropy_by_counting(&spec, 40, &caps)?.iter().filter(|c| c.n % 10 == 0) {
            println!("  |B_{}| = {}  rate {:.6}", c.n, c.count, c.rate);
        }
    }
    Ok(())
}
