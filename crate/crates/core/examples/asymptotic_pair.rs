//! A pair of points that differ in exactly one coordinate, read off a
//! multi-member edge of the multi-choice presentation.
//!
//! ```text
//! cargo run --example asymptotic_pair
//! ```

use shiftlab::independence::asymptotic_pair;
use shiftlab::{catalog, Caps};

fn main() -> shiftlab::Result<()> {
    let caps = Caps::from_env();
    for (name, spec) in [
        ("golden mean", catalog::golden_mean()),
        ("even shift", catalog::even_shift()),
    ] {
        let p = asymptotic_pair(&spec, &caps)?;
        let a = spec.alphabet();
        let (from, to) = (p.diff_index - 8, p.diff_index + 9);
        println!("{name}:");
        println!("  x = ...{}...", a.render(&p.x.window(from, to)));
        println!("  y = ...{}...", a.render(&p.y.window(from, to)));
        println!("  differences in [-100, 100): {:?}", p.differences(-100, 100));
    }
    Ok(())
}
