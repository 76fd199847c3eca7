//! The invariant suite on seeded random shifts of finite type.
//!
//! ```text
//! cargo run --release --example verify_suite -- 50 7
//! ```

use shiftlab::verify::{random_suite, run_suite};
use shiftlab::Caps;

fn main() -> shiftlab::Result<()> {
    let mut args = std::env::args().skip(1);
    let trials = args.next().and_then(|a| a.parse().ok()).unwrap_or(25);
    let seed = args.next().and_then(|a| a.parse().ok()).unwrap_or(0);
    let caps = Caps::from_env();
    let summary = run_suite(&random_suite(trials, seed, &caps), &caps)?;
    for (name, passed, total) in summary.rows {
        println!("{passed:4}/{total:<4} {name}");
    }
    for (name, trial, detail) in summary.failures {
        println!("first failure of `{name}` at trial {trial}: {detail}");
    }
    Ok(())
}
