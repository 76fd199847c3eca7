//! Automatic plans: smaller epsilon gives certificates closer to the
//! topological entropy, at the cost of much longer marker words.
//!
//! ```text
//! cargo run --release --example boost_auto
//! ```

use shiftlab::boost::{auto_plan, certificate, gamma, sup_ind_report};
use shiftlab::{catalog, Caps};

fn main() -> shiftlab::Result<()> {
    let caps = Caps::from_env();
    let spec = catalog::golden_mean();
    for epsilon in [0.9, 0.8] {
        let plan = auto_plan(&spec, epsilon, &caps)?;
        let cert = certificate(&gamma(&plan, 1, 0)?, None);
        println!(
            "epsilon = {epsilon}: n = {}, k = {}, f = {}, |Upsilon| = {}, limit {:.6} >= target {:.6}",
            plan.n,
            plan.k,
            plan.f(),
            plan.upsilon.count,
            cert.limit,
            cert.target.unwrap()
        );
        for (check, ok) in plan.checks(&caps)? {
            println!("  {check}: {ok}");
        }
    }
    let r = sup_ind_report(&spec, &[0.9, 0.8], &caps)?;
    println!("sup h_ind over conjugates lies in [{:.6}, {:.6}]", r.lower, r.upper);
    Ok(())
}
