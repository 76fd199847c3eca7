//! Building presentations: an SFT from forbidden words, a sofic shift from
//! a labeled graph file, subset construction and minimization.
//!
//! ```text
//! cargo run --example presentations
//! ```

use std::path::Path;

use shiftlab::io::{graph_to_json, load_spec};
use shiftlab::language::{enumerate_words, periodic_points};
use shiftlab::{Alphabet, Caps, LabeledGraph, SftSpec, ShiftSpec};

fn main() -> shiftlab::Result<()> {
    let caps = Caps::from_env();
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data");

    let gm = load_spec(&data.join("golden_mean.json"))?;
    let g = gm.presentation(&caps)?;
    println!(
        "golden mean presentation: {}",
        serde_json::to_string(&graph_to_json(&g)).unwrap()
    );

    // no 1 followed by 2 and no 22: a 1-step SFT over three symbols
    let sft: ShiftSpec = SftSpec::from_strs(&["0", "1", "2"], &["12", "22"])?.into();
    let words = enumerate_words(&sft, 3, &caps)?;
    println!("|B_3| of the 3-symbol SFT = {}", words.len());

    // p reads `a` into both q and r, which behave alike
    let a = Alphabet::new(["a", "b"])?;
    let nd = LabeledGraph::from_names(
        a,
        &["p", "q", "r"],
        &[("p", "q", "a"), ("p", "r", "a"), ("q", "p", "b"), ("r", "p", "b")],
    )?;
    let det = nd.determinize(caps.states)?;
    let min = det.trim().minimize_right_resolving()?;
    println!(
        "{} vertices -> {} subsets after determinizing -> {} after trimming and minimizing",
        nd.vertex_count(),
        det.vertex_count(),
        min.vertex_count()
    );

    let even = load_spec(&data.join("even_shift.json"))?;
    for p in 1..=4 {
        let pts = periodic_points(&even, p, &caps)?;
        let names: Vec<String> = pts.iter().map(|x| even.alphabet().render(x.cycle())).collect();
        println!("even shift, period {p}: {names:?}");
    }
    Ok(())
}
