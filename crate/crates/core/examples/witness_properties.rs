//! Builds the glued cover for `<ab,ba>` at several length bounds and runs
//! the short-loop checks on each.

use foldcover::automata::{Alphabet, CoreGraph};
use foldcover::witness::{build_delta, verify_witness_properties, WitnessParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f2 = Alphabet::new(2).expect("positive rank");
    let h1 = CoreGraph::build(f2, &f2.parse_generators("ab,ba")?);
    let completed = h1.complete();
    println!(
        "core: {} vertices, {} outer edges in {} pairs",
        completed.inner_vertices(),
        completed.num_outer_edges(),
        completed.outer_pairs().len()
    );
    for c in [2, 4, 6] {
        let delta = build_delta(&h1, WitnessParams { c })?;
        let report = verify_witness_properties(&delta.cover.to_labeled(), &h1, c);
        println!(
            "C = {c}: index {:>5}, gamma_K girth {}, {} paths checked, passed {}",
            delta.index(),
            delta.gamma_k.girth,
            report.paths_examined,
            report.passed()
        );
    }
    Ok(())
}
