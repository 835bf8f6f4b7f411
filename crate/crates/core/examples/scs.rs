//! Conjugacy of subgroups, decided both ways.

use foldcover::automata::{Alphabet, CoreGraph};
use foldcover::witness::{scs, ScsVerdict};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f2 = Alphabet::new(2).expect("positive rank");
    for (a, b) in [("a", "Bab"), ("ab,ba", "ba,ab"), ("a", "aa"), ("a", "b")] {
        let h1 = CoreGraph::build(f2, &f2.parse_generators(a)?);
        let h2 = CoreGraph::build(f2, &f2.parse_generators(b)?);
        let verdict = scs(&h1, &h2)?;
        let text = match &verdict {
            ScsVerdict::Conjugate { g, .. } => format!("conjugate by {g}"),
            ScsVerdict::Separated { direction, result } => {
                let index = match result {
                    foldcover::witness::ConSeparation::Witness { delta, .. } => delta.index(),
                    _ => 0,
                };
                format!("separated ({direction:?}) in a quotient of degree {index}")
            }
        };
        println!("<{a}> vs <{b}>: {text}; verified {}", verdict.is_verified());
    }
    Ok(())
}
