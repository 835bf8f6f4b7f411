//! Raising the girth of the two-petal rose one round at a time.

use foldcover::covers::{GirthAmplifier, Multigraph};

fn main() -> Result<(), foldcover::error::CoverError> {
    let mut amp = GirthAmplifier::new(&Multigraph::rose(2))?;
    while !amp.girth().exceeds(10) {
        amp.step()?;
    }
    for (round, s) in amp.stages().iter().enumerate() {
        println!(
            "round {round}: {:>6} vertices, girth {:>2}, {} short circuits hit by {} functionals",
            s.vertices, s.girth, s.circuits, s.functionals
        );
    }
    Ok(())
}
