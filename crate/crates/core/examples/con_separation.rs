//! Separating `H1 = <a>` from `H2 = <b>` in a finite quotient.

use foldcover::automata::{Alphabet, CoreGraph};
use foldcover::witness::{con_separate, finite_quotient, ConSeparation};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f2 = Alphabet::new(2).expect("positive rank");
    let h1 = CoreGraph::build(f2, &f2.parse_generators("a")?);
    let h2 = CoreGraph::build(f2, &f2.parse_generators("b")?);

    match con_separate(&h1, &h2)? {
        ConSeparation::Conjugator { g, verified } => println!("conjugator {g} (verified: {verified})"),
        ConSeparation::Witness { delta, scan } => {
            println!("witness D of index {}", delta.index());
            println!(
                "  cosets scanned: {}, cosets holding a conjugate of H2: {}",
                scan.cosets_checked,
                scan.failures.len()
            );
            let q = finite_quotient(&delta.cover, &h1, &h2);
            println!("  H1 fixes the base coset: {}", q.h1_fixes_base);
            println!("  image of b: {:?}", q.h2_images[0]);
        }
    }
    Ok(())
}
