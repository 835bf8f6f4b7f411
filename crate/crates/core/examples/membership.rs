//! Subgroup membership, intersection and conjugacy-into with Stallings graphs.

use foldcover::automata::{Alphabet, CoreGraph};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f2 = Alphabet::new(2).expect("positive rank");
    let h = CoreGraph::build(f2, &f2.parse_generators("aa,b")?);
    println!("H = <aa,b>: {} vertices", h.graph().num_vertices());
    for w in ["aab", "ab", "baaB", "Baab"] {
        println!("  {w:>5} in H: {}", h.contains(&f2.parse_word(w)?));
    }

    let a2 = CoreGraph::build(f2, &f2.parse_generators("aa")?);
    let a3 = CoreGraph::build(f2, &f2.parse_generators("aaa")?);
    let meet = a2.intersect(&a3)?;
    let basis: Vec<String> = meet.generators().iter().map(ToString::to_string).collect();
    println!("<aa> meet <aaa> = <{}>", basis.join(","));

    let k = CoreGraph::build(f2, &f2.parse_generators("a")?);
    let conj = CoreGraph::build(f2, &f2.parse_generators("Bab")?);
    match conj.conjugate_into(&k)? {
        Some(g) => println!("g^-1 <Bab> g lies in <a> for g = {g}"),
        None => println!("no conjugate of <Bab> lies in <a>"),
    }
    Ok(())
}
