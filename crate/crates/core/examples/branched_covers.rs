//! Branched covers of a triangle with a pendant edge, with and without a
//! non-cut lift.

use foldcover::covers::{
    build_branched_cover, build_branched_cover_noncut, is_cut_vertex, verify_branched_cover, Multigraph,
};

fn main() -> Result<(), foldcover::error::CoverError> {
    let g = Multigraph {
        vertices: 4,
        edges: vec![(0, 1), (1, 2), (2, 0), (2, 3)],
    };
    let degrees = [2, 3, 2, 1];

    let map = build_branched_cover(&g, &degrees)?;
    let report = verify_branched_cover(&map);
    println!(
        "{} sheets, source has {} vertices and {} edges; conditions hold: {}",
        map.sheets,
        map.source.vertices,
        map.source.edges.len(),
        report.passed()
    );

    // vertex 1 has neighbours 0 and 2, both of degree at least 2
    let nc = build_branched_cover_noncut(&g, &degrees, 1)?;
    println!(
        "non-cut lift {} of vertex 1 in a source of girth {}; cut vertex: {}",
        nc.lift,
        nc.source_girth,
        is_cut_vertex(&nc.map.source, nc.lift)
    );

    // vertex 3 hangs off vertex 2, whose neighbour 3 has degree 1
    match build_branched_cover_noncut(&g, &degrees, 2) {
        Ok(_) => println!("unexpected success"),
        Err(e) => println!("vertex 2: {e}"),
    }
    Ok(())
}
