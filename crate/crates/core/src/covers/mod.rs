//! Ordinary and branched covers of finite graphs.

pub mod branched;
pub mod girth;
pub mod multigraph;

pub use branched::{
    build_branched_cover, build_branched_cover_noncut, is_cut_vertex, verify_branched_cover, BranchedCoverMap,
    BranchedReport, NoncutCover,
};
pub use girth::{
    girth, girth_amplify, homology_cover, rose_girth_cover, voltage_cover, Girth, GirthAmplification, GirthAmplifier,
    GirthCover,
};
pub use multigraph::{Cover, End, Multigraph};
