//! Finitely generated subgroups of free groups through Stallings graphs,
//! finite-index witnesses separating them from conjugates of other
//! subgroups, covers of finite graphs with large girth or prescribed
//! branching, and the combinatorics of surface covers built from pieces.
//!
//! Start with [`automata`] for words and core graphs and [`witness`] for
//! separation. [`covers`] holds the graph covers; [`surface`] and
//! [`assembly`] hold the surface bookkeeping. [`cli`] backs the
//! `foldcover` binary.

pub mod assembly;
pub mod automata;
pub mod cli;
pub mod covers;
pub mod error;
pub mod surface;
pub mod witness;
