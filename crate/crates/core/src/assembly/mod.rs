//! Graph-of-spaces constructions on surfaces and the layered assembly of a
//! finite cover in which a chosen subsurface lifts.

mod complex;
pub mod config;
mod steps;

use serde::Serialize;

pub use complex::{
    blowup, label_name, pullback, regular_cover, verify_cover_complex, Check, CoverReport, Decomposition, Gluing,
    Inventory, Piece, PieceComplex, PieceKind, Region, Slot, SlotRef,
};
pub use config::AssemblyConfig;
pub use steps::{build_s1, final_close, iterate_steps, step, AssemblyParams, Closure, TopPieces};

use crate::error::AssemblyError;

/// Every stage of an assembly run.
#[derive(Debug, Clone, Serialize)]
pub struct Assembly {
    pub s1: PieceComplex,
    pub st: PieceComplex,
    /// Open-slot inventories of `S_1 .. S_T`.
    pub inventories: Vec<Inventory>,
    pub closure: Closure,
    pub report: CoverReport,
}

impl Assembly {
    pub fn closed(&self) -> &PieceComplex {
        &self.closure.complex
    }
}

/// Runs steps 1 through `T + 1` and verifies the result.
pub fn assemble(cfg: &AssemblyConfig) -> Result<Assembly, AssemblyError> {
    let dec = &cfg.decomposition;
    let s1 = build_s1(dec, &cfg.b, &cfg.params)?;
    let (st, inventories) = iterate_steps(&s1, dec, &cfg.tops, &cfg.params)?;
    let closure = final_close(&st, dec, &cfg.tops, &cfg.params)?;
    let mut report = verify_cover_complex(&closure.complex, dec, Some(cfg.params.target_girth()));
    let independent = inventories
        .iter()
        .all(|inv| complex::inventory_label_independent(inv, dec.n));
    report.checks.push(Check {
        name: "label_independent".into(),
        passed: independent,
        detail: format!("{} intermediate inventories", inventories.len()),
    });
    Ok(Assembly {
        s1,
        st,
        inventories,
        closure,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figure_two_closes() {
        let a = assemble(&AssemblyConfig::figure_two()).unwrap();
        assert!(a.report.passed(), "{:#?}", a.report.checks);
        assert!(a.closed().is_closed());
        assert!(a.report.pattern_girth.exceeds(3));
        assert_eq!(a.closure.copies_st, 1);
        assert_eq!(a.closure.copies_am, 2);
    }
}
