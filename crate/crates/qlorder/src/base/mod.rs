//! Concrete base groups and the subgroup data of an HNN extension.

mod free;
mod int_lattice;
mod subgroup;

pub use free::{FreeGroup, Letter};
pub use int_lattice::{IntLattice, Sublattice2};
pub use subgroup::{
    make_bs, make_free_hnn, make_int_lattice, make_int_lattice_hnn, make_int_lattice_span,
    validate_hypotheses, CeilingMap, ElemMap, ElemPred, HnnPresentation, SubgroupData,
    ValidationReport, ValidationState, DEFAULT_VALIDATION_BOUND,
};
