//! Inputs shared by the benchmarks.

use tensorspace_core::autgroup::{construction_forms, ConstructionMode};
use tensorspace_core::fraisse;
use tensorspace_core::{PermGroup, SparseForm};

pub fn standard_forms_petersen() -> Vec<SparseForm> {
    forms_of(&fraisse::petersen(), ConstructionMode::Standard)
}

pub fn blowup_forms_c5() -> Vec<SparseForm> {
    forms_of(&fraisse::cycle(5).expect("n >= 3"), ConstructionMode::Blowup(3))
}

pub fn dihedral(n: usize) -> PermGroup {
    let c = fraisse::cycle(n).expect("n >= 3");
    c.automorphism_search(&Default::default()).expect("small cycle")
}

fn forms_of(s: &tensorspace_core::RelationalStructure, mode: ConstructionMode) -> Vec<SparseForm> {
    construction_forms(s, mode).expect("valid mode").into_iter().map(|(_, f)| f).collect()
}
