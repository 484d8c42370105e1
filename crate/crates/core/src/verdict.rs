//! Weak amenability of the simply connected group with a given Lie algebra.
//!
//! With `g = r ⋊ (s_1 ⊕ … ⊕ s_n)`, the group is weakly amenable iff every
//! `s_i` has real rank zero, or real rank one and `[s_i, r] = 0`. The constant
//! is then the product of the per-factor constants, and `+∞` otherwise.

use serde::{Deserialize, Serialize};

use crate::catalog::{Catalog, RealFormRecord, WaConstant};
use crate::lie::LieAlgebra;
use crate::structure::{identify_real_form, levi, split_semisimple, LeviDecomposition, StructureError};
use crate::subspace::Subspace;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorReport {
    pub index: usize,
    pub ideal: Subspace,
    pub form: RealFormRecord,
    pub commutes_with_radical: bool,
    pub admissible: bool,
}

impl FactorReport {
    pub fn is_noncompact(&self) -> bool {
        self.form.real_rank >= 1
    }
}

/// Which alternative of the radical/non-compact-factor dichotomy holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Dichotomy {
    /// Every non-compact simple factor commutes with the radical.
    #[serde(rename = "case-A")]
    CaseA,
    /// Some non-compact simple factor acts nontrivially on the radical.
    #[serde(rename = "case-B")]
    CaseB,
}

impl std::fmt::Display for Dichotomy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Dichotomy::CaseA => "case-A",
            Dichotomy::CaseB => "case-B",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub weakly_amenable: bool,
    pub constant: WaConstant,
    pub decomposition: LeviDecomposition,
    pub factors: Vec<FactorReport>,
    pub dichotomy: Dichotomy,
}

/// `[s_i, r] = 0`, checked on basis pairs.
pub fn commutes_with_radical(g: &LieAlgebra, s_i: &Subspace, r: &Subspace) -> bool {
    g.bracket_span(s_i, r).is_zero()
}

fn factor_reports(g: &LieAlgebra, decomposition: &LeviDecomposition, catalog: &Catalog) -> Result<Vec<FactorReport>, StructureError> {
    let ideals = split_semisimple(g, &decomposition.levi)?;
    ideals
        .into_iter()
        .enumerate()
        .map(|(index, ideal)| {
            let form = identify_real_form(&g.restrict(&ideal, "s")?, catalog)?;
            let commutes = commutes_with_radical(g, &ideal, &decomposition.radical);
            let admissible = form.real_rank == 0 || (form.real_rank == 1 && commutes);
            Ok(FactorReport { index, ideal, form, commutes_with_radical: commutes, admissible })
        })
        .collect()
}

fn dichotomy_of(factors: &[FactorReport]) -> Dichotomy {
    if factors.iter().filter(|f| f.is_noncompact()).all(|f| f.commutes_with_radical) {
        Dichotomy::CaseA
    } else {
        Dichotomy::CaseB
    }
}

/// Runs radical → Levi factor → simple ideals → real forms → admissibility.
pub fn decide(g: &LieAlgebra, catalog: &Catalog) -> Result<Verdict, StructureError> {
    let decomposition = levi(g)?;
    let factors = factor_reports(g, &decomposition, catalog)?;
    let weakly_amenable = factors.iter().all(|f| f.admissible);
    let constant = if weakly_amenable {
        factors.iter().map(|f| f.form.lambda_wa.clone()).product()
    } else {
        WaConstant::Infinite
    };
    let dichotomy = dichotomy_of(&factors);
    Ok(Verdict { weakly_amenable, constant, decomposition, factors, dichotomy })
}

/// Case A iff the sum of the non-compact simple ideals commutes with the radical.
pub fn dichotomy_case(g: &LieAlgebra, catalog: &Catalog) -> Result<Dichotomy, StructureError> {
    let decomposition = levi(g)?;
    Ok(dichotomy_of(&factor_reports(g, &decomposition, catalog)?))
}
