//! Knot and link invariants.

pub mod fox;
pub mod fox_milnor;
pub mod seifert;
pub mod signature;

pub use fox::{alexander_fox, alexander_with_map};
pub use fox_milnor::{
    determinant, fox_milnor_check, fox_milnor_pair, satellite_alex_predict, satellite_sig_predict,
    FoxMilnor,
};
pub use seifert::{seifert_matrix, SeifertMatrix};
pub use signature::{lt_signature, Angle, SignatureSample};

use crate::diagrams::{simplify_reidemeister, vogel_to_braid, PDCode};
use crate::error::{Error, Result};
use crate::groups::wirtinger;
use crate::poly::LaurentPolynomial;

/// Alexander polynomial of a knot diagram through its Wirtinger presentation.
pub fn knot_alexander(d: &PDCode) -> Result<LaurentPolynomial> {
    if !d.is_knot() {
        return Err(Error::NotAKnot(d.component_count()));
    }
    alexander_fox(&wirtinger(d))
}

/// Seifert matrix of a knot diagram, via a braid obtained by Vogel's
/// algorithm after simplification.
pub fn knot_seifert_matrix(d: &PDCode) -> Result<SeifertMatrix> {
    if !d.is_knot() {
        return Err(Error::NotAKnot(d.component_count()));
    }
    let s = simplify_reidemeister(d, crate::diagrams::reidemeister::DEFAULT_BUDGET);
    seifert_matrix(&vogel_to_braid(&s).reduced())
}

pub fn knot_signature(d: &PDCode, omega: Angle) -> Result<SignatureSample> {
    Ok(lt_signature(&knot_seifert_matrix(d)?, omega))
}
