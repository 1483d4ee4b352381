//! Complex and ℓ-adic associators as truncated series, the chain rules
//! relating them along `z ↦ 1-z` and `z ↦ z/(z-1)`, and the symbolic
//! derivations of the Oi–Ueno and Landen equations.

mod chain;
mod fixtures;
mod landen;
mod oiueno;
mod symbols;

pub use chain::{chain_rule_1mz, chain_rule_mobius, li_coefficient, lmf_regular_coeff, two_cycle_defect, z_of};
pub use fixtures::{
    eliminate_by_shuffle, extend_group_like, fixture_path, fixture_phi, generic_drinfeld,
    generic_group_like, with_xyx_misprint, FSIGMA_LADIC_DEG3, G0_COMPLEX_DEG3, PHI_COMPLEX_DEG3,
};
pub use landen::{derive_dilog_identities, derive_landen3, two_cycle_relations, verify_landen3, verify_two_cycle, DilogIdentities, LandenDerivation, LADIC_RHS_MISPRINT};
pub use oiueno::{derive_oiueno, verify_oiueno, OiUenoDerivation, MAX_DEGREE};
pub use symbols::{dual_index, Point, Side, SideSymbols};

use crate::ncpoly::NCSeries;
use crate::ring::MPoly;

/// A group-like series labelled by the path it expands.
#[derive(Clone, Debug)]
pub struct AssociatorSeries {
    pub label: String,
    pub side: Side,
    pub point: Option<Point>,
    pub series: NCSeries<MPoly>,
}
