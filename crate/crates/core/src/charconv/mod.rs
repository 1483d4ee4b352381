//! Polylogarithmic characters: conversion between `Li^ℓ_m` and `χ̃_m`,
//! rewriting ℓ-adic identities in character form, and `ℤ_ℓ`-integrality
//! checks by residue enumeration.

mod forms;
mod integrality;

pub use forms::{
    character_forms, characters_from_li, from_character_form, characters_from_li_at, chi3_landen_rhs_terms,
    chi2_landen_rhs_terms, chi2_reflection_rhs_terms, li_from_characters, li_from_characters_at,
    to_character_form, CharacterForm, CharacterForms, KummerAxioms,
};
pub use integrality::{integrality_check, integrality_table, IntegralityConstraint, IntegralityOutcome, IntegralityRow};
