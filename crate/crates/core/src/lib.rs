//! Exact and numerical verification of polylogarithm functional equations
//! through the coefficients of group-like series in two non-commuting
//! variables.

pub mod associator;
pub mod charconv;
pub mod error;
pub mod freelie;
pub mod tensorcrit;
pub mod ncpoly;
pub mod report;
pub mod ring;
pub mod selftest;

pub use error::{Error, Result};
