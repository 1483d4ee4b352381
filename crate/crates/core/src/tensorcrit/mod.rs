//! Tensor criterion for Landen's trilogarithm equation, the degree-3
//! polylog-BCH polynomial `P3`, and the complex and ℓ-adic pipelines that
//! assemble the equation from graded Lie polylogarithms.

mod complex;
mod ladic;
mod p3;
mod tensor;

pub use complex::{
    complex_boundaries, complex_pipeline_terms, li_complex, li_complex_values, pipeline_complex_symbolic,
    ComplexPointValues,
};
pub use ladic::{error_term, error_term_summands, ladic_boundaries, li_ladic, pipeline_ladic, pipeline_ladic_terms};
pub use p3::{p3, LiVector};
pub use tensor::{
    criterion_sum, printed_five_terms, verify_tensor_criterion, AbTensor, TorsionMode, UnitElement,
};
