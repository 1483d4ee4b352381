//! Multiple polylogarithms at real arguments by nested series with certified
//! tails, multiple zeta values by Hölder convolution, and numeric checks of
//! the classical functional equations.

mod checks;
mod series;

pub use checks::{numeric_check, pipeline_complex, sample_points, CheckId, NumericRow};
pub use series::{mpl, mpl_eval, mzv, polylog, Evaluation, DEFAULT_TOL};
