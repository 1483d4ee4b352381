//! Truncated formal power series in two non-commuting letters `X`, `Y`.

mod series;
mod word;

pub use series::{GroupLikeCheck, NCSeries};
pub use word::{all_words, shuffle, shuffle_lin, LinComb, Letter, Word};
