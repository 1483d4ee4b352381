//! Free Lie algebra on `X`, `Y` in the Lyndon basis, embedded in the
//! truncated series ring through iterated commutators `[A, B] = AB - BA`.

mod lie;
mod lyndon;

pub use lie::{bch, phi3, z_series, LieElement};
pub use lyndon::{bracket_expansion, is_lyndon, lyndon_words, standard_factorization};
