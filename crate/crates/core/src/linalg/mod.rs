//! Exact scalars and linear algebra over ℚ(ω).

pub mod matrix;
pub mod modular;
pub mod scalar;

pub use matrix::{echelon_basis, in_span, span_rank, AffineSpace, ExactMatrix, Rref};
pub use modular::{certified_rank, certified_rank_int, modular_rank, modular_rank_int, CertifiedRank, IntMatrix};
pub use scalar::{format_rational, parse_rational, rational, Cyclotomic, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("cannot parse `{0}` as an exact scalar")]
    Parse(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} has no primitive cube root of unity (need p ≡ 1 mod 3)")]
    NoCubeRoot(u64),
    #[error("entry ({row}, {col}) is not an integer")]
    NonInteger { row: usize, col: usize },
    #[error("entry ({row}, {col}) does not fit in a machine word")]
    EntryTooLarge { row: usize, col: usize },
}
