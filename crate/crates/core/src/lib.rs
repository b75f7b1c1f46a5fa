//! Exact computations with characters of symmetric groups: Murnaghan-Nakayama
//! characters, free cumulants, Kerov polynomials, Stanley character
//! polynomials on multi-rectangular shapes and shifted Schur functions.

pub mod algebra;
pub mod characters;
pub mod error;
pub mod kerov;
pub mod partition;
pub mod perm;
pub mod shift;
pub mod stanley;
pub mod verify;

pub use error::{Error, Result};
pub use partition::{InterlacingCoords, MultiRect, Partition};

/// Size limits for the expensive computations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest `k` in `Sigma_k` and `F_k`.
    pub k_max: usize,
    /// Largest number of rectangle blocks.
    pub m_max: usize,
    /// Largest diagram size used while solving for Kerov polynomials.
    pub n_max: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { k_max: 9, m_max: 3, n_max: 25 }
    }
}
