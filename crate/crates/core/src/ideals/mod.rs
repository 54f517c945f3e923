//! m-ideals, k-ideals and null ideals: generation, membership,
//! primality, radicals, quotients, localizations and kernels.

pub mod closure;
mod kideal;
mod localize;
mod mideal;
mod nullideal;
mod quotient;

pub use kideal::{is_k_ideal, is_k_ideal_with, k_ideal_generated, kernel, known_null_sums, KIdeal};
pub use localize::{finite_localization, localization, stalk_band};
pub use mideal::{
    is_prime, m_ideal_generated, maximal_m_ideal, prime_m_ideals, radical, MIdeal, PrimeMIdeal,
};
pub use nullideal::{null_ideal_direct, null_ideal_generated, nullker, NullIdeal};
pub(crate) use nullideal::null_seed;
pub use quotient::{quotient, quotient_by_k_ideal, quotient_named};

/// Seed generating the band's own null set, for closure computations.
pub fn closure_seed(band: &crate::core::Band) -> Vec<crate::core::FormalSum> {
    null_seed(band)
}
