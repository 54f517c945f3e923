//! Commutative algebra of bands and the geometry of band schemes.
//!
//! A band is a pointed monoid `B` together with an ideal `N_B` of the
//! ambient semiring `B⁺` of formal sums, such that every element has a
//! unique additive inverse. Bands generalize commutative rings, partial
//! fields and hyperrings. This crate provides:
//!
//! * construction and validation of bands from multiplication tables or
//!   finite presentations ([`core`]),
//! * m-ideals, k-ideals and null ideals, quotients, localizations,
//!   kernels and null kernels ([`ideals`]),
//! * free and monoid algebras, limits and colimits, universal rings and
//!   polynomial division ([`constructions`]),
//! * prime spectra with their Zariski topology ([`spectrum`]),
//! * glued band schemes, projective spaces and Grassmannians ([`schemes`]),
//! * rational point sets with weak/strong Zariski and fine topologies,
//!   kernel, Tits and null spaces, and matroid extraction ([`visualize`]),
//! * a small presentation language and a batch CLI ([`cli`]).
//!
//! Null membership for finitely presented bands is only semi-decidable;
//! all bounded searches return three-valued [`core::Verdict`]s rather
//! than guessing.

pub mod cli;
pub mod constructions;
pub mod core;
pub mod error;
pub mod ideals;
pub mod schemes;
pub mod spectrum;
pub mod visualize;

pub use crate::core::{Band, BandMorphism, ElementId, FormalSum, TriState, Verdict};
pub use error::{Error, Result};
