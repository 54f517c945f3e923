//! Pointed monoids, formal sums, bands, morphisms and hom-set
//! enumeration.

mod band;
mod elem;
pub mod monoid;
mod morphism;
pub mod standard;

pub use band::{
    check_band_axioms, check_fusion, check_hereditary_fusion, check_null_is_ideal, make_finite_band, Band, Mode,
    NullGens, NullOracle, TriState, Verdict, DEFAULT_BOUND,
};
pub(crate) use band::{BandBuilder, Carrier};
pub use elem::{ElementId, FormalSum};
pub use monoid::{Monomial, PresentedMonoid, RewriteRule, TableMonoid, VarDecl};
pub use morphism::{base_inclusion, check_morphism, hom_set, hom_set_over, identity_morphism, BandMorphism, MorphismMap};
pub use standard::{standard_band, StandardBands};
