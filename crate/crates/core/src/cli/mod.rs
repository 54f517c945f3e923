//! Presentation-language parser, name registry, command dispatcher and
//! exporters: the batch entry point.

pub mod parse;
pub mod registry;
pub mod report;
pub mod run;

pub use parse::{parse as parse_presentation, serialize as serialize_presentation, PresentationFile};
pub use registry::Registry;
pub use run::Outcome;
