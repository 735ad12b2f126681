//! Wadge hierarchies of zero-dimensional Polish spaces.

pub mod ordinal;
pub mod space;
pub mod engine;
pub mod diffhier;
pub mod oracle;
pub mod cli;
