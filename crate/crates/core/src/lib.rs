//! Sequent calculi, natural deduction, an SC-to-ND translation and proof
//! compression for minimal and intuitionistic propositional logic.

pub mod classical;
pub mod experiments;
pub mod dag;
pub mod error;
pub mod formula;
pub mod nd;
pub mod oracle;
pub mod parse;
pub mod sequent;
pub mod translate;

pub use error::Error;
pub use formula::Formula;
pub use parse::{parse, pretty};
