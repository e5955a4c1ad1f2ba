//! Kostant root systems and parabolic subalgebras with prescribed reductive part.

pub mod classical;
pub mod cli;
pub mod error;
pub mod exceptional;
pub mod invariants;
pub mod parse;
pub mod positivity;
pub mod rational;
pub mod report;
pub mod roots;
pub mod verify;
pub mod weyl;

pub use error::{Error, Result};
