//! Artin-type and Milnor-type invariants of welded string links, and
//! classical Milnor invariants of links given by PD codes.

pub mod autc;
pub mod classical;
pub mod cli;
mod dense;
pub mod error;
pub mod gauss;
pub mod lyndon;
pub mod nilpotent;
pub mod magnus;
pub mod milnor4;
pub mod words;

pub use error::{Error, Result};
