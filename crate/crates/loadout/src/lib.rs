//! Command-line tool, JSON/CSV formats and parallel sweeps for
//! [`loadout_core`].

pub mod cli;
pub mod json;
pub mod sweep;
