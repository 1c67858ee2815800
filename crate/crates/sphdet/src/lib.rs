//! Standard-library front end for `sphdet-core`: file formats, the parallel
//! sign table, the acceptance suite and the `sphdet` command.

pub mod acceptance;
pub mod cli;
pub mod format;
pub mod table;
