//! File formats and the command-line front end for `tetrify-core`.

pub mod cli;
pub mod json;
pub mod off;
