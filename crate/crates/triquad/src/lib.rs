//! File formats, reports, verification suites and the command-line front
//! end for `triquad-core`.

pub mod angles;
pub mod cli;
pub mod io;
pub mod report;
pub mod verify;
