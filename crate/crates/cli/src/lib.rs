//! Command-line front end for the `metaplectic` library.

pub mod commands;
pub mod expr;
pub mod report;
pub mod satake_io;
pub mod suites;
