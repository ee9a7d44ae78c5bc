//! File formats, built-in rings and verification suites behind the `qdual` binary.

pub mod corpus;
pub mod format;
pub mod suites;
