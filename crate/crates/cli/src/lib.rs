//! Library surface of the CLI crate: spec-file parsing and the structured
//! report format, shared between the binary and its integration tests.

pub mod report;
pub mod spec;
