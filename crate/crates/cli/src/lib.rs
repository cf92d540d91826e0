//! Document format and rendering for the `cubic-mcm` command-line tool.

pub mod doc;
pub mod render;
