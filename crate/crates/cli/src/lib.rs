//! Library side of the cpspin command-line tool: seed-expression parsing,
//! model specifications, the check pipeline and the export formats. The
//! binary in `main.rs` is a thin argument-parsing wrapper over this crate.

pub mod export;
pub mod parse;
pub mod pipeline;
pub mod report;
pub mod spec;
