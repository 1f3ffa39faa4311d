//! Command line, JSON and DOT formats, corpora and benchmarks for
//! [`cartfact_core`].

pub mod bench;
pub mod cli;
pub mod corpus;
pub mod dot;
pub mod error;
pub mod explain;
pub mod gen;
pub mod json;
pub mod pipeline;
pub mod report;

pub use error::CliError;
