//! Instance files, generators, command dispatch with oracle checks, and
//! timing series for `geogirth-core`.

pub mod bench;
pub mod generate;
pub mod instance;
pub mod run;

pub use run::{Algorithm, Answer, RunReport};
