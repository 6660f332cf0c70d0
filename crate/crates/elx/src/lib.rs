//! Concrete syntax, file formats, reports and the `elx` command line for
//! [`elx_core`].

pub mod cli;
pub mod report;
pub mod text;

pub use cli::run;
pub use report::ExitStatus;
pub use text::{parse_axiom, parse_concept, parse_interpretation, parse_ontology, ParseError, SourceSpan};
