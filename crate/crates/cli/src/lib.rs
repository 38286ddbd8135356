//! A small scripting language for containment checks: declare rings and ideals,
//! state assumptions, run checks and collect a JSON report.

pub mod ast;
pub mod lexer;
pub mod parser;
pub mod pretty;
pub mod runner;

pub use lexer::ParseError;
pub use parser::parse;
pub use pretty::script as pretty_script;
pub use runner::{run, Output, RunConfig};
