//! Text and JSON front end for `cosetcalc-core`: the expression language,
//! printers, map files and the `cosetcalc` command line.

pub mod cli;
pub mod hom;
pub mod json;
pub mod parse;
pub mod text;

pub use cli::{run, run_with_env, CliError, Outcome};
