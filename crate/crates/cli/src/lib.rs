//! The `stone` command-line tool: an algebra-expression language, command
//! dispatch, and the property suites behind `stone check`.

pub mod commands;
pub mod error;
pub mod expr;
pub mod suites;

pub use commands::run;
