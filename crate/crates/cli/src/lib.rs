//! Model files, command dispatch and output formats behind the `cartan` binary.

pub mod commands;
pub mod model;
pub mod output;
