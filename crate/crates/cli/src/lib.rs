//! Command-line front end: the scheme file language, command dispatch, and
//! text and JSON rendering.

pub mod commands;
pub mod parse;
