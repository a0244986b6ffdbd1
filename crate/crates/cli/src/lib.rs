//! File formats and subcommand implementations behind the `lkb` binary.

pub mod commands;
pub mod format;
pub mod latex;
