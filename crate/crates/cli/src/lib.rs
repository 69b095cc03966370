//! Document format, SVG rendering and subcommands of the `penrose` tool.

pub mod commands;
pub mod document;
pub mod svg;
