//! Group literals, stored reference tables, rendering, table verification and the CLI.

pub mod cli;
pub mod golden;
pub mod literal;
pub mod render;
pub mod verify;
