//! Library surface of the `qsp` command-line tool: golden-table data,
//! the verification battery, and the relation renderers.

pub mod golden;
pub mod parallel;
pub mod render;
pub mod verify;
