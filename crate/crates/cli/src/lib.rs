//! Library side of the `cc4` command: the solutions document, verification,
//! map output and the reference comparison.

pub mod app;
pub mod document;
pub mod golden;
pub mod map;
pub mod report;
pub mod settings;
pub mod verify;
