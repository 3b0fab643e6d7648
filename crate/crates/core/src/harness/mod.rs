//! Operational surface: instance files, generators, verification and
//! experiments.

pub mod experiment;
pub mod format;
pub mod generate;
pub mod oracle;
pub mod report;
pub mod verify;
