//! Command-line front end: problem files, task execution and reports.

pub mod error;
pub mod problem;
pub mod report;
pub mod run;
