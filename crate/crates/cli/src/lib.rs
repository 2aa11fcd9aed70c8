//! Verification driver behind the `howe` binary.

pub mod config;
pub mod jobs;
pub mod props;
pub mod report;
