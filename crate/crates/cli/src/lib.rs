//! Library half of the `qappell` binary: subcommand implementations,
//! the JSON/table reporter and the seeded input generator.

pub mod commands;
pub mod report;
pub mod rng;
