//! Config-driven experiment runner for the `polydisc` library.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod report;
pub mod run;

pub use config::{parse_config, Config, ConfigErrors, Experiment, Format, Kind, KINDS};
pub use report::{emit, Gate, Report, Table};
pub use run::{run, run_all};
