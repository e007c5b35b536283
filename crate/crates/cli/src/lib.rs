//! Command-line companion to `quadirr-core`: argument handling, CSV/JSON
//! emission, the benchmark grid runner, the sweep driver with optional
//! thread fan-out, and the cross-route self-check.

pub mod bench;
pub mod output;
pub mod selftest;
pub mod sweep;
