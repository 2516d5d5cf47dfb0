//! Command implementations behind the `sun-gates` binary.
//!
//! Each `cmd_*` returns an [`Outcome`] holding the rendered output and
//! whether every check passed; `main` only parses arguments and writes.

mod commands;
mod config;
mod verify;

pub use commands::{
    cmd_cross, cmd_disk, cmd_encode, cmd_generators, cmd_partial_wave, parse_complex, parse_state, DISK_HEADER,
    SECTOR_HEADER,
};
pub use config::{CliError, Format, Outcome, RunConfig};
pub use verify::{cmd_verify, run_suite, Check, VerifyReport};
