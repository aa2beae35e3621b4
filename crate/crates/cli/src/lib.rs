//! Data emitters behind the `rotor` binary. Every command returns its whole
//! output as a `String` so the binary, the tests and the acceptance suite
//! share one code path.

pub mod commands;
pub mod format;
pub mod verify;

pub use commands::CommandError;
pub use verify::{CheckRecord, CheckStatus, VerifyOptions, VerifyReport};
