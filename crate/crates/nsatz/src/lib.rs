//! Text formats and command-line front end for `nsatz-core`.

pub mod cli;
pub mod sysio;
