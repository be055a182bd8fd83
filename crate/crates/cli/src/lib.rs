//! IO companion for the fair-completion library: the JSON instance and
//! allocation formats, and the seeded verification sweeps behind the
//! `verify` subcommand.

pub mod format;
pub mod sweeps;
