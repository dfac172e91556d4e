//! Command-line verbs and the local JSON service of the hlcluster workbench.

pub mod commands;
pub mod server;
pub mod session;
