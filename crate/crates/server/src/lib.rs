//! Command-line front end and HTTP service for `ndagg`.

pub mod api;
pub mod cli;
pub mod compute;
pub mod store;
