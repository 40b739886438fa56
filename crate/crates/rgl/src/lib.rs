//! Edge-list IO, parallel Monte Carlo and the `rgl` command line on top of `rgl-core`.

pub mod cli;
pub mod io;
pub mod par;
