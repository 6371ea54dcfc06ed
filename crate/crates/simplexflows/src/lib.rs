//! File formats, command-line interface and verification suite for
//! `simplexflows-core`.

pub mod cli;
pub mod io;
pub mod oracles;
pub mod sampling;
pub mod selfcheck;
