//! Library side of the command line front end: file formats, the random
//! system generator and the command drivers, reused by the test suites.

pub mod commands;
pub mod formats;
pub mod generate;
