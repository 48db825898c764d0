//! Test support for `rightfront`: the worked-example fixtures, random graph
//! and corpus generators, and a brute-force frontier oracle written
//! independently of the library's traversal code.

pub mod checks;
pub mod fixtures;
pub mod generate;
pub mod oracle;
pub mod planted;
