//! One module per verification suite.

pub mod berezin;
pub mod corollaries;
pub mod kronecker;
pub mod numrad_chain;
pub mod poly;
pub mod selftest;
pub mod spectral;
