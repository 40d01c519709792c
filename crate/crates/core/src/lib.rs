pub mod berezin;
pub mod bounds;
pub mod cli;
pub mod error;
pub mod harness;
pub mod matrix;
pub mod poly;
pub mod radius;
pub mod spectral;
