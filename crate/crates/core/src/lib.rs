//! Kneser graphs, their Kronecker covers and the quotients of those covers by
//! odd involutions, with the symmetry, coloring and topology computations
//! used to check statements about them.

pub mod cache;
pub mod coloring;
pub mod cover;
pub mod error;
pub mod graph;
pub mod kneser;
pub mod ncomplex;
pub mod report;
pub mod symmetry;

pub use error::{Error, Result};
