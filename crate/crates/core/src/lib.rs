pub mod assemblies;
pub mod cli;
pub mod containers;
pub mod error;
pub mod finbase;
pub mod gen;
pub mod json;
pub mod laws;
pub mod operators;
pub mod sk;
pub mod weihrauch;

pub use error::{Error, Result};
