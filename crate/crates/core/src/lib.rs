pub mod cli;
pub mod closed_forms;
pub mod cylinder;
pub mod error;
pub mod geometry;
pub mod mt_lab;
pub mod numerics;
pub mod region_mapper;
pub mod spectrum;

pub use error::{Error, Result};
