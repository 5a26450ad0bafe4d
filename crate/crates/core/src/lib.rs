//! Maximum-degree concentration for sparse random planar graphs: the
//! concentration point ν, balls into bins, Prüfer codes for rooted forests,
//! graph decomposition, exact samplers, dense-class counting and a seeded
//! experiment harness.

pub mod balls_bins;
pub mod dense_ops;
pub mod error;
pub mod graph_model;
pub mod harness;
pub mod nu;
pub mod pruefer;
pub mod samplers;

pub use error::{Error, Result};
