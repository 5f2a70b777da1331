//! Exact max-plus tools for alcoved polytopes, with a focus on isocanted
//! alcoved polytopes: matrix classes, vertex enumeration, face lattices,
//! f-vector identities and a sweep of numerical conjectures.

pub mod classes;
pub mod combinatorics;
pub mod conjectures;
pub mod error;
pub mod geometry;
pub mod io;
pub mod linalg;
pub mod rational;
pub mod tropical;

pub use error::{Error, Result};
