//! Exact engine for dualisability and compactness of local torsion objects in
//! derived categories of commutative noetherian rings.

pub mod completion;
pub mod complexes;
pub mod error;
pub mod gamma;
pub mod grobner;
pub mod laws;
pub mod manifest;
pub mod pid_model;
pub mod resolutions;
pub mod rings;

pub use error::{Error, Result};
