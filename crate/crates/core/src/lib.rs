//! Exact computations for the q-deformed Witt Hom-Lie superalgebra `W^q`:
//! rational-function arithmetic, cochains, coboundary operators, a windowed
//! second-cohomology solver with certificates, and a formal deformation checker.

pub mod coboundary;
pub mod cochains;
pub mod deformation;
pub mod error;
pub mod h2solver;
pub mod linalg;
pub mod qfield;
pub mod qwitt;

pub use error::{Error, Result};
