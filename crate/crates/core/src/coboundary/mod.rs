//! Coboundary operators `δ¹` and `δ²` of the adjoint complex, together with
//! the hand-expanded coefficient identities they are checked against.

mod form;
mod generic;
mod printed;

pub use form::LinForm;
pub use generic::{complex_defect, d1, d1_form, d2, d2_form, form_defined, z1_defect};
pub use printed::*;
