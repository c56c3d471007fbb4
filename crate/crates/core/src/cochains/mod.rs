//! Homogeneous 1- and 2-cochains of fixed parity and degree, stored on
//! canonical coefficient keys over a finite window.

mod cochain;
mod io;
mod keys;
mod random;
mod window;

pub use cochain::{identity_cochain, one_keys, window_pair_keys, Cochain1, Cochain2, Cochain3Defect};
pub use io::{Cochain1Json, Cochain2Json, DefectEntry, DefectReport, OneEntry, PairEntry};
pub use keys::{one_target, pair_key, pair_target, OneKey, PairKey, Slot3, Table, TripleKey};
pub use random::{random_alpha_compatible_cochain1, random_cochain1, random_cochain2, CoeffKind};
pub use window::Window;
