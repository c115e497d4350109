//! Finite-state dimension toolkit.
//!
//! Probability measures and their information functionals ([`measures`]),
//! symbol sequences and block statistics ([`streams`]), finite-state
//! gamblers and gales ([`gales`]), information-lossless compressors and the
//! constructions linking them to gamblers ([`compressors`]), and estimators
//! of finite-state dimension and β-dimension ([`estimators`]).

pub mod cli;
pub mod compressors;
pub mod error;
pub mod estimators;
pub mod exact;
pub mod gales;
pub mod grid;
pub mod measures;
pub mod random;
pub mod streams;

pub use error::{Error, Result};
