//! Combinatorics of the Langlands classification in exact arithmetic.
//!
//! * [`root_datum`]: based root data, duals, Cartan matrices.
//! * [`weyl`]: Weyl groups, cosets, diagram actions, relative Weyl groups and
//!   invariant lattices.
//! * [`chamber`]: the spaces `a*_M`, regularity, dominant chambers and the
//!   encoding `ν ↦ z(ν)`.
//! * [`lparam`]: L-parameters of `GL_n(F)` and `GL_m(D)` as multisegments,
//!   with the classification by standard triples.
//! * [`fuzz`]: seeded generators of parameters and triples.

pub mod chamber;
mod error;
pub mod fuzz;
pub mod lparam;
pub mod matrix;
pub mod par;
pub mod rational;
pub mod root_datum;
pub mod weyl;

pub use error::Error;
pub use par::Execution;
pub use rational::Rational;
pub use root_datum::{BasedRootDatum, CartanMatrix, DatumError, DatumFile};
pub use weyl::{ParabolicSubset, WeylCoset, WeylElement, WeylError, WeylGroup};
