//! Finite-dimensional modules over finite local algebras over prime fields,
//! with the homological machinery needed to test duality classes.

pub mod classes;
pub mod functor;
pub mod homology;
pub mod linalg;
pub mod module;
pub mod ring;

pub use linalg::{Matrix, PrimeField, Subspace};
pub use module::{Module, ModuleError, ModuleMap, ShortExactSequence};
pub use ring::{Ring, RingError};
