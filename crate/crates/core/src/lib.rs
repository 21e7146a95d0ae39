//! Lawson homology tables of complex projective varieties built from atoms
//! by decomposition rules, finite quotients and Hilbert schemes of points.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod atoms;
pub mod bigraded;
pub mod decompose;
pub mod error;
pub mod hilb;
pub mod matrix;
pub mod motive;
pub mod quotient;
pub mod verify;

pub use atoms::{builtin_atom, unirational_atom, Atom, AtomSpec, Builtin};
pub use bigraded::{
    direct_sum, tensor_convolve, Bidegree, BigradedMap, DimEntry, LawsonTable, MorphicTable, Origin,
};
pub use error::{Error, Result};
pub use matrix::{Matrix, Rational};
