//! Degree-5 branched coverings of compact Riemann surfaces: realizability,
//! monodromy classification, intermediate coverings of the Galois closure and
//! the group algebra decomposition of its Jacobian.

pub mod affine;
pub mod cayley;
pub mod chars;
pub mod classify;
pub mod cover;
pub mod decomp;
pub mod genvec;
pub mod grp;
pub mod perm5;
pub mod ram;
