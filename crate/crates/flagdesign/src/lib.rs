//! Exact toolkit for flag-transitive 2-(v,k,3) designs whose automorphism
//! group lies between PSL(2,q) and PGammaL(2,q).

pub mod arith;
pub mod error;
pub mod field;

pub use error::{Error, Result};
pub mod perm;
pub mod projline;
pub mod schreier;
pub mod group;
pub mod psl2;
pub mod lattice;
pub mod design;
pub mod constructions;
pub mod plane;
pub mod filters;
pub mod search;
