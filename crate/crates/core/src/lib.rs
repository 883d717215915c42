//! Exact-arithmetic matrix groups over GF(p), Z/m and Q: transvection
//! calculus, ring-in-group interpretations, definable subgroups, symmetric
//! 2-cocycles and abelian deformations of triangular groups.

pub mod cohom;
pub mod defsets;
pub mod deform;
pub mod error;
pub mod group;
pub mod interp;
pub mod matgroup;
pub mod matrix;
pub mod report;
pub mod ring;
pub mod suites;
pub mod word;

pub use error::{Error, Result};
pub use matrix::{GroupKind, Matrix};
pub use ring::{RingElem, RingSpec};
