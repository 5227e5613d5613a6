//! Exact point counting on complete intersections over finite fields.
//!
//! - [`field`]: `F_{p^k}` arithmetic on packed coefficient vectors.
//! - [`poly`]: sparse multivariate polynomials.
//! - [`space`]: affine and projective enumeration.
//! - [`variety`]: projective complete intersections, point counts and the
//!   Jacobian criterion.
//! - [`sections`]: linear sections, the Bertini scan, the second moment and
//!   the census of good sections.
//! - [`bounds`]: closed-form point-count estimates.

#![no_std]

extern crate alloc;

pub mod bounds;
pub mod error;
pub mod field;
pub mod linalg;
pub mod poly;
pub mod sections;
pub mod space;
pub mod surd;
pub mod variety;

pub use error::{Error, Result};
pub use field::{FieldElement, GaloisField};
pub use poly::SparsePolynomial;
pub use space::{AffineSpace, ProjPoint, ProjectiveSpace};
pub use surd::Surd;
pub use variety::VarietyDescriptor;
