//! Exact construction, verification and degree auditing of Nullstellensatz
//! certificates over finite fields and over finite evaluation sets in
//! arbitrary exact fields.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod certgen;
pub mod error;
pub mod field;
pub mod finitesatz;
mod linalg;
pub mod lowerbounds;
pub mod mpoly;
pub mod oracle;
pub mod random;
pub mod system;

pub use certgen::{certify_t1, indicator_factors, verify, Certificate, CheckOptions, Mode, VerifyReport};
pub use error::{Error, Result};
pub use field::{ArithOp, FieldDesc, FieldElem, FieldKind};
pub use finitesatz::{certify_t2, ImageTable};
pub use mpoly::{
    compose_univariate, func_equal, poly_arith, zero_set, Degree, EvalSet, Monomial, MultiPoly, Point, PolyOp,
    DEFAULT_ENUM_CAP,
};
pub use oracle::{certificate_at_degree, min_degree, MinDegReport};
pub use system::PolySystem;
