//! Exact finite-ring kernel.

mod gf;
mod matrix;
pub mod numth;
mod ring;
mod spec;

pub use gf::GaloisField;
pub use matrix::{det_entries, MatrixElem};
pub use ring::{ArithOp, Quotient, Ring, RingMetadata, BRUTE_RADICAL_CAP, DEFAULT_ORDER_CAP};
pub use spec::{parse_spec, RingSpec};
