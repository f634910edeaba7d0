//! Unitary Cayley graphs of finite rings.
//!
//! The crate builds the graph `Γ(R)` whose vertices are the elements of a
//! finite ring `R` and whose edges join `x` and `y` when `x - y` is a unit,
//! then decides well-coveredness two ways: by structure theory of the ring
//! ([`structure`]) and by exhaustive enumeration of maximal independent sets
//! ([`indsets`]). The [`complex`] module provides the combinatorial side of
//! Cohen-Macaulayness (purity, codimension-one connectivity, shellings) and
//! [`constructions`] holds the explicit matrix families used to refute
//! well-coveredness of `M_n(F)` for `n > 2` and of `R x M_n(F)`.

pub mod algebra;
pub mod cayley;
pub mod complex;
pub mod constructions;
pub mod error;
pub mod indsets;
pub mod sets;
pub mod structure;
pub mod verify;

pub use algebra::{parse_spec, ArithOp, MatrixElem, Ring, RingSpec};
pub use error::{Error, Result};
pub use cayley::{build_graph, conjunction_product, UGraph};
pub use indsets::Budget;
pub use sets::{Bits, VertexSet};
