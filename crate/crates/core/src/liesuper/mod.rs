//! Finite-dimensional Lie superalgebras with an invariant form, sl₂ and
//! osp(1|2) triples, gradings and the dual bases built from them.

mod algebra;
mod chains;
mod file;
mod triple;

pub use algebra::{vec_add, vec_is_zero, vec_neg, vec_scale, vec_sub, LieSuperalgebra, Vector, Violation};
pub use chains::{admissible_chains, Adapted, ChainKind, Chains, Index};
pub use file::{catalog, catalog_names, AlgebraFile, BasisEntry, BracketEntry, IndexRef, ParityRef, TripleFile};
pub use triple::{GradedAlgebra, OspTriple, Sl2Triple};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("invalid algebra: {0}")]
    Invalid(String),
    #[error("basis is not homogeneous for ad H/2: basis vector {0}")]
    NotHomogeneous(String),
    #[error("dual bases could not be built: {0}")]
    Decomposition(String),
    #[error("unknown catalog algebra {0:?}")]
    UnknownCatalog(String),
    #[error("cannot read algebra file: {0}")]
    Io(String),
    #[error("malformed algebra file: {0}")]
    Parse(String),
}
