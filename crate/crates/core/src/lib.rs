//! Exact computation in extended McLain groups.
//!
//! Given a finite relation `Δ` that is irreflexive and satisfies the
//! four-point axiom (see [`Relation::check_axioms`]) and a unital ring `R`,
//! the group `G(Δ)` consists of the elements `1 + x` with `x` in the ring
//! `RΔ` spanned by `e(i,j)`, `(i,j) ∈ Δ`. This crate provides the arithmetic
//! of `G(Δ)`, the lower and upper central series, quotients by normal
//! subsets, and factorizations into the generators `x_{i,j}(a)`.
//!
//! ```
//! use mclain_core::{chain, McLainGroup, RingSpec};
//!
//! let group = McLainGroup::new(chain(3).unwrap(), RingSpec::Integers).unwrap();
//! let a = RingSpec::Integers.from_i64(2);
//! let b = RingSpec::Integers.from_i64(3);
//! let c = group
//!     .generator("1", "2", &a)
//!     .unwrap()
//!     .commutator(&group.generator("2", "3", &b).unwrap())
//!     .unwrap();
//! assert_eq!(c.to_string(), "1 + 6*e(1,3)");
//! ```

pub mod element;
pub mod exec;
pub mod factorization;
pub mod parse;
pub mod relation;
pub mod ring;
pub mod structure;
pub mod verify;
pub mod word;

use thiserror::Error;

pub use element::{Coefficients, GroupElement, McLainGroup};
pub use exec::Execution;
pub use factorization::{
    demonstrate_ngon_obstruction, filtration_order, minimal_closed_support, ordered_factorization,
    word_factorization, NgonObstruction, OrderedForm,
};
pub use parse::{parse_normal_form, parse_word, ExprError};
pub use relation::{
    chain, ngon, pair, parse_pair_list, parse_relation, random_perturbed_order, random_relation,
    AxiomCheck, AxiomViolation, Node, Pair, Relation, RelationError,
};
pub use ring::{RingError, RingSpec, RingValue};
pub use structure::{
    center_support, lower_central_series, upper_central_series, FactorReport, LowerSeries,
    QuotientMap, SubsetChain,
};
pub use word::{GeneratorWord, WordToken};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Relation(#[from] RelationError),
    #[error("relation violates the axioms: {0}")]
    InvalidRelation(String),
    #[error("pair {0} is not in the relation")]
    NotInRelation(Pair),
    #[error("elements belong to different groups")]
    GroupMismatch,
    #[error("power series did not vanish within {0} terms; the relation violates the axioms")]
    NilpotencyBound(usize),
    #[error("invalid order: {0}")]
    BadOrder(String),
    #[error("{0}")]
    BadArgument(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}
