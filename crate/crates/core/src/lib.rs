//! Semiring circuits, formal polynomials and certified lower bounds on the
//! size and depth of monotone circuits that implement dynamic programs.
//!
//! The crate is organised bottom-up:
//!
//! * [`semiring`]: the six concrete semirings and their element arithmetic.
//! * [`polynomial`]: sparse formal polynomials, antichains, envelopes,
//!   factor density and per-semiring evaluation.
//! * [`circuit`]: the fanin-2 circuit IR, formal production, parse graphs and
//!   the structural decompositions used by the lower-bound arguments.
//! * [`generators`]: benchmark polynomial families and dynamic-programming
//!   circuits (Floyd–Warshall, Bellman–Ford, naive baselines).
//! * [`equivalence`]: deciding when two polynomials define the same function.
//! * [`bounds`]: lower-bound certificates and the rules for transferring them
//!   between complexity measures.
//! * [`oracle`]: exhaustive ground truth for tiny instances.
//! * [`report`]: the desk-scale summary tables printed by the CLI.

pub mod bounds;
pub mod circuit;
pub mod equivalence;
pub mod error;
pub mod generators;
pub mod oracle;
pub mod polynomial;
pub mod report;
pub mod semiring;

pub use circuit::Circuit;
pub use error::{Error, Result};
pub use polynomial::{Monomial, Polynomial};
pub use semiring::{ExtInt, SemiringId};
