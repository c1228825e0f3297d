//! A computational kernel for algebraic weak factorisation systems over
//! finite categories and groupoids.
//!
//! Everything in this crate is table-driven: categories are given by explicit
//! composition tables, functors by explicit object/morphism maps, and every
//! categorical law (associativity, naturality, cartesianness of chosen lifts,
//! triangle identities, ...) is decidable by full enumeration. On top of the
//! base layer the crate builds:
//!
//! - squares, slices and a brute-force diagonal-filler oracle ([`squares`]);
//! - split monos, split reflections (raris) and split (op)fibrations with
//!   their compositions and pullbacks ([`structured`]);
//! - the canonical lifting operation for the pair (split reflection, split
//!   fibration) together with horizontal- and vertical-law checkers
//!   ([`lifting`]);
//! - the adjoint triple of composition, pullback and pushforward on slices of
//!   finite groupoids, with adjunction oracles and mates ([`transport`]);
//! - Frobenius and pushforward structures, their coherence checks and the
//!   Beck-Chevalley condition ([`frobenius`]);
//! - the groupoid model of dependent type theory with Sigma-, Pi- and
//!   Id-types ([`model`]).
//!
//! The crate is `no_std` (with `alloc`); IO, file formats and generators live
//! in the companion `awfslab` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod adjunction;
pub mod cat;
pub mod error;
pub mod frobenius;
pub mod lifting;
pub mod model;
pub mod report;
pub mod squares;
pub mod structured;
pub mod transport;

pub use cat::{compose_functors, pullback_category, FinCategory, Functor, Morphism, NatTransformation};
pub use error::Error;
pub use report::{ValidationReport, Violation};
