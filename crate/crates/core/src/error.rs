use alloc::string::String;
use core::fmt;

/// Errors raised by kernel operations when preconditions fail.
///
/// Law *violations* discovered by validators are not errors; they are
/// collected in a [`crate::ValidationReport`]. An `Error` means the inputs
/// were structurally unusable (a missing table entry, mismatched boundaries,
/// a non-groupoid where one is required, ...).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A table references an object or morphism name that does not exist.
    MalformedTable(String),
    /// A cleavage is missing a required lift entry or has a stray one.
    MalformedCleavage(String),
    /// Functors or squares do not have matching (co)domains.
    BoundaryMismatch(String),
    /// Two slice morphisms whose extensions do not line up.
    NotComposableInSlice(String),
    /// An adjunction witness whose triangle identities fail.
    AdjunctionInvalid(String),
    /// A fibration with the wrong cartesian/cocartesian orientation.
    OrientationMismatch(String),
    /// A lifting problem whose square does not commute.
    NonCommutingProblem(String),
    /// A groupoid was required (inverses missing or invalid).
    NotAGroupoid(String),
    /// A split fibration was required where a bare functor was given.
    NotAFibration(String),
    /// A square that was required to be a pullback is not one.
    NotAPullback(String),
    /// A structured square whose witnesses do not match its legs.
    KindMismatch(String),
    /// Slice data (extensions) incompatible with the operation.
    ExtensionMismatch(String),
    /// A square of fibrations that commutes but not with the cleavages.
    CleavageIncompatible(String),
    /// A judgment of the groupoid model that is not well-formed.
    JudgmentMismatch(String),
}

impl core::error::Error for Error {}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::MalformedTable(m) => write!(f, "malformed table: {m}"),
            Error::MalformedCleavage(m) => write!(f, "malformed cleavage: {m}"),
            Error::BoundaryMismatch(m) => write!(f, "boundary mismatch: {m}"),
            Error::NotComposableInSlice(m) => write!(f, "not composable in slice: {m}"),
            Error::AdjunctionInvalid(m) => write!(f, "adjunction invalid: {m}"),
            Error::OrientationMismatch(m) => write!(f, "orientation mismatch: {m}"),
            Error::NonCommutingProblem(m) => write!(f, "non-commuting problem: {m}"),
            Error::NotAGroupoid(m) => write!(f, "not a groupoid: {m}"),
            Error::NotAFibration(m) => write!(f, "not a fibration: {m}"),
            Error::NotAPullback(m) => write!(f, "not a pullback: {m}"),
            Error::KindMismatch(m) => write!(f, "kind mismatch: {m}"),
            Error::ExtensionMismatch(m) => write!(f, "extension mismatch: {m}"),
            Error::CleavageIncompatible(m) => write!(f, "cleavage incompatible: {m}"),
            Error::JudgmentMismatch(m) => write!(f, "judgment mismatch: {m}"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
