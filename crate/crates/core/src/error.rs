use alloc::string::String;
use core::fmt;

/// Errors raised across the library.
///
/// Variants are shared by all modules so that the extraction pipeline can
/// forward failures from decomposition, parabolic scans and subgroup
/// enumeration without wrapping.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    MixedRings,
    NotAUnit(String),
    Unsupported(String),
    UnsupportedType(String),
    InvalidRing(String),
    UnknownRoot(String),
    OppositeRoots,
    NotNormalClosureShape,
    NotAField,
    NotUnipotent,
    NotInGroup(String),
    HypothesisFails(String),
    NotFound(String),
    CentralInput,
    NoCommonRoot,
    SearchExhausted(String),
    NotUnderRadical,
    ClearingFailed(u32),
    ConditionViolated(String),
    LevelInconsistent(String),
    SandwichFails(String),
    HypothesisViolated(String),
    EnumerationCap(usize),
    Factorization(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::MixedRings => write!(f, "operands belong to different rings"),
            Error::NotAUnit(x) => write!(f, "{x} is not a unit"),
            Error::Unsupported(what) => write!(f, "unsupported: {what}"),
            Error::UnsupportedType(t) => write!(f, "unsupported root system type {t}"),
            Error::InvalidRing(msg) => write!(f, "invalid ring: {msg}"),
            Error::UnknownRoot(r) => write!(f, "{r} is not a root"),
            Error::OppositeRoots => write!(f, "roots are opposite"),
            Error::NotNormalClosureShape => {
                write!(f, "certificate does not have normal-closure shape")
            }
            Error::NotAField => write!(f, "operation requires a field"),
            Error::NotUnipotent => write!(f, "element is not in the unipotent subgroup"),
            Error::NotInGroup(msg) => write!(f, "not a group element: {msg}"),
            Error::HypothesisFails(msg) => write!(f, "hypothesis fails: {msg}"),
            Error::NotFound(msg) => write!(f, "not found: {msg}"),
            Error::CentralInput => write!(f, "input element is central"),
            Error::NoCommonRoot => write!(f, "no root subgroup in U and the Levi factor"),
            Error::SearchExhausted(msg) => write!(f, "certified search exhausted: {msg}"),
            Error::NotUnderRadical => {
                write!(f, "element is not central modulo the Jacobson radical")
            }
            Error::ClearingFailed(k) => write!(f, "denominators not cleared up to k = {k}"),
            Error::ConditionViolated(msg) => write!(f, "structure constant condition: {msg}"),
            Error::LevelInconsistent(msg) => write!(f, "level inconsistent: {msg}"),
            Error::SandwichFails(msg) => write!(f, "sandwich fails: {msg}"),
            Error::HypothesisViolated(msg) => write!(f, "hypothesis violated: {msg}"),
            Error::EnumerationCap(cap) => write!(f, "subgroup exceeds enumeration cap {cap}"),
            Error::Factorization(msg) => write!(f, "factorization failed: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
