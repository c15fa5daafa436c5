use std::fmt;

use crate::divisor::CurveId;

/// Errors raised by graph construction, parsing, and the exact solvers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Input file rejected; `line` is 1-based.
    Parse { line: usize, message: String },
    /// A referenced curve is not a vertex of the graph / class list.
    UnknownCurve(CurveId),
    /// A curve or exceptional name was introduced twice.
    DuplicateCurve(CurveId),
    /// `meet` with both endpoints equal.
    SelfLoop(CurveId),
    /// The same unordered pair appeared in two `meet` directives.
    DuplicateEdge(CurveId, CurveId),
    /// Matrix constructor got a non-symmetric or non-square input.
    NotSymmetric,
    /// The intersection matrix of a component fails the definiteness test.
    /// Carries the 1-based index and value of the offending leading minor.
    NotNegativeDefinite {
        component: CurveId,
        minor_index: usize,
        minor: String,
    },
    /// Operation requires a connected graph.
    Disconnected,
    /// A cycle must carry at least one positive multiplicity.
    EmptyCycle,
    /// Cycle multiplicities must be non-negative.
    NegativeMultiplicity(CurveId),
    /// Linear system has no unique solution. Unreachable for negative
    /// definite input; reported instead of panicking if it ever happens.
    SingularSystem,
    /// A discrepancy falls outside the interval (-1, 0] required by the
    /// anti-pluricanonical Euler characteristic formula.
    HypothesisViolated { curve: CurveId, alpha: String },
    /// An Euler characteristic came out non-integral: internal inconsistency.
    NonIntegerChi { n: u32, value: String },
    /// chi(-nK) < 0 contradicts the caller's del Pezzo assertion.
    NegativeChi { n: u32, value: String },
    /// Two distinct irreducible curves with negative pairwise intersection:
    /// the blow-up program is inconsistent.
    NegativeIntersection { a: CurveId, b: CurveId, value: i64 },
    /// Class vectors from different lattices cannot be paired.
    RankMismatch { expected: usize, found: usize },
    /// Contribution formula only applies to weights of the form (1, -1).
    NotAType { r: u64, weights: (i64, i64) },
    /// A singularity-type symbol such as `2A1+A3` failed to parse.
    BadSymbol(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Parse { line, message } => write!(f, "line {line}: {message}"),
            Error::UnknownCurve(id) => write!(f, "unknown curve `{id}`"),
            Error::DuplicateCurve(id) => write!(f, "duplicate curve `{id}`"),
            Error::SelfLoop(id) => write!(f, "curve `{id}` cannot meet itself"),
            Error::DuplicateEdge(a, b) => {
                write!(f, "intersection of `{a}` and `{b}` declared twice")
            }
            Error::NotSymmetric => write!(f, "matrix must be square and symmetric"),
            Error::NotNegativeDefinite {
                component,
                minor_index,
                minor,
            } => write!(
                f,
                "component containing `{component}` is not negative definite: \
                 leading principal minor #{minor_index} is {minor}"
            ),
            Error::Disconnected => write!(f, "graph must be connected"),
            Error::EmptyCycle => write!(f, "cycle must have a positive multiplicity"),
            Error::NegativeMultiplicity(id) => {
                write!(f, "cycle multiplicity of `{id}` must be non-negative")
            }
            Error::SingularSystem => write!(
                f,
                "internal inconsistency: intersection matrix is singular"
            ),
            Error::HypothesisViolated { curve, alpha } => write!(
                f,
                "discrepancy of `{curve}` is {alpha}, outside the required interval (-1, 0]"
            ),
            Error::NonIntegerChi { n, value } => write!(
                f,
                "internal inconsistency: chi(-{n}K) = {value} is not an integer"
            ),
            Error::NegativeChi { n, value } => write!(
                f,
                "chi(-{n}K) = {value} < 0 is inconsistent with the del Pezzo assumption"
            ),
            Error::NegativeIntersection { a, b, value } => write!(
                f,
                "inconsistent program: `{a}`.`{b}` = {value} < 0 for distinct irreducible curves"
            ),
            Error::RankMismatch { expected, found } => {
                write!(f, "class vector has rank {found}, lattice has rank {expected}")
            }
            Error::NotAType { r, weights } => write!(
                f,
                "contribution formula needs weights (1, -1) mod r, got 1/{r}({}, {})",
                weights.0, weights.1
            ),
            Error::BadSymbol(s) => write!(f, "cannot parse singularity symbol `{s}`"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
