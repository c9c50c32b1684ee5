use core::fmt;

/// Every failure mode the library reports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The linear system has no solution.
    NoSolution,
    /// The matrix is not invertible.
    Singular,
    /// Interpolation nodes are not pairwise distinct.
    DuplicateNode,
    /// Operand shapes do not agree.
    SizeMismatch { expected: usize, found: usize },
    /// The sampler rejected too many consecutive draws.
    ExhaustedSampling { attempts: usize },
    /// `(n, d)` is not a coprime pair with `0 < d < n`.
    InvalidPair { n: usize, d: usize },
    /// The reduction map is undefined on `(1, 1)`.
    Undefined,
    /// `y1 = y2`, where the evaluation map is not defined.
    CoincidingPoints,
    /// The residue map on the constraint space is not invertible.
    SingularResidue,
    /// The constraint space does not have the expected dimension.
    DimensionDrop { expected: usize, found: usize },
    /// A formula was evaluated on its polar locus.
    PoleHit(&'static str),
    /// Adaptive interpolation did not stabilize below the degree cap.
    DegreeCapExceeded { cap: usize },
    /// A gauge transformation is not invertible at a requested point.
    SingularGauge,
    /// The exponent forms of the terms of a twisted equation disagree.
    ExponentMismatch,
    /// A handle of the wrong flavor was supplied.
    WrongFlavor(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NoSolution => write!(f, "linear system is inconsistent"),
            Error::Singular => write!(f, "matrix is singular"),
            Error::DuplicateNode => write!(f, "interpolation nodes repeat"),
            Error::SizeMismatch { expected, found } => {
                write!(f, "size mismatch: expected {expected}, found {found}")
            }
            Error::ExhaustedSampling { attempts } => {
                write!(f, "sampling gave up after {attempts} consecutive forbidden draws")
            }
            Error::InvalidPair { n, d } => {
                write!(f, "invalid pair (n, d) = ({n}, {d}): need 0 < d < n and n and d must be coprime")
            }
            Error::Undefined => write!(f, "reduction step is undefined on (1, 1)"),
            Error::CoincidingPoints => write!(f, "evaluation requires y₁≠y₂"),
            Error::SingularResidue => {
                write!(f, "residue map is not invertible (requires v≠0 and generic parameters)")
            }
            Error::DimensionDrop { expected, found } => {
                write!(f, "constraint space has dimension {found}, expected {expected}")
            }
            Error::PoleHit(what) => write!(f, "evaluation on a pole: {what}"),
            Error::DegreeCapExceeded { cap } => {
                write!(f, "interpolation did not stabilize up to degree {cap}")
            }
            Error::SingularGauge => write!(f, "gauge transformation is not invertible here"),
            Error::ExponentMismatch => write!(f, "exponent forms of the equation terms differ"),
            Error::WrongFlavor(what) => write!(f, "wrong solution flavor: {what}"),
        }
    }
}

impl core::error::Error for Error {}
