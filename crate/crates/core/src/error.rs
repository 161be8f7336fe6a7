use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// Argument outside the mathematical domain of a function.
    Domain(&'static str),
    /// A gamma function argument sits on (or within 1e-8 of) a pole.
    GammaPole {
        argument: f64,
    },
    /// The kernel exponent `d - 2 + s` vanishes.
    DegenerateExponent,
    /// Fractional order outside `(0, 2)`.
    InvalidOrder(f64),
    /// Malformed grid or domain.
    InvalidGrid(&'static str),
    /// A point lies outside the closed domain.
    OutsideDomain {
        x: f64,
        y: f64,
    },
    /// An evaluation point is too close to the boundary.
    MarginViolation {
        distance: f64,
        required: f64,
    },
    Unsupported(&'static str),
    MissingBoundaryData(&'static str),
    DimensionMismatch {
        expected: usize,
        found: usize,
    },
    NotSymmetric {
        row: usize,
        col: usize,
    },
    NotPositiveDefinite {
        min_eigenvalue: f64,
    },
    NegativeExponent(f64),
    NegativeTime(f64),
    /// Iterative eigen solver did not converge.
    NoConvergence,
    TooLarge {
        n: usize,
        max: usize,
    },
}

impl Error {
    /// Stable short name, used on the CLI's stderr.
    pub fn name(&self) -> &'static str {
        match self {
            Error::Domain(_) => "DomainError",
            Error::GammaPole { .. } => "GammaPole",
            Error::DegenerateExponent => "DegenerateExponent",
            Error::InvalidOrder(_) => "InvalidOrder",
            Error::InvalidGrid(_) => "InvalidGrid",
            Error::OutsideDomain { .. } => "OutsideDomain",
            Error::MarginViolation { .. } => "MarginViolation",
            Error::Unsupported(_) => "Unsupported",
            Error::MissingBoundaryData(_) => "MissingBoundaryData",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::NotSymmetric { .. } => "NotSymmetric",
            Error::NotPositiveDefinite { .. } => "NotPositiveDefinite",
            Error::NegativeExponent(_) => "NegativeExponent",
            Error::NegativeTime(_) => "NegativeTime",
            Error::NoConvergence => "NoConvergence",
            Error::TooLarge { .. } => "TooLarge",
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(what) => write!(f, "domain error: {what}"),
            Error::GammaPole { argument } => {
                write!(f, "gamma function pole at argument {argument}")
            }
            Error::DegenerateExponent => write!(f, "kernel exponent d - 2 + s is zero"),
            Error::InvalidOrder(s) => write!(f, "fractional order {s} outside (0, 2)"),
            Error::InvalidGrid(what) => write!(f, "invalid grid: {what}"),
            Error::OutsideDomain { x, y } => write!(f, "point ({x}, {y}) outside the domain"),
            Error::MarginViolation { distance, required } => write!(
                f,
                "evaluation point at distance {distance} from the boundary, need at least {required}"
            ),
            Error::Unsupported(what) => write!(f, "unsupported: {what}"),
            Error::MissingBoundaryData(what) => write!(f, "missing boundary data: {what}"),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::NotSymmetric { row, col } => {
                write!(f, "matrix is not symmetric at ({row}, {col})")
            }
            Error::NotPositiveDefinite { min_eigenvalue } => write!(
                f,
                "matrix is not positive definite (smallest eigenvalue {min_eigenvalue})"
            ),
            Error::NegativeExponent(a) => write!(f, "matrix power exponent {a} is negative"),
            Error::NegativeTime(t) => write!(f, "negative time {t}"),
            Error::NoConvergence => write!(f, "eigenvalue iteration did not converge"),
            Error::TooLarge { n, max } => write!(f, "matrix order {n} exceeds dense limit {max}"),
        }
    }
}

impl core::error::Error for Error {}
