use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Matrix or graph order must be at least one.
    EmptyOrder,
    InvalidProbability(f64),
    /// `σ = √(p(1−p))` vanishes, so `σ⁻¹` scaling is undefined.
    DegenerateSigma(f64),
    OrderMismatch {
        left: usize,
        right: usize,
    },
    NonFinite,
    NoConvergence {
        index: usize,
        iterations: usize,
    },
    InvalidScale(f64),
    InvalidDegree(usize),
    DegreeMismatch {
        left: usize,
        right: usize,
    },
    /// Composition `f(g)` needs `g(0) = 0`.
    NonzeroConstantTerm,
    /// A reciprocal needs an invertible constant term.
    ZeroConstantTerm,
    InconsistentMoments,
    NotPositive(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyOrder => f.write_str("order must be at least 1"),
            Error::InvalidProbability(p) => write!(f, "probability {p} is outside [0, 1]"),
            Error::DegenerateSigma(p) => {
                write!(f, "p = {p} gives sigma = 0; sigma^-1 scaling is undefined")
            }
            Error::OrderMismatch { left, right } => {
                write!(f, "matrix orders differ: {left} vs {right}")
            }
            Error::NonFinite => f.write_str("matrix has non-finite entries"),
            Error::NoConvergence { index, iterations } => write!(
                f,
                "QL iteration did not converge for eigenvalue {index} after {iterations} sweeps"
            ),
            Error::InvalidScale(c) => write!(f, "scale factor {c} must be positive and finite"),
            Error::InvalidDegree(d) => write!(f, "truncation degree {d} is not allowed"),
            Error::DegreeMismatch { left, right } => {
                write!(f, "truncation degrees differ: {left} vs {right}")
            }
            Error::NonzeroConstantTerm => {
                f.write_str("inner series of a composition must vanish at zero")
            }
            Error::ZeroConstantTerm => f.write_str("series with zero constant term has no inverse"),
            Error::InconsistentMoments => f.write_str("moments violate m2 > 0, m4 > 0, m4 >= m2^2"),
            Error::NotPositive(what) => write!(f, "{what} must be positive"),
        }
    }
}

impl core::error::Error for Error {}
