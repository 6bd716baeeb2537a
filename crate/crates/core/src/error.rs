use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Parse failure at a byte offset of the input.
    Syntax { pos: usize, msg: String },
    UnknownVariable(String),
    CoefficientOverflow(String),
    ExponentOverflow,
    RingMismatch,
    InvalidRing(String),
    NotFiniteColength,
    NotContained,
    HypothesisViolated(String),
    WindowTooSmall { needed: usize, have: usize },
    TrialsExhausted { trials: u32, best: String },
    ProbeBoundExceeded(usize),
    InvalidArgument(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Syntax { pos, msg } => write!(f, "syntax error at offset {}: {}", pos, msg),
            Error::UnknownVariable(v) => write!(f, "unknown variable `{}`", v),
            Error::CoefficientOverflow(c) => write!(f, "coefficient `{}` does not fit", c),
            Error::ExponentOverflow => write!(f, "exponent overflow"),
            Error::RingMismatch => write!(f, "operands belong to different rings"),
            Error::InvalidRing(m) => write!(f, "invalid ring: {}", m),
            Error::NotFiniteColength => write!(f, "ideal does not have finite colength"),
            Error::NotContained => write!(f, "denominator is not contained in numerator"),
            Error::HypothesisViolated(m) => write!(f, "hypothesis violated: {}", m),
            Error::WindowTooSmall { needed, have } => {
                write!(f, "window too small: need at least {}, have {}", needed, have)
            }
            Error::TrialsExhausted { trials, best } => {
                write!(f, "no reduction found in {} trials (best candidate: {})", trials, best)
            }
            Error::ProbeBoundExceeded(b) => write!(f, "probe bound {} exceeded", b),
            Error::InvalidArgument(m) => write!(f, "invalid argument: {}", m),
        }
    }
}
