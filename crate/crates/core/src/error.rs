use thiserror::Error;

/// Errors raised by spaces, schemes and analyses.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("non-finite coordinate {value} at position {index}")]
    NonFinite { index: usize, value: f64 },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("weight {0} outside [0, 1]")]
    InvalidWeight(f64),

    #[error("antipodal inputs: geodesic is not unique (angle {angle})")]
    Antipodal { angle: f64 },

    #[error("degenerate tangent: Bezier derivative vanishes at w = {omega}")]
    DegenerateTangent { omega: f64 },

    #[error("delta is undefined for a sequence of {len} element(s)")]
    UndefinedDelta { len: usize },

    #[error("parameter {t} outside domain [{lo}, {hi}]")]
    Domain { t: f64, lo: f64, hi: f64 },

    #[error("domain mismatch: [{f_lo}, {f_hi}] is not contained in [{g_lo}, {g_hi}]")]
    DomainMismatch {
        f_lo: f64,
        f_hi: f64,
        g_lo: f64,
        g_hi: f64,
    },

    #[error("measure not normalized: total mass {0}")]
    NotNormalized(f64),

    #[error("invalid transport exponent p = {0} (need p >= 1)")]
    InvalidExponent(f64),

    #[error("insufficient data at level {level}: {len} element(s), stencil needs {needed}")]
    InsufficientData {
        level: usize,
        len: usize,
        needed: usize,
    },

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("unsupported capability: {0}")]
    Capability(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("{op} failed at index {index}: {source}")]
    At {
        op: &'static str,
        index: usize,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Wraps an error with the operation and element index that produced it.
    pub fn at(self, op: &'static str, index: usize) -> Self {
        Error::At {
            op,
            index,
            source: Box::new(self),
        }
    }

    /// True for failures of the numerics on otherwise valid input
    /// (non-unique geodesics, vanishing tangents).
    pub fn is_numerical(&self) -> bool {
        match self {
            Error::Antipodal { .. } | Error::DegenerateTangent { .. } => true,
            Error::At { source, .. } => source.is_numerical(),
            _ => false,
        }
    }

    /// Innermost error, with index context stripped.
    pub fn root(&self) -> &Error {
        match self {
            Error::At { source, .. } => source.root(),
            e => e,
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
