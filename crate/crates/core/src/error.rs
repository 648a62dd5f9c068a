use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomial is identically zero")]
    ZeroPolynomial,
    #[error("polynomial vanishes at interval endpoint {0}")]
    EndpointRoot(String),
    #[error("neither polynomial depends on the eliminated variable")]
    BothConstant,
    #[error("interval does not isolate a single root ({0} roots inside)")]
    NotIsolating(usize),

    #[error("unknown catalog line {0}")]
    BadLine(u32),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("parameter outside the cube (0, 1/2]: {0}")]
    OutOfCube(String),
    #[error("interval metrics cannot be separated or merged at tolerance; refine and retry")]
    IndistinguishableAtTolerance,

    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("boundary parameters are not accepted here")]
    BoundaryInput,
    #[error("segment tests both cross Q = 0: {0}")]
    SegmentInconclusive(String),

    #[error("certification failed: {0}")]
    CertificationFailure(String),
    #[error("Einstein system degenerates: {0}")]
    DegenerateSystem(String),
    #[error("bad parameter: {0}")]
    BadParam(String),

    #[error("metric must be strictly positive")]
    NonPositiveMetric,
    #[error("integration step too large: {0}")]
    StepTooLarge(String),
    #[error("starting metric must be strictly positive")]
    NonPositiveStart,
    #[error("bad bounds: {0}")]
    BadBounds(String),

    #[error("triple ({0}, 1, 1) lies on the cube boundary")]
    BoundaryTriple(u64),
}

impl Error {
    /// Variant name, for machine-readable reports.
    pub fn name(&self) -> &'static str {
        match self {
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::EndpointRoot(_) => "EndpointRoot",
            Error::BothConstant => "BothConstant",
            Error::NotIsolating(_) => "NotIsolating",
            Error::BadLine(_) => "BadLine",
            Error::BadParams(_) => "BadParams",
            Error::OutOfCube(_) => "OutOfCube",
            Error::IndistinguishableAtTolerance => "IndistinguishableAtTolerance",
            Error::OutOfRange(_) => "OutOfRange",
            Error::BoundaryInput => "BoundaryInput",
            Error::SegmentInconclusive(_) => "SegmentInconclusive",
            Error::CertificationFailure(_) => "CertificationFailure",
            Error::DegenerateSystem(_) => "DegenerateSystem",
            Error::BadParam(_) => "BadParam",
            Error::NonPositiveMetric => "NonPositiveMetric",
            Error::StepTooLarge(_) => "StepTooLarge",
            Error::NonPositiveStart => "NonPositiveStart",
            Error::BadBounds(_) => "BadBounds",
            Error::BoundaryTriple(_) => "BoundaryTriple",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
