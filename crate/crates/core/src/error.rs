use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    // modes
    #[error("EmptyEnumeration: {0} is empty")]
    EmptyEnumeration(&'static str),
    #[error("InvalidCapacityInput: {0}")]
    InvalidCapacityInput(String),
    #[error("InvalidMode: {0}")]
    InvalidMode(String),
    #[error("DuplicateMode: {0}")]
    DuplicateMode(String),
    #[error("InvalidPump: {0}")]
    InvalidPump(String),

    // hgraph
    #[error("EmptyPumpSpec: pump specification has no components")]
    EmptyPumpSpec,
    #[error("DanglingPumpPair: pump {pump} references spatial order {spatial} absent from the mode set")]
    DanglingPumpPair { pump: usize, spatial: String },
    #[error("NoPmTargets: mode set has fewer than two sideband values")]
    NoPmTargets,
    #[error("ParseError at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    // reduce
    #[error("OddDimension: matrix dimension {0} is odd")]
    OddDimension(usize),
    #[error("SingularBlock: V22 condition {0:e} below tolerance")]
    SingularBlock(f64),
    #[error("AmbiguousPartition: eigenvalue gap {0:e} at the partition boundary")]
    AmbiguousPartition(f64),
    #[error("EigenFailure: reconstruction residual {0:e} exceeds tolerance")]
    EigenFailure(f64),
    #[error("InvalidWeight: {0} not in (0, 1]")]
    InvalidWeight(f64),
    #[error("InvalidThreshold: {0}")]
    InvalidThreshold(f64),

    // noise
    #[error("InvalidSqueezing: {0} dB")]
    InvalidSqueezing(f64),
    #[error("InvalidTransmission: eta = {0}")]
    InvalidTransmission(f64),
    #[error("InvalidVariance: {0}")]
    InvalidVariance(f64),

    // rhg / decoder
    #[error("InvalidDistance: {0}")]
    InvalidDistance(usize),
    #[error("DimensionMismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("OddDefects: {0} defects")]
    OddDefects(usize),

    // montecarlo
    #[error("InvalidScan: {0}")]
    InvalidScan(String),
    #[error("NoCrossing: {0}")]
    NoCrossing(String),

    // config files
    #[error("config error at line {line}, key `{key}`: {msg}")]
    Config { line: usize, key: String, msg: String },
    #[error("io: {0}")]
    Io(String),
}

impl Error {
    /// Short variant name, used by the CLI diagnostics.
    pub fn name(&self) -> &'static str {
        match self {
            Error::EmptyEnumeration(_) => "EmptyEnumeration",
            Error::InvalidCapacityInput(_) => "InvalidCapacityInput",
            Error::InvalidMode(_) => "InvalidMode",
            Error::DuplicateMode(_) => "DuplicateMode",
            Error::InvalidPump(_) => "InvalidPump",
            Error::EmptyPumpSpec => "EmptyPumpSpec",
            Error::DanglingPumpPair { .. } => "DanglingPumpPair",
            Error::NoPmTargets => "NoPmTargets",
            Error::Parse { .. } => "ParseError",
            Error::OddDimension(_) => "OddDimension",
            Error::SingularBlock(_) => "SingularBlock",
            Error::AmbiguousPartition(_) => "AmbiguousPartition",
            Error::EigenFailure(_) => "EigenFailure",
            Error::InvalidWeight(_) => "InvalidWeight",
            Error::InvalidThreshold(_) => "InvalidThreshold",
            Error::InvalidSqueezing(_) => "InvalidSqueezing",
            Error::InvalidTransmission(_) => "InvalidTransmission",
            Error::InvalidVariance(_) => "InvalidVariance",
            Error::InvalidDistance(_) => "InvalidDistance",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::OddDefects(_) => "OddDefects",
            Error::InvalidScan(_) => "InvalidScan",
            Error::NoCrossing(_) => "NoCrossing",
            Error::Config { .. } => "ConfigError",
            Error::Io(_) => "IoError",
        }
    }

    /// True for failures of the linear-algebra reduction.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::SingularBlock(_)
                | Error::AmbiguousPartition(_)
                | Error::EigenFailure(_)
                | Error::OddDimension(_)
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
