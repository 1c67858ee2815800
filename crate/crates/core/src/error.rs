use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("harmonic number H_0 is not defined")]
    EmptyHarmonicSum,

    #[error("Bernoulli number B_{requested} is beyond the table (max index {max})")]
    BernoulliOutOfRange { requested: usize, max: usize },

    #[error("asymptotic order {requested} exceeds the configured maximum {max}")]
    OrderTooLarge { requested: usize, max: usize },

    #[error("zeta({0}) is not representable in Q[pi^2]")]
    NotRepresentable(i64),

    #[error("sphere dimension must be odd and at least 3, got {0}")]
    InvalidDimension(u32),

    #[error("{what}: index {index} outside the validity range")]
    OutOfValidityRange { what: &'static str, index: i64 },

    #[error("degree bound violated: sample {index} disagrees with the interpolant")]
    DegreeBoundViolated { index: usize },

    #[error("need {needed} samples, got {got}")]
    InsufficientSamples { needed: usize, got: usize },

    #[error("interpolation nodes must be distinct")]
    DuplicateNode,

    #[error("pole at {ell} of order {order} is outside the supported class")]
    UnsupportedPole { ell: u64, order: u32 },

    #[error("parity violation: {0}")]
    ParityViolation(&'static str),

    #[error("pole at index {0} lies inside the summation range and is not excluded")]
    PoleInRange(u64),

    #[error("numeric summation did not converge: {0}")]
    NonConvergence(String),

    #[error("radius {0} outside (0, pi]")]
    OutOfDomain(f64),

    #[error("unsupported: {0}")]
    Unsupported(&'static str),

    #[error("kernel has no regular part")]
    NoRegularPart,

    #[error("sign check failed: {0}")]
    SignViolation(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
