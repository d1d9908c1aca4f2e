use thiserror::Error;

/// Every failure mode surfaced by the laboratory.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum RgsError {
    #[error("blow-up: state left the admissible region at parameter {reached}")]
    BlowUp { reached: f64 },
    #[error("step limit of {steps} exhausted at parameter {reached}")]
    StepLimit { steps: usize, reached: f64 },
    #[error("variable `{0}` missing from point")]
    MissingVariable(String),
    #[error("derivative unavailable: {0}")]
    DerivativeUnavailable(String),
    #[error("stencil left the domain of the function in `{0}`")]
    StencilOutOfDomain(String),
    #[error("constraint violated: {0}")]
    ConstraintViolated(String),
    #[error("no root in bracket [{lo}, {hi}]")]
    NoRootInBracket { lo: f64, hi: f64 },
    #[error("integrand singular near {at}")]
    QuadratureSingularity { at: f64 },
    #[error("truncation window too narrow: boundary/peak ratio {ratio:e}")]
    TruncationWarning { ratio: f64 },
    #[error("time step {dt} above stability bound {limit}")]
    StabilityViolation { dt: f64, limit: f64 },
    #[error("domain too narrow: {0}")]
    DomainTooNarrow(String),
    #[error("profile not invertible: {0}")]
    NotInvertible(String),
    #[error("CFL condition violated: number {number} > {limit}")]
    CflViolation { number: f64, limit: f64 },
    #[error("window too wide: {0}")]
    WindowTooWide(String),
    #[error("residual {residual:e} is at the noise floor; order undefined")]
    ResidualBelowNoiseFloor { residual: f64 },
    #[error("not supported: {0}")]
    NotSupported(String),
    #[error("singular profile at {at}")]
    SingularProfile { at: f64 },
    #[error("series solution diverges at t = {t} (characteristics cross or complex singularity)")]
    CharacteristicsCross { t: f64 },
    #[error("fold: x_mu = {x_mu} at mu = {mu}")]
    FoldEncountered { mu: f64, x_mu: f64 },
    #[error("argument {x} outside the accuracy window")]
    AccuracyWindowExceeded { x: f64 },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, RgsError>;
