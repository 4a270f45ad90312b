use thiserror::Error;

/// Errors produced by parameter validation, closed-form evaluation and the
/// numerical back ends.
#[derive(Debug, Error)]
pub enum LicsError {
    #[error("non-finite parameter `{name}` = {value}")]
    NonFinite { name: &'static str, value: f64 },

    #[error("parameter `{name}` = {value} violates `{constraint}`")]
    OutOfRange {
        name: &'static str,
        value: f64,
        constraint: &'static str,
    },

    /// The shared resonance denominator of the ladder closed forms dropped
    /// below the pole guard. Sweeps mark such grid points as gaps instead of
    /// clamping.
    #[error(
        "resonant pole: |X_n X_f - K + A_m X_f| = {magnitude:.3e} below tolerance {tol:.3e} \
         at omega_1 = {omega_1}, omega_2 = {omega_2}, omega_l = {omega_l}"
    )]
    ResonantPole {
        magnitude: f64,
        tol: f64,
        omega_1: f64,
        omega_2: f64,
        omega_l: f64,
    },

    #[error("degenerate steady state: |{name}| = {magnitude:.3e}")]
    DegenerateSteadyState { name: &'static str, magnitude: f64 },

    #[error(
        "quadrature not converged: relative change {change:.3e} > {tol:.3e} when doubling \
         order {order}; increase the quadrature order"
    )]
    QuadratureNotConverged { change: f64, tol: f64, order: usize },

    #[error("step size underflow at t = {t:.6e}; the system is too stiff for the integrator")]
    StepSizeUnderflow { t: f64 },

    #[error("steady state not reached by t = {t_end:.3e}: residual {residual:.3e} > {tol:.3e}")]
    SteadyStateNotReached { t_end: f64, residual: f64, tol: f64 },

    #[error("singular linear system: pivot magnitude {pivot:.3e}")]
    SingularSystem { pivot: f64 },

    #[error("negative propagation distance z = {0}")]
    NegativeDistance(f64),

    #[error("unknown parameter path `{0}`")]
    UnknownParameter(String),

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("invalid sweep: {0}")]
    InvalidSweep(String),

    #[error("config: {0}")]
    Config(String),

    #[error("csv: {0}")]
    Csv(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, LicsError>;

impl LicsError {
    /// Process exit code contract: 2 for validation failures, 3 for spec
    /// errors (bad input, unknown names), 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            LicsError::UnknownParameter(_)
            | LicsError::UnknownPreset(_)
            | LicsError::InvalidSweep(_)
            | LicsError::Config(_)
            | LicsError::NonFinite { .. }
            | LicsError::OutOfRange { .. } => 3,
            LicsError::SteadyStateNotReached { .. } => 2,
            _ => 1,
        }
    }
}
