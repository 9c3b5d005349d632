use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("Gell-Mann index {0} out of range 1..=8")]
    IndexOutOfRange(usize),

    #[error("generator λ{0} has no closed-form factor exponential (supported: λ2, λ3, λ5, λ8)")]
    UnsupportedGenerator(usize),

    #[error("matrix is not traceless: |tr M| = {trace:e} exceeds {tolerance:e}")]
    NotTraceless { trace: f64, tolerance: f64 },

    #[error("non-finite Euler angle `{0}`")]
    NonFiniteAngle(&'static str),

    #[error("matrix is not in SU(3): ‖U†U − I‖ = {unitarity:e}, |det U − 1| = {determinant:e}")]
    NotSpecialUnitary { unitarity: f64, determinant: f64 },

    #[error("singular chart: {factor} = {value:e} is below the threshold {threshold:e}")]
    SingularChart {
        factor: &'static str,
        value: f64,
        threshold: f64,
    },

    #[error("ill-conditioned coefficient matrix: condition estimate {0:e}")]
    IllConditioned(f64),

    #[error("decomposition did not converge: residual {residual:e} exceeds {tolerance:e}")]
    NonConvergent { residual: f64, tolerance: f64 },

    #[error("invalid sample count {0}")]
    InvalidCount(usize),

    #[error("quadrature grid of {requested} nodes exceeds the cap of {cap}")]
    ResourceLimit { requested: u128, cap: u128 },

    #[error("integrand failed at sample {index}: {message}")]
    Integrand { index: usize, message: String },

    #[error("unknown representation `{0}`")]
    UnknownRepresentation(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for failures caused by the numerics at a particular input
    /// (chart singularities, conditioning, convergence, group-membership checks).
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::SingularChart { .. }
                | Error::IllConditioned(_)
                | Error::NonConvergent { .. }
                | Error::NotSpecialUnitary { .. }
        )
    }
}
