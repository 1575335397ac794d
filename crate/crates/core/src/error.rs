use thiserror::Error;

/// Failures raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("shear modulus must be positive (got {0})")]
    NonPositiveShearModulus(f64),
    #[error("c must be positive (got {0})")]
    NonPositiveGradientCoefficient(f64),
    #[error("nu at incompressible limit (got {0}, need nu < 0.5)")]
    IncompressibleLimit(f64),
    #[error("nu out of range (got {0}, need -1 < nu < 0.5)")]
    PoissonRatioOutOfRange(f64),
    #[error("non-finite parameter `{0}`")]
    NonFinite(&'static str),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("spectral pole: Lambda vanishes at rho' = {rho_p} for nu = {nu}")]
    SpectralPole { rho_p: f64, nu: f64 },
    #[error("integrand returned NaN at {at}")]
    NanIntegrand { at: f64 },
    #[error("quadrature did not converge: value {value}, error estimate {err_est}")]
    NotConverged { value: f64, err_est: f64 },
    #[error("adaptive subdivision limit ({limit}) reached on [{a}, {b}]")]
    SubdivisionLimit { limit: usize, a: f64, b: f64 },
    #[error("division guard: |N| = {magnitude:e} below threshold at p = {p}, q = {q}")]
    DegenerateDeterminant { magnitude: f64, p: String, q: String },
}

pub type Result<T> = std::result::Result<T, Error>;
