use thiserror::Error;

/// Errors raised by the series engine, the radial constructions, the ODE
/// oracle and the field assembly.
#[derive(Debug, Error)]
pub enum Error {
    #[error("gamma pole: {0} is zero or a negative integer")]
    GammaPole(String),

    #[error("invalid hypergeometric parameter {0}: zero or negative integer")]
    InvalidParameter(String),

    #[error("degenerate contiguous relation: c = 1 makes c - 1 vanish")]
    DegenerateContiguous,

    #[error("series did not converge within {budget} terms (|z| = {z_mag:e})")]
    NonConvergence { budget: usize, z_mag: f64 },

    #[error(
        "asymptotic regime not reached: 4 x^(1/4) = {reached:.3} < {required:.3} \
         needed for {target_digits} digits"
    )]
    AsymptoticRegime {
        reached: f64,
        required: f64,
        target_digits: u32,
    },

    #[error("rho = {rho} exceeds the precision-escalation limit rho_max = {rho_max}")]
    PrecisionEscalation { rho: f64, rho_max: f64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("trajectory magnitude exceeded {limit:e} at rho = {rho} (growing mode)")]
    Blowup { rho: f64, limit: f64 },

    #[error("quadrature did not converge to relative tolerance {tol:e}")]
    QuadratureNonConvergence { tol: f64 },

    #[error("degenerate power-law fit: {0}")]
    DegenerateFit(String),
}

pub type Result<T> = std::result::Result<T, Error>;
