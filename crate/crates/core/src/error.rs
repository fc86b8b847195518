use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("point ({re}, {im}) is not strictly inside the unit disc")]
    OutsideDisc { re: f64, im: f64 },

    #[error("unknown zero-sequence family `{0}`")]
    UnknownFamily(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The finite realization of an infinite zero set does not reach far
    /// enough toward the boundary for the requested statistic.
    #[error(
        "{what}: requested radius {requested} exceeds realized range (last modulus {realized})"
    )]
    Range {
        what: &'static str,
        requested: f64,
        realized: f64,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error(
        "truncation error: tail bound {bound:e} exceeds tolerance {tol:e}; extend the realization"
    )]
    Truncation { bound: f64, tol: f64 },

    #[error("fit error: {0}")]
    Fit(String),

    #[error("circle |z| = {r} passes through a stored zero; perturb r")]
    SingularConfiguration { r: f64 },

    #[error("quadrature failed: {0}")]
    Quadrature(String),

    #[error("inconsistent ladder: {0}")]
    Inconsistent(String),

    #[error("kernel pole: z coincides with zeta")]
    Pole,

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
