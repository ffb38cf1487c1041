use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("cannot normalize a zero vector (norm {norm:e})")]
    ZeroVector { norm: f64 },

    #[error("matrix is not unitary: max |U^dag U - 1| = {deviation:e}")]
    NotUnitary { deviation: f64 },

    #[error("{what} = {value} is outside the allowed domain {domain}")]
    Domain {
        what: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("root bracketing failed on [{lo}, {hi}]")]
    ConvergenceFailure { lo: f64, hi: f64 },

    #[error("Clifford closure exceeded {0} elements")]
    ClosureOverflow(usize),

    #[error("invalid angles: {0}")]
    InvalidAngles(String),
}

impl Error {
    pub(crate) fn domain(what: &'static str, value: f64, domain: &'static str) -> Self {
        Error::Domain { what, value, domain }
    }
}
