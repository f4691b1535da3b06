use thiserror::Error;

/// Library-wide error type.
///
/// `Spec` covers malformed group/measure/config data, `Mismatch` covers
/// elements used with a spec they were not built from, `Budget` covers
/// resource caps, `Precondition` covers violated operation contracts and
/// `Precision` covers queries that exceed what an end approximation can
/// certify. `Internal` must not occur; it indicates a consistency bug.
#[derive(Debug, Error)]
pub enum Error {
    #[error("specification error: {0}")]
    Spec(String),

    #[error("group spec mismatch: {0}")]
    Mismatch(String),

    #[error("budget exceeded for {what}: needed {needed}, cap {cap}{}",
        largest_feasible.map(|n| format!(", largest feasible {n}")).unwrap_or_default())]
    Budget {
        what: &'static str,
        needed: u64,
        cap: u64,
        largest_feasible: Option<u64>,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("insufficient precision: {0}")]
    Precision(String),

    #[error("internal consistency error: {0}")]
    Internal(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code the CLI maps this error to.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Spec(_) | Error::Mismatch(_) | Error::Precondition(_) | Error::Precision(_) => {
                2
            }
            Error::Budget { .. } => 3,
            Error::Internal(_) | Error::Io(_) => 1,
        }
    }
}
