use thiserror::Error;

/// Every failure surfaced by the library. Messages name the failing
/// module so CLI diagnostics can be traced back to a solver.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("metric_core: invalid instance: {0}")]
    InvalidInstance(String),

    #[error("schema: {path}: {message}")]
    Schema { path: String, message: String },

    #[error("metric_core: {0}")]
    OutOfRange(String),

    #[error("oracle cap exceeded: {subsets} subsets > cap {cap}")]
    OracleCapExceeded { subsets: u128, cap: u128 },

    #[error(
        "fpt_as: enumeration cap exceeded: C({set_size}, {k}) = {subsets} > cap {cap} \
         (representative set is bounded by |S| <= O_d(lambda^2 * (1/eps)^d))"
    )]
    EnumerationCapExceeded {
        set_size: usize,
        k: usize,
        subsets: u128,
        cap: u128,
    },

    #[error("{module}: unsupported: {message}")]
    Unsupported { module: &'static str, message: String },

    #[error("planar_exact: unresolved degeneracy: {0}")]
    Degenerate(String),

    #[error("fpt_as: epsilon must lie in (0, 1), got {0}")]
    InvalidEpsilon(f64),

    #[error("generators: {0}")]
    Generator(String),

    #[error("generators: ground-truth cap exceeded: {0}")]
    GroundTruthCap(String),

    #[error("{module}: internal check failed: {message}")]
    Internal { module: &'static str, message: String },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInstance(msg.into())
    }

    pub(crate) fn schema(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema {
            path: path.into(),
            message: message.into(),
        }
    }

    pub(crate) fn internal(module: &'static str, message: impl Into<String>) -> Self {
        Error::Internal {
            module,
            message: message.into(),
        }
    }

    /// True for the two enumeration-cap variants (CLI exit code 3).
    pub fn is_cap_exceeded(&self) -> bool {
        matches!(
            self,
            Error::OracleCapExceeded { .. } | Error::EnumerationCapExceeded { .. } | Error::GroundTruthCap(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
