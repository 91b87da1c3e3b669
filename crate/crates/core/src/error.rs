use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {index} out of range for a graph on {n} vertices")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("edge [{0},{1}] is not canonical (expected i < j)")]
    NonCanonicalEdge(usize, usize),

    #[error("duplicate edge [{0},{1}]")]
    DuplicateEdge(usize, usize),

    #[error("instance with {n} vertices exceeds the exhaustive search cap of {cap}")]
    InstanceTooLarge { n: usize, cap: usize },

    #[error("graphs have different vertex counts ({0} vs {1})")]
    VertexCountMismatch(usize, usize),

    #[error("invalid pattern: {0}")]
    InvalidPattern(String),

    #[error("no power of two m with n/(12 log2 n) < m <= n/(6 log2 n) for n = {n_param}")]
    NoValidM { n_param: usize },

    #[error("cannot build {m} disjoint edges or a co-bi-clique of size {m}: {reason}")]
    SizeInfeasible { m: usize, reason: String },

    #[error("no induced copy found after {trials} trials (seed {seed}); {diagnostics}")]
    RetryExhausted {
        seed: u64,
        trials: u64,
        diagnostics: String,
    },

    #[error("invalid curve: {0}")]
    InvalidCurve(String),

    #[error("curves {0} and {1} tie on the ordering key")]
    DuplicateKey(usize, usize),

    #[error("curve {0} does not meet the vertical line")]
    CurveMissesLine(usize),

    #[error("oracle contract violated: {0}")]
    OracleContractViolation(String),

    #[error("invalid ordering: {0}")]
    InvalidPermutation(String),

    #[error("vertices violate the <1 preconditions: {0}")]
    OrderViolation(String),

    #[error("double-magical witness invalid: {0}")]
    WitnessInvalid(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },

    #[error("malformed input: {0}")]
    Format(String),
}

impl Error {
    /// The innermost error below any stage annotations.
    pub fn root(&self) -> &Error {
        match self {
            Error::Stage { source, .. } => source.root(),
            e => e,
        }
    }

    pub(crate) fn at(stage: &'static str) -> impl FnOnce(Error) -> Error {
        move |source| Error::Stage {
            stage,
            source: Box::new(source),
        }
    }
}
