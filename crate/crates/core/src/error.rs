//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("point outside box: x[{index}] = {value} not in [{lower}, {upper}]")]
    OutOfBox {
        index: usize,
        value: f64,
        lower: f64,
        upper: f64,
    },

    #[error("hypervolume supports 2 or 3 objectives, got {0}")]
    UnsupportedObjectiveCount(usize),

    #[error("solver budget {budget} is smaller than population size {mu}")]
    BudgetTooSmall { budget: usize, mu: usize },

    #[error("no default evaluation budget for m={m}, d={d}; pass an explicit budget")]
    NoDefaultBudget { m: usize, d: usize },

    #[error("unknown problem id `{0}`")]
    UnknownProblem(String),

    #[error("degenerate instance `{0}`: reference hypervolume is zero")]
    DegenerateReference(String),

    #[error("training labels contain a single class `{0}`")]
    DegenerateLabels(String),

    #[error("incomplete performance data: missing solver `{solver}` for instance `{instance}` seed {seed}")]
    IncompleteData {
        instance: String,
        solver: String,
        seed: u64,
    },

    #[error("degenerate embedding: fewer than 2 non-constant feature columns")]
    DegenerateEmbedding,

    #[error("feature table mixes objective counts {0:?}; compute per objective count")]
    MixedObjectiveCounts(Vec<usize>),

    #[error("schema mismatch in {path}: {detail}")]
    Schema { path: String, detail: String },

    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("{0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub fn schema(path: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Schema {
            path: path.into(),
            detail: detail.into(),
        }
    }
}
