use thiserror::Error;

use crate::words::PowerBound;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unsupported parameters: (k={k}, alpha={bound}) is outside the admissible set")]
    UnsupportedParameters { k: usize, bound: PowerBound },

    #[error("word {word} is not {side}-extendable (no extension of length {depth})")]
    NotExtendable {
        side: &'static str,
        word: String,
        depth: usize,
    },

    #[error("undecided: {0}")]
    Undecided(String),

    #[error("resource limit: {0}")]
    ResourceLimit(String),

    #[error("internal error: {0}")]
    Internal(String),

    /// An error raised inside a named stage of the transition pipeline.
    #[error("stage `{stage}`: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub fn in_stage(self, stage: &'static str) -> Error {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }

    /// The innermost error, with stage tags peeled off.
    pub fn root(&self) -> &Error {
        match self {
            Error::Stage { source, .. } => source.root(),
            other => other,
        }
    }

    pub fn is_undecided(&self) -> bool {
        matches!(self.root(), Error::Undecided(_) | Error::ResourceLimit(_))
    }
}

pub(crate) trait StageExt<T> {
    fn stage(self, stage: &'static str) -> Result<T>;
}

impl<T> StageExt<T> for Result<T> {
    fn stage(self, stage: &'static str) -> Result<T> {
        self.map_err(|e| e.in_stage(stage))
    }
}
