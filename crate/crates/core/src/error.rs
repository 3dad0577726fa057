use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Broad failure classes; the CLI maps each one onto its own exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Io,
    Parse,
    Structure,
    UnknownEntity,
    Statistics,
    Usage,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot access {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{location}: {message}")]
    Parse { location: String, message: String },

    #[error("invalid method spec `{spec}`: {message}")]
    InvalidMethod { spec: String, message: String },

    #[error("malformed taxonomy: {0}")]
    Structure(String),

    #[error("cycle detected through node `{0}`")]
    Cycle(String),

    #[error("unknown concept `{concept}`{}", resource.as_ref().map(|r| format!(" in resource `{r}`")).unwrap_or_default())]
    UnknownConcept {
        concept: String,
        resource: Option<String>,
    },

    #[error("unknown resource `{0}`")]
    UnknownResource(String),

    #[error("duplicate resource id `{0}`")]
    DuplicateResourceId(String),

    #[error("resource `{resource}` lists concept `{concept}` more than once")]
    DuplicateAnnotation { resource: String, concept: String },

    #[error("weighting method {0} requires a corpus")]
    MissingCorpus(String),

    #[error("corpus is empty")]
    EmptyCorpus,

    #[error("corpus was loaded against a different taxonomy")]
    TaxonomyMismatch,

    #[error("taxonomy with a single concept has no intrinsic information content")]
    DegenerateTaxonomy,

    #[error("annotation vector is empty")]
    EmptyVector,

    #[error("concept `{0}` occurs in no annotation vector, its IDF is undefined")]
    InfiniteIdf(String),

    #[error("sum of IDF weights is zero for the annotation vector")]
    ZeroIdfSum,

    #[error("a cohesion set needs at least 2 resources, got {0}")]
    TooFewResources(usize),

    #[error("cannot draw sets of {k} from a corpus of {size} resources")]
    CorpusTooSmall { size: usize, k: usize },

    #[error("null distribution has zero variance")]
    ZeroVariance,

    #[error("correlation undefined: {0} vector is constant")]
    ConstantVector(&'static str),

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("{0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }

    pub(crate) fn unknown_concept(concept: &str) -> Self {
        Error::UnknownConcept {
            concept: concept.to_owned(),
            resource: None,
        }
    }

    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Io { .. } => ErrorKind::Io,
            Error::Parse { .. } | Error::InvalidMethod { .. } => ErrorKind::Parse,
            Error::Structure(_)
            | Error::Cycle(_)
            | Error::DuplicateResourceId(_)
            | Error::DuplicateAnnotation { .. }
            | Error::TaxonomyMismatch
            | Error::DegenerateTaxonomy => ErrorKind::Structure,
            Error::UnknownConcept { .. } | Error::UnknownResource(_) => ErrorKind::UnknownEntity,
            Error::ZeroVariance
            | Error::ConstantVector(_)
            | Error::ZeroIdfSum
            | Error::InfiniteIdf(_)
            | Error::LengthMismatch { .. } => ErrorKind::Statistics,
            Error::MissingCorpus(_)
            | Error::EmptyCorpus
            | Error::EmptyVector
            | Error::TooFewResources(_)
            | Error::CorpusTooSmall { .. }
            | Error::InvalidArgument(_) => ErrorKind::Usage,
        }
    }

    /// Identifier of the offending entity, when there is one.
    pub fn entity(&self) -> Option<&str> {
        match self {
            Error::Io { path, .. } => path.to_str(),
            Error::Parse { location, .. } => Some(location),
            Error::InvalidMethod { spec, .. } => Some(spec),
            Error::Cycle(id)
            | Error::UnknownResource(id)
            | Error::DuplicateResourceId(id)
            | Error::InfiniteIdf(id) => Some(id),
            Error::UnknownConcept { concept, .. } => Some(concept),
            Error::DuplicateAnnotation { resource, .. } => Some(resource),
            _ => None,
        }
    }

    /// Short stable tag for machine-readable error records.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Io { .. } => "io",
            Error::Parse { .. } => "parse",
            Error::InvalidMethod { .. } => "invalid_method",
            Error::Structure(_) => "structure",
            Error::Cycle(_) => "cycle",
            Error::UnknownConcept { .. } => "unknown_concept",
            Error::UnknownResource(_) => "unknown_resource",
            Error::DuplicateResourceId(_) => "duplicate_resource_id",
            Error::DuplicateAnnotation { .. } => "duplicate_annotation",
            Error::MissingCorpus(_) => "missing_corpus",
            Error::EmptyCorpus => "empty_corpus",
            Error::TaxonomyMismatch => "taxonomy_mismatch",
            Error::DegenerateTaxonomy => "degenerate_taxonomy",
            Error::EmptyVector => "empty_vector",
            Error::InfiniteIdf(_) => "infinite_idf",
            Error::ZeroIdfSum => "zero_idf_sum",
            Error::TooFewResources(_) => "too_few_resources",
            Error::CorpusTooSmall { .. } => "corpus_too_small",
            Error::ZeroVariance => "zero_variance",
            Error::ConstantVector(_) => "constant_vector",
            Error::LengthMismatch { .. } => "length_mismatch",
            Error::InvalidArgument(_) => "invalid_argument",
        }
    }
}
