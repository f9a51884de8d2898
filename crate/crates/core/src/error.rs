//! Crate-wide error type.

use alloc::string::String;
use core::fmt;

use crate::time::MonthKey;

pub type Result<T> = core::result::Result<T, Error>;

/// Everything that can go wrong inside the core algorithms.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Document text is empty after whitespace trimming.
    EmptyDocumentText,
    /// A label outside {0, 1}.
    InvalidLabel(i64),
    /// A calendar field is out of range.
    InvalidTimestamp(String),
    /// No documents were supplied where at least one is required.
    EmptyCorpus,
    /// An empty document list was passed to an operation that needs one.
    EmptyDocumentList,
    /// A month between the first and last month of the stream has no documents.
    GapMonth(MonthKey),
    /// The split ratio is malformed (negative entry or does not sum to 1).
    InvalidSplitRatio(String),
    /// An operation that needs both labels saw only one.
    SingleClassData(String),
    /// Configuration validation failed.
    InvalidConfig(String),
    /// No token reached the vocabulary frequency threshold.
    NoTokensAboveThreshold(u64),
    /// Paired lists have different lengths.
    LengthMismatch { left: usize, right: usize },
    /// Rank correlation is undefined for a constant series.
    ConstantSeries,
    /// Too few data points for the requested statistic.
    TooFewPoints { needed: usize, got: usize },
    /// The snapshot list does not line up with the corpus periods.
    SnapshotMismatch(String),
    /// The requested model kind cannot be used with this operation.
    UnsupportedKind(String),
    /// Token statistics were built over different shared vocabularies.
    VocabularyMismatch,
    /// A representation vector has the wrong width.
    RepresentationWidth { expected: usize, got: usize },
    /// OOD dataset construction produced no examples.
    EmptyOodDataset,
    /// The AR design matrix is (near-)rank-deficient.
    RankDeficientDesign { order: usize },
    /// The AR fit range is incompatible with the order or snapshots.
    InvalidFitRange(String),
    /// The antonym lexicon covers none of the causal tokens.
    NoLexiconCoverage,
    /// A lexicon entry maps a token to itself.
    LexiconSelfMap(String),
    /// Malformed serialized input (vocabulary file, lexicon line, ...).
    Parse { line: usize, message: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyDocumentText => write!(f, "document text is empty after trimming"),
            Error::InvalidLabel(v) => write!(f, "label must be 0 or 1, got {v}"),
            Error::InvalidTimestamp(msg) => write!(f, "invalid timestamp: {msg}"),
            Error::EmptyCorpus => write!(f, "corpus contains no documents"),
            Error::EmptyDocumentList => write!(f, "document list is empty"),
            Error::GapMonth(month) => write!(f, "no documents for month {month}"),
            Error::InvalidSplitRatio(msg) => write!(f, "invalid split ratio: {msg}"),
            Error::SingleClassData(ctx) => write!(f, "need both labels: {ctx}"),
            Error::InvalidConfig(msg) => write!(f, "invalid configuration: {msg}"),
            Error::NoTokensAboveThreshold(min) => {
                write!(f, "no token occurs at least {min} times")
            }
            Error::LengthMismatch { left, right } => {
                write!(f, "length mismatch: {left} vs {right}")
            }
            Error::ConstantSeries => write!(f, "rank correlation undefined for a constant series"),
            Error::TooFewPoints { needed, got } => {
                write!(f, "need at least {needed} points, got {got}")
            }
            Error::SnapshotMismatch(msg) => write!(f, "snapshot mismatch: {msg}"),
            Error::UnsupportedKind(msg) => write!(f, "unsupported model kind: {msg}"),
            Error::VocabularyMismatch => {
                write!(f, "token statistics use different shared vocabularies")
            }
            Error::RepresentationWidth { expected, got } => {
                write!(f, "representation width {got}, expected {expected}")
            }
            Error::EmptyOodDataset => write!(f, "OOD dataset construction produced no examples"),
            Error::RankDeficientDesign { order } => write!(
                f,
                "AR design matrix is rank-deficient; try a smaller order than {order}"
            ),
            Error::InvalidFitRange(msg) => write!(f, "invalid AR fit range: {msg}"),
            Error::NoLexiconCoverage => write!(f, "lexicon covers no causal token"),
            Error::LexiconSelfMap(token) => write!(f, "lexicon maps {token:?} to itself"),
            Error::Parse { line, message } => write!(f, "parse error at line {line}: {message}"),
        }
    }
}

impl core::error::Error for Error {}
