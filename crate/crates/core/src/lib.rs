//! Core algorithms for studying temporal distribution shift in streaming
//! text classification.
//!
//! The crate covers the full analysis loop for a monthly text stream:
//!
//! - [`corpus`]: timestamped documents, monthly bucketing, train/validation/test
//!   splitting and class balancing
//! - [`synthgen`]: regime-switching synthetic stream generator, so every
//!   experiment is reproducible without a proprietary corpus
//! - [`features`]: tokenization, vocabulary construction, bag-of-words features
//! - [`models`]: from-scratch logistic regression and MLP classifiers plus the
//!   three temporal training strategies (ODNM, NDNM, NDOM)
//! - [`eval`]: per-class F1, the rolling in-sample/out-of-sample harness and
//!   Spearman correlation
//! - [`drift`]: weighted-KL month-to-month distribution shift and
//!   high-importance feature extraction
//! - [`mitigate`]: OOD detection plus an autoregressive ensemble over past
//!   model snapshots, gated at inference time
//! - [`baselines`]: spurious-token masking and counterfactual data augmentation
//!
//! Everything here is deterministic given the seeds threaded through the
//! public APIs, and `no_std`-compatible (with `alloc`): all IO, file formats
//! and orchestration live in the companion `tempsent` crate.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod baselines;
pub mod corpus;
pub mod drift;
pub mod error;
pub mod eval;
pub mod features;
pub mod llm;
mod math;
pub mod mitigate;
pub mod models;
mod seed;
pub mod synthgen;
pub mod time;

pub use error::{Error, Result};
