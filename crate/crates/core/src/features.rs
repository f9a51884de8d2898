//! Tokenization, vocabulary construction and bag-of-words features, shared by
//! every classifier and by the drift/baseline analyses.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::corpus::TimestampedDocument;
use crate::error::{Error, Result};

/// Reserved sentinel for masked tokens; never enters a vocabulary.
pub const MASK_TOKEN: &str = "<mask>";

/// Lowercases one whitespace-delimited raw token, strips leading/trailing
/// punctuation and keeps a leading cashtag/hashtag sigil. Returns `None` for
/// tokens that strip down to nothing.
fn normalize_token(raw: &str) -> Option<String> {
    if raw == MASK_TOKEN {
        return Some(raw.to_string());
    }
    let lower = raw.to_lowercase();
    let stripped = lower.trim_end_matches(|c: char| !c.is_alphanumeric());
    let stripped =
        stripped.trim_start_matches(|c: char| !(c.is_alphanumeric() || c == '$' || c == '#'));
    if stripped.is_empty() {
        None
    } else {
        Some(stripped.to_string())
    }
}

/// Lowercased, Unicode-whitespace-split tokens with per-token punctuation
/// stripping; cashtags and hashtags keep their sigil.
pub fn tokenize(text: &str) -> Vec<String> {
    text.split_whitespace().filter_map(normalize_token).collect()
}

/// Dense token/index bijection over tokens meeting a frequency threshold.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Vocabulary {
    index_of: BTreeMap<String, u32>,
    tokens: Vec<String>,
    min_frequency: u64,
}

impl Vocabulary {
    /// Builds a vocabulary of tokens with corpus frequency >= `min_frequency`,
    /// ordered by (frequency desc, token asc) so the index assignment is
    /// deterministic. The mask sentinel is excluded.
    pub fn build<'a>(
        docs: impl IntoIterator<Item = &'a TimestampedDocument>,
        min_frequency: u64,
    ) -> Result<Self> {
        let mut counts: BTreeMap<String, u64> = BTreeMap::new();
        for doc in docs {
            for token in tokenize(&doc.text) {
                if token != MASK_TOKEN {
                    *counts.entry(token).or_insert(0) += 1;
                }
            }
        }
        let threshold = min_frequency.max(1);
        let mut entries: Vec<(String, u64)> =
            counts.into_iter().filter(|(_, c)| *c >= threshold).collect();
        if entries.is_empty() {
            return Err(Error::NoTokensAboveThreshold(threshold));
        }
        entries.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
        let tokens: Vec<String> = entries.into_iter().map(|(t, _)| t).collect();
        let index_of = tokens.iter().enumerate().map(|(i, t)| (t.clone(), i as u32)).collect();
        Ok(Vocabulary { index_of, tokens, min_frequency })
    }

    pub fn index_of(&self, token: &str) -> Option<u32> {
        self.index_of.get(token).copied()
    }

    pub fn token(&self, index: u32) -> Option<&str> {
        self.tokens.get(index as usize).map(String::as_str)
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn min_frequency(&self) -> u64 {
        self.min_frequency
    }

    /// FNV-1a over the token list; cheap identity check for stats built over
    /// the same shared vocabulary.
    pub fn fingerprint(&self) -> u64 {
        const PRIME: u64 = 0x100_0000_01b3;
        let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
        for token in &self.tokens {
            for byte in token.as_bytes() {
                hash ^= *byte as u64;
                hash = hash.wrapping_mul(PRIME);
            }
            // Separator so ["ab","c"] and ["a","bc"] hash differently.
            hash ^= 0xff;
            hash = hash.wrapping_mul(PRIME);
        }
        hash
    }

    /// One token per line; the line number is the index.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for token in &self.tokens {
            out.push_str(token);
            out.push('\n');
        }
        out
    }

    /// Inverse of [`Vocabulary::to_text`]. `min_frequency` is not stored in
    /// the text format and is restored as 0.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut tokens = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let token = line.trim();
            if token.is_empty() {
                return Err(Error::Parse { line: i + 1, message: "empty token".to_string() });
            }
            tokens.push(token.to_string());
        }
        if tokens.is_empty() {
            return Err(Error::Parse { line: 1, message: "empty vocabulary file".to_string() });
        }
        let index_of: BTreeMap<String, u32> =
            tokens.iter().enumerate().map(|(i, t)| (t.clone(), i as u32)).collect();
        if index_of.len() != tokens.len() {
            return Err(Error::Parse { line: 1, message: "duplicate token".to_string() });
        }
        Ok(Vocabulary { index_of, tokens, min_frequency: 0 })
    }
}

/// Sparse term-frequency vector; entries sorted by index, all counts > 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureVector {
    entries: Vec<(u32, u32)>,
}

impl FeatureVector {
    pub fn iter(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.entries.iter().copied()
    }

    pub fn get(&self, index: u32) -> u32 {
        self.entries
            .binary_search_by_key(&index, |(i, _)| *i)
            .map(|pos| self.entries[pos].1)
            .unwrap_or(0)
    }

    /// Number of distinct in-vocabulary tokens.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Total in-vocabulary token count.
    pub fn total_count(&self) -> u64 {
        self.entries.iter().map(|(_, c)| *c as u64).sum()
    }
}

/// Term-frequency counts over in-vocabulary tokens; OOV tokens are ignored.
pub fn featurize(doc: &TimestampedDocument, vocab: &Vocabulary) -> FeatureVector {
    featurize_tokens(&tokenize(&doc.text), vocab)
}

/// [`featurize`] over a pre-tokenized token list.
pub fn featurize_tokens(tokens: &[String], vocab: &Vocabulary) -> FeatureVector {
    let mut indices: Vec<u32> = tokens.iter().filter_map(|t| vocab.index_of(t)).collect();
    indices.sort_unstable();
    let mut entries: Vec<(u32, u32)> = Vec::with_capacity(indices.len());
    for index in indices {
        match entries.last_mut() {
            Some((i, c)) if *i == index => *c += 1,
            _ => entries.push((index, 1)),
        }
    }
    FeatureVector { entries }
}

/// Replaces every raw token whose normalized form is in `masked` with the
/// mask sentinel. A document with no masked tokens is returned unchanged;
/// otherwise the text is rebuilt with single spaces, which leaves
/// whitespace-based tokenization of the remaining tokens intact.
pub fn mask_tokens(doc: &TimestampedDocument, masked: &BTreeSet<String>) -> TimestampedDocument {
    if masked.is_empty() {
        return doc.clone();
    }
    let mut replaced = false;
    let rebuilt: Vec<&str> = doc
        .text
        .split_whitespace()
        .map(|raw| match normalize_token(raw) {
            Some(token) if masked.contains(&token) => {
                replaced = true;
                MASK_TOKEN
            }
            _ => raw,
        })
        .collect();
    if !replaced {
        return doc.clone();
    }
    TimestampedDocument { text: rebuilt.join(" "), ..doc.clone() }
}
