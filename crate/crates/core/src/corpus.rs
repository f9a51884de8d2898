//! Data model for timestamped labeled text: monthly bucketing, deterministic
//! train/validation/test splitting, class balancing and label statistics.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::ops::Range;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::time::{MonthKey, UtcDateTime};

/// Binary sentiment label: 0 = negative/bearish, 1 = positive/bullish.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Label {
    Negative,
    Positive,
}

impl Label {
    pub fn from_int(value: i64) -> Result<Self> {
        match value {
            0 => Ok(Label::Negative),
            1 => Ok(Label::Positive),
            other => Err(Error::InvalidLabel(other)),
        }
    }

    pub fn from_bool(positive: bool) -> Self {
        if positive {
            Label::Positive
        } else {
            Label::Negative
        }
    }

    pub fn as_u8(self) -> u8 {
        match self {
            Label::Negative => 0,
            Label::Positive => 1,
        }
    }

    pub fn as_f64(self) -> f64 {
        self.as_u8() as f64
    }

    pub fn flip(self) -> Self {
        match self {
            Label::Negative => Label::Positive,
            Label::Positive => Label::Negative,
        }
    }
}

/// One labeled text with its occurrence time; the atomic unit of the stream.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimestampedDocument {
    pub text: String,
    pub timestamp: UtcDateTime,
    pub label: Label,
    /// Optional entity tags (e.g. cashtags) carried through from ingestion.
    #[serde(default)]
    pub tags: Vec<String>,
}

impl TimestampedDocument {
    pub fn new(text: String, timestamp: UtcDateTime, label: Label) -> Result<Self> {
        if text.trim().is_empty() {
            return Err(Error::EmptyDocumentText);
        }
        Ok(TimestampedDocument { text, timestamp, label, tags: Vec::new() })
    }

    pub fn with_tags(mut self, tags: Vec<String>) -> Self {
        self.tags = tags;
        self
    }

    pub fn month_key(&self) -> MonthKey {
        self.timestamp.month_key()
    }
}

/// Train/validation/test proportions. Must be non-negative and sum to 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplitRatio {
    pub train: f64,
    pub validation: f64,
    pub test: f64,
}

impl SplitRatio {
    pub fn new(train: f64, validation: f64, test: f64) -> Result<Self> {
        for (name, v) in [("train", train), ("validation", validation), ("test", test)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::InvalidSplitRatio(alloc::format!(
                    "{name} fraction {v} outside [0, 1]"
                )));
            }
        }
        let sum = train + validation + test;
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidSplitRatio(alloc::format!("fractions sum to {sum}, not 1")));
        }
        Ok(SplitRatio { train, validation, test })
    }
}

impl Default for SplitRatio {
    /// The 0.7 / 0.15 / 0.15 split used throughout.
    fn default() -> Self {
        SplitRatio { train: 0.7, validation: 0.15, test: 0.15 }
    }
}

/// All documents of one calendar month, partitioned into train/validation/test.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MonthlySlice {
    /// 0-based chronological index within the corpus.
    pub period: usize,
    pub month_key: MonthKey,
    pub train: Vec<TimestampedDocument>,
    pub validation: Vec<TimestampedDocument>,
    pub test: Vec<TimestampedDocument>,
}

impl MonthlySlice {
    pub fn len(&self) -> usize {
        self.train.len() + self.validation.len() + self.test.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn all_documents(&self) -> impl Iterator<Item = &TimestampedDocument> {
        self.train.iter().chain(self.validation.iter()).chain(self.test.iter())
    }
}

/// The chronologically ordered monthly stream. Immutable after construction.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TemporalCorpus {
    pub slices: Vec<MonthlySlice>,
    pub split_seed: u64,
}

impl TemporalCorpus {
    /// Buckets documents by UTC calendar month and splits every month
    /// independently with one global seed. Months with zero documents between
    /// the first and last month are rejected.
    pub fn from_documents(
        documents: Vec<TimestampedDocument>,
        ratio: SplitRatio,
        seed: u64,
    ) -> Result<Self> {
        if documents.is_empty() {
            return Err(Error::EmptyCorpus);
        }
        let mut buckets: BTreeMap<MonthKey, Vec<TimestampedDocument>> = BTreeMap::new();
        for doc in documents {
            buckets.entry(doc.month_key()).or_default().push(doc);
        }
        let first = *buckets.keys().next().expect("non-empty");
        let last = *buckets.keys().next_back().expect("non-empty");
        let mut expected = first;
        while expected <= last {
            if !buckets.contains_key(&expected) {
                return Err(Error::GapMonth(expected));
            }
            expected = expected.next();
        }

        let mut slices = Vec::with_capacity(buckets.len());
        for (period, (month_key, docs)) in buckets.into_iter().enumerate() {
            slices.push(split_slice(period, month_key, docs, ratio, seed));
        }
        Ok(TemporalCorpus { slices, split_seed: seed })
    }

    pub fn len(&self) -> usize {
        self.slices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slices.is_empty()
    }

    /// A copy of the slice range `range`, re-indexed to periods `0..len`.
    /// Month keys and partitions are preserved.
    pub fn subrange(&self, range: Range<usize>) -> Result<TemporalCorpus> {
        if range.start >= range.end || range.end > self.slices.len() {
            return Err(Error::InvalidConfig(alloc::format!(
                "subrange {}..{} outside corpus of {} slices",
                range.start,
                range.end,
                self.slices.len()
            )));
        }
        let slices = self.slices[range]
            .iter()
            .enumerate()
            .map(|(period, slice)| MonthlySlice { period, ..slice.clone() })
            .collect();
        Ok(TemporalCorpus { slices, split_seed: self.split_seed })
    }

    /// Applies `f` to every document in every partition.
    pub fn map_documents(
        &self,
        mut f: impl FnMut(&TimestampedDocument) -> TimestampedDocument,
    ) -> TemporalCorpus {
        let slices = self
            .slices
            .iter()
            .map(|slice| MonthlySlice {
                period: slice.period,
                month_key: slice.month_key,
                train: slice.train.iter().map(&mut f).collect(),
                validation: slice.validation.iter().map(&mut f).collect(),
                test: slice.test.iter().map(&mut f).collect(),
            })
            .collect();
        TemporalCorpus { slices, split_seed: self.split_seed }
    }

    /// Balances the train partition of every slice by upsampling the minority
    /// label (validation/test untouched).
    pub fn with_balanced_train(&self, seed: u64) -> Result<TemporalCorpus> {
        let slices = self
            .slices
            .iter()
            .map(|slice| upsample_minority(slice, crate::seed::mix(seed, slice.period as u64)))
            .collect::<Result<Vec<_>>>()?;
        Ok(TemporalCorpus { slices, split_seed: self.split_seed })
    }
}

/// Largest-remainder apportionment of `n` documents over the three
/// partitions; each partition ends up within one document of `ratio * n`.
fn partition_sizes(n: usize, ratio: SplitRatio) -> [usize; 3] {
    let targets = [ratio.train * n as f64, ratio.validation * n as f64, ratio.test * n as f64];
    let mut sizes = [0usize; 3];
    let mut fractions = [(0.0f64, 0usize); 3];
    let mut assigned = 0;
    for i in 0..3 {
        let base = targets[i] as usize; // floor; targets are non-negative
        sizes[i] = base;
        assigned += base;
        fractions[i] = (targets[i] - base as f64, i);
    }
    // Hand out the remainder to the largest fractional parts; ties resolve in
    // train/validation/test order via the stable sort.
    fractions.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
    let mut remainder = n - assigned;
    let mut idx = 0;
    while remainder > 0 {
        sizes[fractions[idx].1] += 1;
        remainder -= 1;
        idx += 1;
    }
    sizes
}

fn split_slice(
    period: usize,
    month_key: MonthKey,
    mut docs: Vec<TimestampedDocument>,
    ratio: SplitRatio,
    seed: u64,
) -> MonthlySlice {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // One RNG stream per period: each month's split depends only on
    // (seed, period), not on the other months.
    rng.set_stream(period as u64);
    docs.shuffle(&mut rng);
    let sizes = partition_sizes(docs.len(), ratio);
    let test = docs.split_off(sizes[0] + sizes[1]);
    let validation = docs.split_off(sizes[0]);
    MonthlySlice { period, month_key, train: docs, validation, test }
}

/// Returns a new slice whose train partition has equal label counts, reached
/// by sampling minority-label documents with replacement. A slice that is
/// already balanced is returned unchanged.
pub fn upsample_minority(slice: &MonthlySlice, seed: u64) -> Result<MonthlySlice> {
    let pos: Vec<&TimestampedDocument> =
        slice.train.iter().filter(|d| d.label == Label::Positive).collect();
    let neg: Vec<&TimestampedDocument> =
        slice.train.iter().filter(|d| d.label == Label::Negative).collect();
    if pos.is_empty() || neg.is_empty() {
        return Err(Error::SingleClassData(alloc::format!(
            "train partition of {} has {} positive and {} negative documents",
            slice.month_key,
            pos.len(),
            neg.len()
        )));
    }
    if pos.len() == neg.len() {
        return Ok(slice.clone());
    }
    let deficit = pos.len().abs_diff(neg.len());
    let minority = if pos.len() < neg.len() { pos } else { neg };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut train = slice.train.clone();
    for _ in 0..deficit {
        let pick = rng.gen_range(0..minority.len());
        train.push(minority[pick].clone());
    }
    Ok(MonthlySlice {
        period: slice.period,
        month_key: slice.month_key,
        train,
        validation: slice.validation.clone(),
        test: slice.test.clone(),
    })
}

/// Fraction of positive labels, `#pos / (#pos + #neg)`.
pub fn sentiment_positivity(docs: &[TimestampedDocument]) -> Result<f64> {
    if docs.is_empty() {
        return Err(Error::EmptyDocumentList);
    }
    let pos = docs.iter().filter(|d| d.label == Label::Positive).count();
    Ok(pos as f64 / docs.len() as f64)
}

/// Documents whose tag list contains `tag` (entity filtering).
pub fn filter_by_tag<'a>(docs: &'a [TimestampedDocument], tag: &str) -> Vec<&'a TimestampedDocument> {
    docs.iter().filter(|d| d.tags.iter().any(|t| t == tag)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn doc(text: &str, year: i32, month: u32, label: u8) -> TimestampedDocument {
        TimestampedDocument::new(
            text.to_string(),
            UtcDateTime::new(year, month, 1, 12, 0, 0).unwrap(),
            Label::from_int(label as i64).unwrap(),
        )
        .unwrap()
    }

    fn docs_in_month(n: usize, year: i32, month: u32, label: u8) -> Vec<TimestampedDocument> {
        (0..n).map(|i| doc(&alloc::format!("doc {i} m{month}"), year, month, label)).collect()
    }

    #[test]
    fn rejects_empty_text_and_bad_labels() {
        let ts = UtcDateTime::new(2014, 1, 1, 0, 0, 0).unwrap();
        assert_eq!(
            TimestampedDocument::new("   ".to_string(), ts, Label::Positive),
            Err(Error::EmptyDocumentText)
        );
        assert_eq!(Label::from_int(2), Err(Error::InvalidLabel(2)));
        assert_eq!(Label::from_int(-1), Err(Error::InvalidLabel(-1)));
    }

    #[test]
    fn four_docs_split_half_quarter_quarter() {
        // Exact ratio on a divisible count: 4 docs at (0.5, 0.25, 0.25).
        let docs = docs_in_month(4, 2014, 1, 1);
        let ratio = SplitRatio::new(0.5, 0.25, 0.25).unwrap();
        for seed in [0u64, 1, 42, 12345] {
            let corpus = TemporalCorpus::from_documents(docs.clone(), ratio, seed).unwrap();
            assert_eq!(corpus.len(), 1);
            let slice = &corpus.slices[0];
            assert_eq!(slice.train.len(), 2);
            assert_eq!(slice.validation.len(), 1);
            assert_eq!(slice.test.len(), 1);
        }
    }

    #[test]
    fn gap_month_is_rejected_by_name() {
        let mut docs = docs_in_month(3, 2014, 1, 1);
        docs.extend(docs_in_month(3, 2014, 3, 1));
        let err = TemporalCorpus::from_documents(docs, SplitRatio::default(), 1).unwrap_err();
        assert_eq!(err, Error::GapMonth(MonthKey::new(2014, 2).unwrap()));
    }

    #[test]
    fn empty_corpus_is_rejected() {
        assert_eq!(
            TemporalCorpus::from_documents(vec![], SplitRatio::default(), 1).unwrap_err(),
            Error::EmptyCorpus
        );
    }

    #[test]
    fn partition_sizes_within_one_of_ratio() {
        let ratio = SplitRatio::default();
        for n in [1usize, 2, 3, 7, 10, 333, 1000] {
            let sizes = partition_sizes(n, ratio);
            assert_eq!(sizes.iter().sum::<usize>(), n);
            for (size, target) in
                sizes.iter().zip([0.7 * n as f64, 0.15 * n as f64, 0.15 * n as f64]) {
                assert!(
                    (*size as f64 - target).abs() <= 1.0,
                    "n={n}: size {size} vs target {target}"
                );
            }
        }
    }

    #[test]
    fn split_is_deterministic_and_slices_keep_their_documents() {
        let mut docs = docs_in_month(20, 2014, 1, 1);
        docs.extend(docs_in_month(13, 2014, 2, 0));
        let a = TemporalCorpus::from_documents(docs.clone(), SplitRatio::default(), 9).unwrap();
        let b = TemporalCorpus::from_documents(docs.clone(), SplitRatio::default(), 9).unwrap();
        for (sa, sb) in a.slices.iter().zip(&b.slices) {
            assert_eq!(sa.train, sb.train);
            assert_eq!(sa.validation, sb.validation);
            assert_eq!(sa.test, sb.test);
        }
        // Union of partitions = the month's documents (multiset equality).
        for slice in &a.slices {
            let mut got: Vec<&str> = slice.all_documents().map(|d| d.text.as_str()).collect();
            got.sort_unstable();
            let mut want: Vec<&str> = docs
                .iter()
                .filter(|d| d.month_key() == slice.month_key)
                .map(|d| d.text.as_str())
                .collect();
            want.sort_unstable();
            assert_eq!(got, want);
            for d in slice.all_documents() {
                assert_eq!(d.month_key(), slice.month_key);
            }
        }
    }

    #[test]
    fn different_seeds_give_different_shuffles() {
        let docs = docs_in_month(50, 2014, 1, 1);
        let a = TemporalCorpus::from_documents(docs.clone(), SplitRatio::default(), 1).unwrap();
        let b = TemporalCorpus::from_documents(docs, SplitRatio::default(), 2).unwrap();
        assert_ne!(a.slices[0].train, b.slices[0].train);
    }

    #[test]
    fn upsample_balances_by_copying_minority_docs() {
        // 6 positive + 2 negative -> 6/6, additions are copies of the 2.
        let mut docs = docs_in_month(6, 2014, 1, 1);
        docs.extend(docs_in_month(2, 2014, 1, 0));
        let slice = MonthlySlice {
            period: 0,
            month_key: MonthKey::new(2014, 1).unwrap(),
            train: docs,
            validation: vec![],
            test: vec![],
        };
        let balanced = upsample_minority(&slice, 7).unwrap();
        let pos = balanced.train.iter().filter(|d| d.label == Label::Positive).count();
        let neg = balanced.train.iter().filter(|d| d.label == Label::Negative).count();
        assert_eq!((pos, neg), (6, 6));
        let originals: Vec<&str> =
            slice.train.iter().filter(|d| d.label == Label::Negative).map(|d| d.text.as_str()).collect();
        for added in &balanced.train[8..] {
            assert!(originals.contains(&added.text.as_str()));
        }
    }

    #[test]
    fn upsample_identity_when_balanced_and_error_on_single_class() {
        let mut docs = docs_in_month(3, 2014, 1, 1);
        docs.extend(docs_in_month(3, 2014, 1, 0));
        let slice = MonthlySlice {
            period: 0,
            month_key: MonthKey::new(2014, 1).unwrap(),
            train: docs,
            validation: vec![],
            test: vec![],
        };
        let balanced = upsample_minority(&slice, 3).unwrap();
        assert_eq!(balanced.train, slice.train);

        let single = MonthlySlice { train: docs_in_month(4, 2014, 1, 1), ..slice.clone() };
        assert!(matches!(upsample_minority(&single, 3), Err(Error::SingleClassData(_))));
    }

    #[test]
    fn upsample_large_deficit_draws_with_replacement() {
        let mut docs = docs_in_month(100, 2014, 1, 1);
        docs.extend(docs_in_month(37, 2014, 1, 0));
        let slice = MonthlySlice {
            period: 0,
            month_key: MonthKey::new(2014, 1).unwrap(),
            train: docs,
            validation: vec![],
            test: vec![],
        };
        let balanced = upsample_minority(&slice, 11).unwrap();
        let pos = balanced.train.iter().filter(|d| d.label == Label::Positive).count();
        let neg = balanced.train.iter().filter(|d| d.label == Label::Negative).count();
        assert_eq!((pos, neg), (100, 100));
        assert_eq!(balanced.train.len(), 200);
        // The distinct set of training texts is unchanged.
        let mut before: Vec<&str> = slice.train.iter().map(|d| d.text.as_str()).collect();
        let mut after: Vec<&str> = balanced.train.iter().map(|d| d.text.as_str()).collect();
        before.sort_unstable();
        before.dedup();
        after.sort_unstable();
        after.dedup();
        assert_eq!(before, after);
    }

    #[test]
    fn positivity_formula_and_errors() {
        let docs = vec![
            doc("a", 2014, 1, 1),
            doc("b", 2014, 1, 1),
            doc("c", 2014, 1, 1),
            doc("d", 2014, 1, 0),
        ];
        assert_eq!(sentiment_positivity(&docs).unwrap(), 0.75);
        assert_eq!(sentiment_positivity(&docs[..3]).unwrap(), 1.0);
        assert_eq!(sentiment_positivity(&[]).unwrap_err(), Error::EmptyDocumentList);
    }

    #[test]
    fn positivity_is_permutation_invariant() {
        let mut docs = docs_in_month(5, 2014, 1, 1);
        docs.extend(docs_in_month(3, 2014, 1, 0));
        let p = sentiment_positivity(&docs).unwrap();
        docs.reverse();
        assert_eq!(sentiment_positivity(&docs).unwrap(), p);
    }

    #[test]
    fn subrange_reindexes_periods() {
        let mut docs = docs_in_month(10, 2014, 1, 1);
        docs.extend(docs_in_month(10, 2014, 2, 1));
        docs.extend(docs_in_month(10, 2014, 3, 1));
        let corpus = TemporalCorpus::from_documents(docs, SplitRatio::default(), 5).unwrap();
        let sub = corpus.subrange(1..3).unwrap();
        assert_eq!(sub.len(), 2);
        assert_eq!(sub.slices[0].period, 0);
        assert_eq!(sub.slices[0].month_key, MonthKey::new(2014, 2).unwrap());
        assert_eq!(sub.slices[1].period, 1);
        assert!(corpus.subrange(2..2).is_err());
        assert!(corpus.subrange(1..9).is_err());
    }

    #[test]
    fn tag_filtering() {
        let tagged = doc("x", 2014, 1, 1).with_tags(vec!["$tsla".to_string()]);
        let plain = doc("y", 2014, 1, 0);
        let docs = vec![tagged, plain];
        assert_eq!(filter_by_tag(&docs, "$tsla").len(), 1);
        assert_eq!(filter_by_tag(&docs, "$aapl").len(), 0);
    }
}
