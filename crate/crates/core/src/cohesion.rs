//! Semantic cohesion and the Monte-Carlo significance test built on it.
//!
//! The cohesion of a resource set is the mean pairwise similarity over its
//! unordered pairs. To judge whether a benchmark set is more cohesive than
//! chance, `R` random sets of the same size are drawn from the corpus and
//! their cohesion values form a null distribution; the benchmark set's
//! t-value is `(sc - mean_R) / sd_R` and its degree of confidence is the
//! Student-t CDF at that value.
//!
//! Sampling is deterministic: the sample index space is cut into fixed blocks
//! of [`SAMPLE_BLOCK`] sets, and block `b` draws from a ChaCha8 generator
//! seeded with the run seed on stream `b`. Each set is `k` distinct resources
//! chosen with `rand::seq::index::sample`; sets may repeat across samples.
//! Blocks are evaluated in parallel and the result does not depend on the
//! number of workers.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::measure::SimilarityMatrix;
use crate::stats;

pub const DEFAULT_SAMPLES: usize = 100_000;
pub const SAMPLE_BLOCK: usize = 1024;
pub const DEFAULT_HISTOGRAM_BINS: usize = 50;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SetCohesion {
    pub resource_ids: Vec<String>,
    pub cohesion: f64,
}

/// Mean similarity over all unordered pairs of `members`, summed in
/// `(i, j)`, `i < j` order. Exactly `s` when every pair scores `s`.
pub fn cohesion_of(matrix: &SimilarityMatrix, members: &[usize]) -> f64 {
    let k = members.len();
    let first = matrix.get(members[0], members[1]);
    let mut sum = 0.0;
    let mut constant = true;
    for i in 0..k {
        for j in i + 1..k {
            let v = matrix.get(members[i], members[j]);
            constant &= v == first;
            sum += v;
        }
    }
    if constant {
        return first;
    }
    sum / (k * (k - 1) / 2) as f64
}

pub fn cohesion<S: AsRef<str>>(matrix: &SimilarityMatrix, ids: &[S]) -> Result<SetCohesion> {
    if ids.len() < 2 {
        return Err(Error::TooFewResources(ids.len()));
    }
    let members = ids
        .iter()
        .map(|id| matrix.position(id.as_ref()))
        .collect::<Result<Vec<_>>>()?;
    Ok(SetCohesion {
        resource_ids: ids.iter().map(|s| s.as_ref().to_owned()).collect(),
        cohesion: cohesion_of(matrix, &members),
    })
}

/// `samples` random `k`-subsets of `0..corpus_size`, stored flat.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSets {
    k: usize,
    seed: u64,
    members: Vec<u32>,
}

impl SampleSets {
    pub fn draw(corpus_size: usize, k: usize, samples: usize, seed: u64) -> Result<Self> {
        if k < 2 {
            return Err(Error::TooFewResources(k));
        }
        if corpus_size < k {
            return Err(Error::CorpusTooSmall {
                size: corpus_size,
                k,
            });
        }
        if samples < 2 {
            return Err(Error::InvalidArgument(format!(
                "need at least 2 samples, got {samples}"
            )));
        }
        let mut members = vec![0u32; samples * k];
        members
            .par_chunks_mut(SAMPLE_BLOCK * k)
            .enumerate()
            .for_each(|(block, out)| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(block as u64);
                for set in out.chunks_mut(k) {
                    let picked = rand::seq::index::sample(&mut rng, corpus_size, k);
                    for (slot, idx) in set.iter_mut().zip(picked.iter()) {
                        *slot = idx as u32;
                    }
                    // Same set, same summation order, same cohesion bits.
                    set.sort_unstable();
                }
            });
        Ok(SampleSets { k, seed, members })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn len(&self) -> usize {
        self.members.len() / self.k
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn get(&self, i: usize) -> Vec<usize> {
        self.members[i * self.k..(i + 1) * self.k]
            .iter()
            .map(|&x| x as usize)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NullDistribution {
    pub k: usize,
    pub seed: u64,
    #[serde(skip)]
    pub values: Vec<f64>,
    pub mean: f64,
    /// Sample standard deviation of the cohesion values.
    pub sd: f64,
}

pub fn null_from_sets(matrix: &SimilarityMatrix, sets: &SampleSets) -> NullDistribution {
    let k = sets.k;
    let mut values = vec![0.0; sets.len()];
    values.par_iter_mut().enumerate().for_each(|(i, v)| {
        let set: Vec<usize> = sets.members[i * k..(i + 1) * k]
            .iter()
            .map(|&x| x as usize)
            .collect();
        *v = cohesion_of(matrix, &set);
    });
    let mean = stats::mean(&values);
    let sd = stats::sample_sd(&values);
    NullDistribution {
        k,
        seed: sets.seed,
        values,
        mean,
        sd,
    }
}

pub fn sample_null(
    matrix: &SimilarityMatrix,
    k: usize,
    samples: usize,
    seed: u64,
) -> Result<NullDistribution> {
    let sets = SampleSets::draw(matrix.len(), k, samples, seed)?;
    Ok(null_from_sets(matrix, &sets))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CohesionTest {
    pub observed: f64,
    pub null_mean: f64,
    pub null_sd: f64,
    pub t: f64,
    pub confidence: f64,
    pub df: u32,
}

pub fn t_test(observed: f64, null: &NullDistribution, df: u32) -> Result<CohesionTest> {
    if null.sd.is_nan() || null.sd <= 0.0 {
        return Err(Error::ZeroVariance);
    }
    let t = (observed - null.mean) / null.sd;
    Ok(CohesionTest {
        observed,
        null_mean: null.mean,
        null_sd: null.sd,
        t,
        confidence: stats::student_t_cdf(t, df)?,
        df,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Bin {
    pub left: f64,
    pub right: f64,
    pub count: u64,
}

/// Plot-ready histogram of a null distribution with its markers.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Histogram {
    pub bins: Vec<Bin>,
    pub mean: f64,
    pub sd: f64,
    pub observed: Option<f64>,
}

pub fn histogram(null: &NullDistribution, bins: usize, observed: Option<f64>) -> Histogram {
    let bins = bins.max(1);
    let lo = null
        .values
        .iter()
        .copied()
        .chain(observed)
        .fold(f64::INFINITY, f64::min);
    let hi = null
        .values
        .iter()
        .copied()
        .chain(observed)
        .fold(f64::NEG_INFINITY, f64::max);
    let width = if hi > lo {
        (hi - lo) / bins as f64
    } else {
        0.0
    };
    let mut counts = vec![0u64; bins];
    for &v in &null.values {
        let b = if width > 0.0 {
            (((v - lo) / width) as usize).min(bins - 1)
        } else {
            0
        };
        counts[b] += 1;
    }
    let bins = counts
        .into_iter()
        .enumerate()
        .map(|(i, count)| Bin {
            left: lo + width * i as f64,
            right: if i + 1 == bins {
                hi
            } else {
                lo + width * (i + 1) as f64
            },
            count,
        })
        .collect();
    Histogram {
        bins,
        mean: null.mean,
        sd: null.sd,
        observed,
    }
}

impl Histogram {
    /// `bin_left,bin_right,count` rows followed by a `#` stats row.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("bin_left,bin_right,count\n");
        for b in &self.bins {
            let _ = writeln!(out, "{:.6},{:.6},{}", b.left, b.right, b.count);
        }
        let _ = write!(out, "# mean={:.6} sd={:.6}", self.mean, self.sd);
        if let Some(o) = self.observed {
            let _ = write!(out, " observed={o:.6}");
        }
        out.push('\n');
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BenchmarkSet {
    pub id: String,
    pub members: Vec<String>,
}

/// One set per line: `<set_id><TAB><resource_id>,<resource_id>,...`.
pub fn parse_benchmark_sets(text: &str) -> Result<Vec<BenchmarkSet>> {
    let mut sets: Vec<BenchmarkSet> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let location = format!("line {}", lineno + 1);
        let line = line.strip_suffix('\r').unwrap_or(line);
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let (id, members) = line
            .split_once('\t')
            .ok_or_else(|| Error::parse(&location, "expected `<set_id><TAB><ids>`"))?;
        let members: Vec<String> = members.split(',').map(|m| m.trim().to_owned()).collect();
        if id.is_empty() || members.iter().any(String::is_empty) {
            return Err(Error::parse(&location, "empty set or resource id"));
        }
        if members.len() < 2 {
            return Err(Error::TooFewResources(members.len()));
        }
        if sets.iter().any(|s| s.id == id) {
            return Err(Error::parse(&location, format!("duplicate set id `{id}`")));
        }
        sets.push(BenchmarkSet {
            id: id.to_owned(),
            members,
        });
    }
    Ok(sets)
}

pub fn load_benchmark_sets(path: impl AsRef<Path>) -> Result<Vec<BenchmarkSet>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_benchmark_sets(&text)
}

fn unordered(a: &str, b: &str) -> (String, String) {
    if a <= b {
        (a.to_owned(), b.to_owned())
    } else {
        (b.to_owned(), a.to_owned())
    }
}

/// Consolidated expert scores keyed by unordered resource pair.
#[derive(Debug, Clone, Default)]
pub struct Judgements {
    scores: HashMap<(String, String), f64>,
    order: Vec<(String, String)>,
}

impl Judgements {
    /// CSV `resource_a,resource_b,score`, with an optional header row.
    pub fn parse_csv(text: &str) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .comment(Some(b'#'))
            .from_reader(text.as_bytes());
        let mut out = Judgements::default();
        for (i, record) in reader.records().enumerate() {
            let location = format!("record {}", i + 1);
            let record = record.map_err(|e| Error::parse(&location, e.to_string()))?;
            if record.len() != 3 {
                return Err(Error::parse(
                    &location,
                    "expected resource_a,resource_b,score",
                ));
            }
            if i == 0 && &record[2] == "score" {
                continue;
            }
            let score: f64 = record[2].parse().map_err(|_| {
                Error::parse(&location, format!("score `{}` is not a number", &record[2]))
            })?;
            if !(0.0..=1.0).contains(&score) {
                return Err(Error::parse(
                    &location,
                    format!("score {score} outside [0, 1]"),
                ));
            }
            let key = unordered(&record[0], &record[1]);
            if key.0 == key.1 {
                return Err(Error::parse(
                    &location,
                    "a resource cannot be judged against itself",
                ));
            }
            if out.scores.insert(key.clone(), score).is_some() {
                return Err(Error::parse(
                    &location,
                    format!("duplicate pair ({}, {})", key.0, key.1),
                ));
            }
            out.order.push(key);
        }
        Ok(out)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse_csv(&text)
    }

    pub fn get(&self, a: &str, b: &str) -> Option<f64> {
        self.scores.get(&unordered(a, b)).copied()
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Pairs in file order.
    pub fn pairs(&self) -> impl Iterator<Item = (&str, &str, f64)> {
        self.order
            .iter()
            .map(|k| (k.0.as_str(), k.1.as_str(), self.scores[k]))
    }

    /// Pearson correlation between `matrix` scores and the judgements over
    /// every judged pair.
    pub fn correlate(&self, matrix: &SimilarityMatrix) -> Result<f64> {
        let mut method = Vec::with_capacity(self.len());
        let mut expert = Vec::with_capacity(self.len());
        for (a, b, s) in self.pairs() {
            method.push(matrix.get(matrix.position(a)?, matrix.position(b)?));
            expert.push(s);
        }
        stats::pearson(&method, &expert)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "status", content = "value", rename_all = "snake_case")]
pub enum PearsonCell {
    NotRequested,
    Value(f64),
    /// Fewer than two judged pairs in the set.
    Insufficient,
    /// One of the two score vectors is constant.
    ConstantVector,
}

impl PearsonCell {
    fn csv(&self) -> String {
        match self {
            PearsonCell::NotRequested => String::new(),
            PearsonCell::Value(v) => format!("{v:.6}"),
            PearsonCell::Insufficient => "NA:insufficient_pairs".into(),
            PearsonCell::ConstantVector => "NA:constant_vector".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub method: String,
    pub set_id: String,
    pub cohesion: f64,
    pub t: f64,
    pub confidence: f64,
    pub pearson: PearsonCell,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HistogramEntry {
    pub method: String,
    pub set_id: String,
    pub histogram: Histogram,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub rows: Vec<ReportRow>,
    /// Per-method means over the sets, `set_id` = `Average`.
    pub averages: Vec<ReportRow>,
    #[serde(skip)]
    pub histograms: Vec<HistogramEntry>,
}

impl Report {
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["method", "set_id", "cohesion", "t", "confidence", "pearson"])
            .expect("in-memory write");
        for r in self.rows.iter().chain(&self.averages) {
            w.write_record([
                r.method.clone(),
                r.set_id.clone(),
                format!("{:.6}", r.cohesion),
                format!("{:.6}", r.t),
                format!("{:.6}", r.confidence),
                r.pearson.csv(),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub samples: usize,
    pub seed: u64,
    /// Degrees of freedom; `None` uses each set's cardinality.
    pub df: Option<u32>,
    pub histogram_bins: usize,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            samples: DEFAULT_SAMPLES,
            seed: 0,
            df: None,
            histogram_bins: DEFAULT_HISTOGRAM_BINS,
        }
    }
}

fn pearson_for_set(
    matrix: &SimilarityMatrix,
    members: &[usize],
    judgements: Option<&Judgements>,
) -> PearsonCell {
    let Some(judgements) = judgements else {
        return PearsonCell::NotRequested;
    };
    let ids = matrix.ids();
    let (mut method, mut expert) = (Vec::new(), Vec::new());
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            if let Some(s) = judgements.get(&ids[members[i]], &ids[members[j]]) {
                method.push(matrix.get(members[i], members[j]));
                expert.push(s);
            }
        }
    }
    if method.len() < 2 {
        return PearsonCell::Insufficient;
    }
    match stats::pearson(&method, &expert) {
        Ok(p) => PearsonCell::Value(p),
        Err(_) => PearsonCell::ConstantVector,
    }
}

/// Runs the cohesion test for every method on every set. All matrices must
/// cover the same resources in the same order; random sets of each size are
/// drawn once and shared by all methods.
pub fn run_experiment(
    methods: &[(String, SimilarityMatrix)],
    sets: &[BenchmarkSet],
    judgements: Option<&Judgements>,
    config: &ExperimentConfig,
) -> Result<Report> {
    let Some((_, first)) = methods.first() else {
        return Err(Error::InvalidArgument("no methods given".into()));
    };
    if let Some((label, _)) = methods.iter().find(|(_, m)| m.ids() != first.ids()) {
        return Err(Error::InvalidArgument(format!(
            "matrix for `{label}` covers different resources"
        )));
    }
    let members: Vec<Vec<usize>> = sets
        .iter()
        .map(|s| s.members.iter().map(|id| first.position(id)).collect())
        .collect::<Result<_>>()?;

    let mut draws: BTreeMap<usize, SampleSets> = BTreeMap::new();
    for s in sets {
        let k = s.members.len();
        if let Entry::Vacant(slot) = draws.entry(k) {
            slot.insert(SampleSets::draw(
                first.len(),
                k,
                config.samples,
                config.seed,
            )?);
        }
    }

    let mut rows = Vec::new();
    let mut averages = Vec::new();
    let mut histograms = Vec::new();
    for (label, matrix) in methods {
        let mut nulls: BTreeMap<usize, NullDistribution> = BTreeMap::new();
        let mut method_rows = Vec::new();
        for (set, idx) in sets.iter().zip(&members) {
            let k = idx.len();
            let null = nulls
                .entry(k)
                .or_insert_with(|| null_from_sets(matrix, &draws[&k]));
            let observed = cohesion_of(matrix, idx);
            let df = config.df.unwrap_or(k as u32);
            let test = t_test(observed, null, df)?;
            histograms.push(HistogramEntry {
                method: label.clone(),
                set_id: set.id.clone(),
                histogram: histogram(null, config.histogram_bins, Some(observed)),
            });
            method_rows.push(ReportRow {
                method: label.clone(),
                set_id: set.id.clone(),
                cohesion: observed,
                t: test.t,
                confidence: test.confidence,
                pearson: pearson_for_set(matrix, idx, judgements),
            });
        }
        if !method_rows.is_empty() {
            averages.push(average_row(label, &method_rows));
        }
        rows.extend(method_rows);
    }
    Ok(Report {
        rows,
        averages,
        histograms,
    })
}

fn average_row(label: &str, rows: &[ReportRow]) -> ReportRow {
    let col = |f: fn(&ReportRow) -> f64| stats::mean(&rows.iter().map(f).collect::<Vec<_>>());
    let defined: Vec<f64> = rows
        .iter()
        .filter_map(|r| match r.pearson {
            PearsonCell::Value(v) => Some(v),
            _ => None,
        })
        .collect();
    let pearson = if !defined.is_empty() {
        PearsonCell::Value(stats::mean(&defined))
    } else if rows.iter().all(|r| r.pearson == PearsonCell::NotRequested) {
        PearsonCell::NotRequested
    } else {
        PearsonCell::Insufficient
    };
    ReportRow {
        method: label.to_owned(),
        set_id: "Average".into(),
        cohesion: col(|r| r.cohesion),
        t: col(|r| r.t),
        confidence: col(|r| r.confidence),
        pearson,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matrix(ids: &[&str], upper: &[f64]) -> SimilarityMatrix {
        let n = ids.len();
        let mut values = vec![1.0; n * n];
        let mut it = upper.iter();
        for i in 0..n {
            for j in i + 1..n {
                let v = *it.next().unwrap();
                values[i * n + j] = v;
                values[j * n + i] = v;
            }
        }
        SimilarityMatrix::from_values(ids.iter().map(|s| s.to_string()).collect(), values).unwrap()
    }

    #[test]
    fn cohesion_examples() {
        let m = matrix(&["a", "b", "c"], &[0.2, 0.4, 0.6]);
        assert!((cohesion(&m, &["a", "b", "c"]).unwrap().cohesion - 0.4).abs() < 1e-15);
        assert_eq!(cohesion(&m, &["a", "c"]).unwrap().cohesion, 0.4);
        assert!(matches!(
            cohesion(&m, &["a"]),
            Err(Error::TooFewResources(1))
        ));
        assert!(matches!(
            cohesion(&m, &["a", "zz"]),
            Err(Error::UnknownResource(_))
        ));
    }

    #[test]
    fn equal_similarities_give_exact_cohesion() {
        let m = matrix(&["a", "b", "c", "d"], &[0.3; 6]);
        assert_eq!(cohesion(&m, &["a", "b", "c", "d"]).unwrap().cohesion, 0.3);
    }

    #[test]
    fn corpus_of_exactly_k_has_zero_variance() {
        let m = matrix(&["a", "b", "c", "d"], &[0.1, 0.5, 0.9, 0.3, 0.7, 0.2]);
        let null = sample_null(&m, 4, 200, 1).unwrap();
        assert!(null.values.iter().all(|&v| v == null.values[0]));
        assert_eq!(null.sd, 0.0);
        assert!(matches!(t_test(0.7, &null, 3), Err(Error::ZeroVariance)));
    }

    #[test]
    fn sampling_errors() {
        let m = matrix(&["a", "b", "c"], &[0.1, 0.5, 0.9]);
        assert!(matches!(
            sample_null(&m, 4, 10, 1),
            Err(Error::CorpusTooSmall { size: 3, k: 4 })
        ));
        assert!(matches!(
            sample_null(&m, 2, 1, 1),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn sampling_is_deterministic_and_distinct() {
        let a = SampleSets::draw(40, 5, 3000, 42).unwrap();
        let b = SampleSets::draw(40, 5, 3000, 42).unwrap();
        let c = SampleSets::draw(40, 5, 3000, 43).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        for i in 0..a.len() {
            let mut s = a.get(i);
            s.sort_unstable();
            s.dedup();
            assert_eq!(s.len(), 5);
            assert!(s.iter().all(|&x| x < 40));
        }
        let one = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap();
        let d = one.install(|| SampleSets::draw(40, 5, 3000, 42).unwrap());
        assert_eq!(a, d);
    }

    #[test]
    fn t_test_at_the_mean_is_half() {
        let null = NullDistribution {
            k: 5,
            seed: 0,
            values: vec![],
            mean: 0.3,
            sd: 0.05,
        };
        let test = t_test(0.3, &null, 5).unwrap();
        assert_eq!(test.t, 0.0);
        assert_eq!(test.confidence, 0.5);
    }

    #[test]
    fn histogram_counts_everything() {
        let m = matrix(
            &["a", "b", "c", "d", "e", "f"],
            &(0..15).map(|i| i as f64 / 15.0).collect::<Vec<_>>(),
        );
        let null = sample_null(&m, 3, 500, 9).unwrap();
        let h = histogram(&null, 10, Some(0.99));
        assert_eq!(h.bins.len(), 10);
        assert_eq!(h.bins.iter().map(|b| b.count).sum::<u64>(), 500);
        assert_eq!(h.bins.last().unwrap().right, 0.99);
        let csv = h.to_csv();
        assert!(csv.starts_with("bin_left,bin_right,count\n"));
        assert!(csv
            .trim_end()
            .lines()
            .last()
            .unwrap()
            .starts_with("# mean="));
    }

    #[test]
    fn benchmark_set_file() {
        let sets = parse_benchmark_sets("# sets\nSI1\tp1,p2,p3\nSI2\tp4, p5\n").unwrap();
        assert_eq!(sets.len(), 2);
        assert_eq!(sets[1].members, ["p4", "p5"]);
        assert!(parse_benchmark_sets("SI1 p1,p2\n").is_err());
        assert!(matches!(
            parse_benchmark_sets("SI1\tp1\n"),
            Err(Error::TooFewResources(1))
        ));
        assert!(parse_benchmark_sets("S\ta,b\nS\tc,d\n").is_err());
    }

    #[test]
    fn judgement_file() {
        let j = Judgements::parse_csv("resource_a,resource_b,score\na,b,0.5\nc,a,0.25\n").unwrap();
        assert_eq!(j.len(), 2);
        assert_eq!(j.get("b", "a"), Some(0.5));
        assert_eq!(j.get("a", "c"), Some(0.25));
        assert!(Judgements::parse_csv("a,b,0.5\nb,a,0.6\n").is_err());
        assert!(Judgements::parse_csv("a,b,1.5\n").is_err());
        assert!(Judgements::parse_csv("a,b\n").is_err());
        assert_eq!(Judgements::parse_csv("a,b,1\n").unwrap().len(), 1);
    }

    #[test]
    fn experiment_single_method_single_pair() {
        let m = matrix(&["a", "b", "c", "d"], &[0.9, 0.1, 0.2, 0.3, 0.1, 0.15]);
        let sets = parse_benchmark_sets("S\ta,b\n").unwrap();
        let config = ExperimentConfig {
            samples: 200,
            seed: 3,
            ..Default::default()
        };
        let report = run_experiment(&[("m".into(), m)], &sets, None, &config).unwrap();
        assert_eq!(report.rows.len(), 1);
        assert_eq!(report.averages.len(), 1);
        assert_eq!(report.rows[0].cohesion, 0.9);
        assert!(report.rows[0].t > 0.0);
        assert_eq!(report.rows[0].pearson, PearsonCell::NotRequested);
        let csv = report.to_csv();
        assert!(csv.starts_with("method,set_id,cohesion,t,confidence,pearson\nm,S,0.900000,"));
        assert!(csv.contains("\nm,Average,0.900000,"));
    }

    #[test]
    fn experiment_pearson_cells() {
        let m = matrix(&["a", "b", "c", "d"], &[0.9, 0.0, 0.0, 0.0, 0.0, 0.0]);
        let flat = matrix(&["a", "b", "c", "d"], &[0.0; 6]);
        let sets = parse_benchmark_sets("S\ta,b,c\n").unwrap();
        let judged = Judgements::parse_csv("a,b,0.8\na,c,0.2\nb,c,0.3\n").unwrap();
        let config = ExperimentConfig {
            samples: 100,
            seed: 1,
            ..Default::default()
        };
        let report = run_experiment(&[("m".into(), m)], &sets, Some(&judged), &config).unwrap();
        assert!(matches!(report.rows[0].pearson, PearsonCell::Value(p) if p > 0.9));
        // All-zero similarities have no variance in the null either.
        assert!(matches!(
            run_experiment(
                &[("flat".into(), flat.clone())],
                &sets,
                Some(&judged),
                &config
            ),
            Err(Error::ZeroVariance)
        ));
        assert_eq!(
            pearson_for_set(&flat, &[0, 1, 2], Some(&judged)),
            PearsonCell::ConstantVector
        );
        assert_eq!(
            pearson_for_set(&flat, &[0, 3], Some(&judged)),
            PearsonCell::Insufficient
        );
    }
}
