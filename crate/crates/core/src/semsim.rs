//! Concept similarity (`consim`) and annotation-vector similarity (`semsim`).
//!
//! `consim(c1, c2) = 2·IC(lcs(c1, c2)) / (IC(c1) + IC(c2))`, with the
//! degenerate cases resolved as follows:
//!
//! * `c1 == c2` gives 1;
//! * any infinite IC (a concept never seen in the weighting corpus) gives 0;
//! * a zero denominator gives 0.
//!
//! `semsim` pairs the concepts of the two vectors one-to-one so that the sum
//! of `consim` values is maximal, then divides that sum by a normalization
//! factor of the two vector sizes.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::assignment::{self, Weights};
use crate::corpus::AnnotationVector;
use crate::error::{Error, Result};
use crate::taxonomy::Concept;
use crate::weighting::WeightedTaxonomy;

/// Denominator applied to the best pairing total.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NormFactor {
    Max,
    Min,
    Ave,
    Gav,
}

impl NormFactor {
    pub const ALL: [NormFactor; 4] = [Self::Max, Self::Min, Self::Ave, Self::Gav];

    pub fn apply(self, n: usize, m: usize) -> f64 {
        let (n, m) = (n as f64, m as f64);
        match self {
            Self::Max => n.max(m),
            Self::Min => n.min(m),
            Self::Ave => (n + m) / 2.0,
            Self::Gav => (n * m).sqrt(),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Max => "max",
            Self::Min => "min",
            Self::Ave => "ave",
            Self::Gav => "gav",
        }
    }
}

impl fmt::Display for NormFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for NormFactor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "max" => Ok(Self::Max),
            "min" => Ok(Self::Min),
            "ave" => Ok(Self::Ave),
            "gav" => Ok(Self::Gav),
            _ => Err(Error::InvalidMethod {
                spec: s.to_owned(),
                message: "normalization must be one of max, min, ave, gav".into(),
            }),
        }
    }
}

pub fn consim(wt: &WeightedTaxonomy, c1: Concept, c2: Concept) -> f64 {
    if c1 == c2 {
        return 1.0;
    }
    let (ic1, ic2) = (wt.ic(c1), wt.ic(c2));
    if ic1.is_infinite() || ic2.is_infinite() {
        return 0.0;
    }
    let denom = ic1 + ic2;
    if denom <= 0.0 {
        return 0.0;
    }
    let lcs = wt.taxonomy().lcs(c1, c2);
    (2.0 * wt.ic(lcs) / denom).min(1.0)
}

pub fn consim_by_id(wt: &WeightedTaxonomy, c1: &str, c2: &str) -> Result<f64> {
    let t = wt.taxonomy();
    Ok(consim(wt, t.resolve(c1)?, t.resolve(c2)?))
}

/// Row-major `n × m` matrix of `consim(av1[i], av2[j])`.
pub fn consim_matrix(
    wt: &WeightedTaxonomy,
    av1: &AnnotationVector,
    av2: &AnnotationVector,
) -> Vec<f64> {
    let mut out = Vec::with_capacity(av1.len() * av2.len());
    for &a in av1.concepts() {
        for &b in av2.concepts() {
            out.push(consim(wt, a, b));
        }
    }
    out
}

/// One-to-one pairing of `min(n, m)` concepts with maximal `consim` total.
#[derive(Debug, Clone, PartialEq)]
pub struct Matching {
    /// `(index in av1, index in av2, consim)` ordered by the first index.
    pub pairs: Vec<(usize, usize, f64)>,
    pub total: f64,
}

/// Totals that differ by less than this are treated as tied when choosing
/// the canonical pairing.
const TIE_TOLERANCE: f64 = 1e-12;

/// The maximizing pairing. Among equally good pairings the one with the
/// lexicographically smallest index pairs is reported.
pub fn best_matching(
    wt: &WeightedTaxonomy,
    av1: &AnnotationVector,
    av2: &AnnotationVector,
) -> Matching {
    let data = consim_matrix(wt, av1, av2);
    let w = Weights::new(&data, av1.len(), av2.len());
    let assignment = assignment::canonical_max_weight_assignment(w, TIE_TOLERANCE);
    let pairs: Vec<(usize, usize, f64)> = assignment
        .iter()
        .enumerate()
        .filter_map(|(i, j)| j.map(|j| (i, j, w.get(i, j))))
        .collect();
    let total = pairs.iter().map(|p| p.2).sum();
    Matching { pairs, total }
}

/// Deterministic argument order so that `f(a, b)` and `f(b, a)` run the exact
/// same floating-point operations.
pub(crate) fn canonical_order<'a>(
    a: &'a AnnotationVector,
    b: &'a AnnotationVector,
) -> (&'a AnnotationVector, &'a AnnotationVector) {
    match a
        .len()
        .cmp(&b.len())
        .then_with(|| a.concepts().cmp(b.concepts()))
    {
        Ordering::Greater => (b, a),
        _ => (a, b),
    }
}

/// Maximal pairing total divided by `norm(n, m)`. Symmetric bit-for-bit.
pub fn semsim(
    wt: &WeightedTaxonomy,
    av1: &AnnotationVector,
    av2: &AnnotationVector,
    norm: NormFactor,
) -> f64 {
    let (a, b) = canonical_order(av1, av2);
    let data = consim_matrix(wt, a, b);
    let total = assignment::max_weight_total(Weights::new(&data, a.len(), b.len()));
    total / norm.apply(a.len(), b.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::weighting::{weigh, WeightingMethod};

    fn td() -> WeightedTaxonomy {
        weigh(&fixtures::person_taxonomy(), WeightingMethod::Td, None).unwrap()
    }

    fn av(wt: &WeightedTaxonomy, ids: &[&str]) -> AnnotationVector {
        AnnotationVector::from_ids(wt.taxonomy(), ids).unwrap()
    }

    #[test]
    fn norm_factors() {
        assert_eq!(NormFactor::Max.apply(2, 8), 8.0);
        assert_eq!(NormFactor::Min.apply(2, 8), 2.0);
        assert_eq!(NormFactor::Ave.apply(2, 8), 5.0);
        assert_eq!(NormFactor::Gav.apply(2, 8), 4.0);
        for nf in NormFactor::ALL {
            assert_eq!(nf.as_str().parse::<NormFactor>().unwrap(), nf);
            assert_eq!(nf.apply(3, 3), 3.0);
        }
        assert!("median".parse::<NormFactor>().is_err());
    }

    #[test]
    fn consim_examples_under_td() {
        let wt = td();
        assert_eq!(consim_by_id(&wt, "Employee", "Student").unwrap(), 0.0);
        assert!((consim_by_id(&wt, "Employee", "Freelance").unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(consim_by_id(&wt, "Worker", "Worker").unwrap(), 1.0);
        assert_eq!(consim_by_id(&wt, "Person", "Person").unwrap(), 1.0);
        assert_eq!(consim_by_id(&wt, "Person", "Worker").unwrap(), 0.0);
        assert!(matches!(
            consim_by_id(&wt, "Robot", "Worker"),
            Err(Error::UnknownConcept { .. })
        ));
    }

    #[test]
    fn consim_with_unseen_concepts() {
        let t = fixtures::person_taxonomy();
        let corpus = crate::corpus::Corpus::parse_jsonl(
            r#"{"id":"a","annotations":["Student","Employee"]}"#,
            t.clone(),
        )
        .unwrap();
        let wt = weigh(&t, WeightingMethod::Cf, Some(&corpus)).unwrap();
        // Freelance never occurs: IC is infinite.
        assert_eq!(consim_by_id(&wt, "Freelance", "Employee").unwrap(), 0.0);
        assert_eq!(consim_by_id(&wt, "Freelance", "Freelance").unwrap(), 1.0);
        let both_unseen = crate::corpus::Corpus::parse_jsonl(
            r#"{"id":"a","annotations":["Student"]}"#,
            t.clone(),
        )
        .unwrap();
        let wt = weigh(&t, WeightingMethod::Cf, Some(&both_unseen)).unwrap();
        assert_eq!(consim_by_id(&wt, "Freelance", "Employee").unwrap(), 0.0);
    }

    #[test]
    fn semsim_examples() {
        let wt = td();
        let a = av(&wt, &["Worker", "Student"]);
        let b = av(&wt, &["Student"]);
        assert_eq!(semsim(&wt, &a, &b, NormFactor::Min), 1.0);
        assert_eq!(semsim(&wt, &a, &b, NormFactor::Max), 0.5);
        assert_eq!(semsim(&wt, &b, &a, NormFactor::Max), 0.5);
        assert_eq!(semsim(&wt, &a, &a, NormFactor::Gav), 1.0);
    }

    #[test]
    fn best_matching_examples() {
        let wt = td();
        let m = best_matching(&wt, &av(&wt, &["Employee"]), &av(&wt, &["Freelance"]));
        assert_eq!(m.pairs.len(), 1);
        assert!((m.total - 0.5).abs() < 1e-15);

        let v = av(&wt, &["Employee", "Student", "Worker"]);
        let m = best_matching(&wt, &v, &v);
        assert_eq!(m.total, 3.0);
        let idx: Vec<(usize, usize)> = m.pairs.iter().map(|p| (p.0, p.1)).collect();
        assert_eq!(idx, [(0, 0), (1, 1), (2, 2)]);

        // |P| = min(n, m) even when a pair contributes nothing.
        let m = best_matching(
            &wt,
            &av(&wt, &["Employee", "Student"]),
            &av(&wt, &["Freelance", "Worker"]),
        );
        assert_eq!(m.pairs.len(), 2);
    }
}
