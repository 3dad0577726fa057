//! Reference measures used to benchmark `semsim`.
//!
//! Set-theoretic: Dice, Jaccard and Sigmoid compare the vectors as plain
//! sets of concept ids. Taxonomy-based: WNSim (Leacock–Chodorow weighted by
//! IDF), Rezaei–Fränti (Wu–Palmer over a one-to-one pairing) and Haase et
//! al. (exponential path decay times a depth term). WNSim and Haase are
//! directional, so both are exposed symmetrized as the mean of the two
//! directions.

use crate::assignment::{self, Weights};
use crate::corpus::{AnnotationVector, Corpus};
use crate::error::{Error, Result};
use crate::semsim::canonical_order;
use crate::taxonomy::{Concept, Taxonomy};
use crate::weighting;

pub const HAASE_ALPHA: f64 = 0.2;
pub const HAASE_BETA: f64 = 0.6;

fn intersection(a: &AnnotationVector, b: &AnnotationVector) -> usize {
    a.concepts().iter().filter(|&&c| b.contains(c)).count()
}

pub fn dice(a: &AnnotationVector, b: &AnnotationVector) -> f64 {
    2.0 * intersection(a, b) as f64 / (a.len() + b.len()) as f64
}

pub fn jaccard(a: &AnnotationVector, b: &AnnotationVector) -> f64 {
    let common = intersection(a, b);
    common as f64 / (a.len() + b.len() - common) as f64
}

pub fn sigmoid(a: &AnnotationVector, b: &AnnotationVector) -> f64 {
    let common = intersection(a, b);
    let difference = (a.len() - common) + (b.len() - common);
    let e = (common as f64).exp();
    (e - 1.0) / ((e + 1.0) * (difference as f64 + 1.0))
}

/// Natural-log IDF for every concept of a taxonomy, computed from a corpus.
#[derive(Debug, Clone)]
pub struct IdfTable(Vec<f64>);

impl IdfTable {
    pub fn from_corpus(corpus: &Corpus) -> Self {
        IdfTable(
            corpus
                .taxonomy()
                .concepts()
                .map(|c| weighting::idf(corpus, c))
                .collect(),
        )
    }

    pub fn get(&self, c: Concept) -> f64 {
        self.0[c.index()]
    }
}

/// Leacock–Chodorow similarity `-ln(length / (2·maxdepth))` with the path
/// length counted in edges and floored at 1, so identical concepts score
/// `ln(2·maxdepth)` instead of diverging.
pub fn lch(t: &Taxonomy, a: Concept, b: Concept) -> f64 {
    let length = t.path_length_edges(a, b).max(1) as f64;
    -(length / (2.0 * t.max_depth_edges() as f64)).ln()
}

pub fn wnsim_directed(
    t: &Taxonomy,
    idf: &IdfTable,
    a: &AnnotationVector,
    b: &AnnotationVector,
) -> Result<f64> {
    if t.max_depth_edges() == 0 {
        return Err(Error::DegenerateTaxonomy);
    }
    let mut weighted = 0.0;
    let mut weights = 0.0;
    for &ci in a.concepts() {
        let w = idf.get(ci);
        if w.is_infinite() {
            return Err(Error::InfiniteIdf(t.name(ci).to_owned()));
        }
        let best = b
            .concepts()
            .iter()
            .map(|&cj| lch(t, ci, cj))
            .fold(f64::NEG_INFINITY, f64::max);
        weighted += best * w;
        weights += w;
    }
    if weights == 0.0 {
        return Err(Error::ZeroIdfSum);
    }
    // A weighted mean of values in [0, ln(2·maxdepth)]; keep rounding inside.
    let top = (2.0 * t.max_depth_edges() as f64).ln();
    Ok((weighted / weights).clamp(0.0, top))
}

pub fn wnsim_sym(
    t: &Taxonomy,
    idf: &IdfTable,
    a: &AnnotationVector,
    b: &AnnotationVector,
) -> Result<f64> {
    Ok((wnsim_directed(t, idf, a, b)? + wnsim_directed(t, idf, b, a)?) / 2.0)
}

/// Wu–Palmer similarity with node-counted depth (root depth 1).
pub fn wu_palmer(t: &Taxonomy, a: Concept, b: Concept) -> f64 {
    let l = t.lcs(a, b);
    2.0 * t.depth_nodes(l) as f64 / (t.depth_nodes(a) + t.depth_nodes(b)) as f64
}

/// Pairs every concept of the smaller vector with a distinct concept of the
/// larger one so that the Wu–Palmer total is maximal, then divides by the
/// larger cardinality.
pub fn rezaei_franti(t: &Taxonomy, a: &AnnotationVector, b: &AnnotationVector) -> f64 {
    let (small, large) = canonical_order(a, b);
    let mut data = Vec::with_capacity(small.len() * large.len());
    for &ci in small.concepts() {
        for &cj in large.concepts() {
            data.push(wu_palmer(t, ci, cj));
        }
    }
    let total = assignment::max_weight_total(Weights::new(&data, small.len(), large.len()));
    total / large.len() as f64
}

/// `e^(-α·l) · tanh(β·h)` for distinct concepts, 1 for identical ones, with
/// `l` the path length and `h` the edge depth of the common subsumer.
pub fn haase_concept(t: &Taxonomy, a: Concept, b: Concept, alpha: f64, beta: f64) -> f64 {
    if a == b {
        return 1.0;
    }
    let l = t.path_length_edges(a, b) as f64;
    let h = t.depth_edges(t.lcs(a, b)) as f64;
    (-alpha * l).exp() * (beta * h).tanh()
}

pub fn haase_directed(
    t: &Taxonomy,
    a: &AnnotationVector,
    b: &AnnotationVector,
    alpha: f64,
    beta: f64,
) -> f64 {
    let sum: f64 = a
        .concepts()
        .iter()
        .map(|&ci| {
            b.concepts()
                .iter()
                .map(|&cj| haase_concept(t, ci, cj, alpha, beta))
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .sum();
    sum / a.len() as f64
}

pub fn haase_sym(
    t: &Taxonomy,
    a: &AnnotationVector,
    b: &AnnotationVector,
    alpha: f64,
    beta: f64,
) -> f64 {
    (haase_directed(t, a, b, alpha, beta) + haase_directed(t, b, a, alpha, beta)) / 2.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use std::sync::Arc;

    fn av(t: &Taxonomy, ids: &[&str]) -> AnnotationVector {
        AnnotationVector::from_ids(t, ids).unwrap()
    }

    fn letters() -> Arc<Taxonomy> {
        Arc::new(Taxonomy::parse_edge_list("r\t-\na\tr\nb\tr\nc\tr\nd\tr\n").unwrap())
    }

    #[test]
    fn set_measures_on_disjoint_vectors() {
        let t = letters();
        let (x, y) = (av(&t, &["a", "b"]), av(&t, &["c", "d"]));
        assert_eq!(dice(&x, &y), 0.0);
        assert_eq!(jaccard(&x, &y), 0.0);
        assert_eq!(sigmoid(&x, &y), 0.0);
    }

    #[test]
    fn set_measures_on_identical_vectors() {
        let t = letters();
        let x = av(&t, &["a", "b", "c"]);
        assert_eq!(dice(&x, &x), 1.0);
        assert_eq!(jaccard(&x, &x), 1.0);
        let e3 = 3f64.exp();
        assert!((sigmoid(&x, &x) - (e3 - 1.0) / (e3 + 1.0)).abs() < 1e-15);
    }

    #[test]
    fn set_measures_on_overlap() {
        let t = letters();
        let (x, y) = (av(&t, &["a", "b"]), av(&t, &["b", "c"]));
        assert_eq!(dice(&x, &y), 0.5);
        assert!((jaccard(&x, &y) - 1.0 / 3.0).abs() < 1e-15);
        let e = std::f64::consts::E;
        let expected = (e - 1.0) / ((e + 1.0) * 3.0);
        assert!((sigmoid(&x, &y) - expected).abs() < 1e-15);
        assert!((sigmoid(&x, &y) - 0.1540).abs() < 5e-5);
    }

    #[test]
    fn wnsim_identity_and_far_pairs() {
        let (t, corpus) = fixtures::running_example();
        let idf = IdfTable::from_corpus(&corpus);
        let max_depth = t.max_depth_edges() as f64;
        let s = av(&t, &["Student"]);
        let d = wnsim_directed(&t, &idf, &s, &s).unwrap();
        assert!((d - (2.0 * max_depth).ln()).abs() < 1e-15);

        // Employee–Freelance paths have length 2 < 2·maxdepth; Employee–Student is 3.
        let e = av(&t, &["Employee"]);
        let d = wnsim_directed(&t, &idf, &e, &s).unwrap();
        assert!((d - (4.0f64 / 3.0).ln()).abs() < 1e-15);
    }

    #[test]
    fn wnsim_zero_when_paths_span_the_tree() {
        let t = Arc::new(Taxonomy::parse_edge_list("r\t-\na\tr\nb\tr\n").unwrap());
        let corpus = Corpus::parse_jsonl(
            "{\"id\":\"x\",\"annotations\":[\"a\"]}\n{\"id\":\"y\",\"annotations\":[\"b\"]}\n",
            t.clone(),
        )
        .unwrap();
        let idf = IdfTable::from_corpus(&corpus);
        assert_eq!(
            wnsim_sym(&t, &idf, &av(&t, &["a"]), &av(&t, &["b"])).unwrap(),
            0.0
        );
    }

    #[test]
    fn wnsim_errors() {
        let (t, corpus) = fixtures::running_example();
        let idf = IdfTable::from_corpus(&corpus);
        // The root occurs in every vector: IDF 0.
        let root = av(&t, &["Person"]);
        assert!(matches!(
            wnsim_directed(&t, &idf, &root, &root),
            Err(Error::ZeroIdfSum)
        ));
        let sparse =
            Corpus::parse_jsonl(r#"{"id":"x","annotations":["Student"]}"#, t.clone()).unwrap();
        let idf = IdfTable::from_corpus(&sparse);
        let e = av(&t, &["Employee"]);
        assert!(matches!(
            wnsim_directed(&t, &idf, &e, &e),
            Err(Error::InfiniteIdf(_))
        ));
    }

    #[test]
    fn rezaei_franti_examples() {
        let t = fixtures::person_taxonomy();
        let s = av(&t, &["Student"]);
        assert_eq!(rezaei_franti(&t, &s, &s), 1.0);
        let a = av(&t, &["Employee", "Student"]);
        let b = av(&t, &["Freelance"]);
        assert!((rezaei_franti(&t, &a, &b) - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(rezaei_franti(&t, &a, &b), rezaei_franti(&t, &b, &a));
        let (student, freelance) = (
            t.resolve("Student").unwrap(),
            t.resolve("Freelance").unwrap(),
        );
        assert!((wu_palmer(&t, student, freelance) - 0.4).abs() < 1e-15);
    }

    #[test]
    fn haase_examples() {
        let t = fixtures::person_taxonomy();
        let x = av(&t, &["Employee", "Student"]);
        assert_eq!(haase_sym(&t, &x, &x, HAASE_ALPHA, HAASE_BETA), 1.0);
        let (e, s, f) = (
            t.resolve("Employee").unwrap(),
            t.resolve("Student").unwrap(),
            t.resolve("Freelance").unwrap(),
        );
        assert_eq!(haase_concept(&t, e, s, HAASE_ALPHA, HAASE_BETA), 0.0);
        let expected = (-0.4f64).exp() * 0.6f64.tanh();
        assert!((haase_concept(&t, e, f, HAASE_ALPHA, HAASE_BETA) - expected).abs() < 1e-15);
    }
}
