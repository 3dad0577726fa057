//! A single entry point over every similarity measure, plus all-pairs matrices.
//!
//! Method specs follow the CLI grammar: `semsim:<weighting>:<norm>`, `dice`,
//! `jaccard`, `sigmoid`, `wnsim`, `rezaei-franti` and
//! `haase[:alpha=<a>,beta=<b>]`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;

use crate::baselines::{self, IdfTable};
use crate::corpus::{AnnotationVector, Corpus};
use crate::error::{Error, Result};
use crate::semsim::{self, NormFactor};
use crate::taxonomy::Taxonomy;
use crate::weighting::{weigh, WeightedTaxonomy, WeightingMethod};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Measure {
    SemSim {
        weighting: WeightingMethod,
        norm: NormFactor,
    },
    Dice,
    Jaccard,
    Sigmoid,
    WnSim,
    RezaeiFranti,
    Haase {
        alpha: f64,
        beta: f64,
    },
}

impl Measure {
    /// The 16 weighting × normalization combinations.
    pub fn semsim_configurations() -> Vec<Measure> {
        WeightingMethod::ALL
            .iter()
            .flat_map(|&weighting| {
                NormFactor::ALL
                    .iter()
                    .map(move |&norm| Measure::SemSim { weighting, norm })
            })
            .collect()
    }

    pub fn baselines() -> Vec<Measure> {
        vec![
            Measure::Dice,
            Measure::Jaccard,
            Measure::Sigmoid,
            Measure::WnSim,
            Measure::RezaeiFranti,
            Measure::Haase {
                alpha: baselines::HAASE_ALPHA,
                beta: baselines::HAASE_BETA,
            },
        ]
    }

    pub fn all() -> Vec<Measure> {
        let mut all = Self::semsim_configurations();
        all.extend(Self::baselines());
        all
    }

    /// Whether building a scorer for this measure needs a corpus.
    pub fn needs_corpus(&self) -> bool {
        match self {
            Measure::SemSim { weighting, .. } => weighting.is_extensional(),
            Measure::WnSim => true,
            _ => false,
        }
    }

    /// Closed range of values the measure can produce on `taxonomy`.
    pub fn range(&self, taxonomy: &Taxonomy) -> (f64, f64) {
        match self {
            Measure::WnSim => (0.0, (2.0 * taxonomy.max_depth_edges() as f64).ln()),
            _ => (0.0, 1.0),
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Measure::SemSim { weighting, norm } => write!(f, "semsim:{weighting}:{norm}"),
            Measure::Dice => f.write_str("dice"),
            Measure::Jaccard => f.write_str("jaccard"),
            Measure::Sigmoid => f.write_str("sigmoid"),
            Measure::WnSim => f.write_str("wnsim"),
            Measure::RezaeiFranti => f.write_str("rezaei-franti"),
            Measure::Haase { alpha, beta } => {
                if *alpha == baselines::HAASE_ALPHA && *beta == baselines::HAASE_BETA {
                    f.write_str("haase")
                } else {
                    write!(f, "haase:alpha={alpha},beta={beta}")
                }
            }
        }
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(spec: &str) -> Result<Self> {
        let bad = |message: &str| Error::InvalidMethod {
            spec: spec.to_owned(),
            message: message.to_owned(),
        };
        let (head, rest) = match spec.split_once(':') {
            Some((h, r)) => (h, Some(r)),
            None => (spec, None),
        };
        let plain = |m: Measure| match rest {
            None => Ok(m),
            Some(_) => Err(bad("this method takes no parameters")),
        };
        match head.to_ascii_lowercase().as_str() {
            "semsim" => {
                let rest = rest.ok_or_else(|| bad("expected semsim:<weighting>:<norm>"))?;
                let (w, n) = rest
                    .split_once(':')
                    .ok_or_else(|| bad("expected semsim:<weighting>:<norm>"))?;
                Ok(Measure::SemSim {
                    weighting: w.parse()?,
                    norm: n.parse()?,
                })
            }
            "dice" => plain(Measure::Dice),
            "jaccard" => plain(Measure::Jaccard),
            "sigmoid" => plain(Measure::Sigmoid),
            "wnsim" => plain(Measure::WnSim),
            "rezaei-franti" => plain(Measure::RezaeiFranti),
            "haase" => {
                let (mut alpha, mut beta) = (baselines::HAASE_ALPHA, baselines::HAASE_BETA);
                if let Some(params) = rest {
                    for kv in params.split(',') {
                        let (k, v) = kv
                            .split_once('=')
                            .ok_or_else(|| bad("expected key=value"))?;
                        let v: f64 = v
                            .trim()
                            .parse()
                            .map_err(|_| bad("parameter is not a number"))?;
                        if !(v > 0.0 && v.is_finite()) {
                            return Err(bad("alpha and beta must be positive"));
                        }
                        match k.trim() {
                            "alpha" => alpha = v,
                            "beta" => beta = v,
                            _ => return Err(bad("unknown parameter, expected alpha or beta")),
                        }
                    }
                }
                Ok(Measure::Haase { alpha, beta })
            }
            _ => Err(bad("unknown method")),
        }
    }
}

#[derive(Debug, Clone)]
enum Context {
    Weighted(Arc<WeightedTaxonomy>),
    Taxonomy(Arc<Taxonomy>),
    Idf(Arc<Taxonomy>, Arc<IdfTable>),
}

/// A measure bound to everything it needs to score vector pairs.
#[derive(Debug, Clone)]
pub struct Scorer {
    measure: Measure,
    context: Context,
}

impl Scorer {
    /// `weight_corpus` feeds the extensional weightings and WNSim's IDF.
    pub fn new(
        measure: Measure,
        taxonomy: &Arc<Taxonomy>,
        weight_corpus: Option<&Corpus>,
    ) -> Result<Self> {
        let context = match measure {
            Measure::SemSim { weighting, .. } => {
                Context::Weighted(Arc::new(weigh(taxonomy, weighting, weight_corpus)?))
            }
            Measure::WnSim => {
                let corpus = weight_corpus.ok_or_else(|| Error::MissingCorpus("wnsim".into()))?;
                if corpus.is_empty() {
                    return Err(Error::EmptyCorpus);
                }
                if !corpus.taxonomy().same_shape(taxonomy) {
                    return Err(Error::TaxonomyMismatch);
                }
                Context::Idf(taxonomy.clone(), Arc::new(IdfTable::from_corpus(corpus)))
            }
            _ => Context::Taxonomy(taxonomy.clone()),
        };
        Ok(Scorer { measure, context })
    }

    pub fn measure(&self) -> Measure {
        self.measure
    }

    pub fn taxonomy(&self) -> &Taxonomy {
        match &self.context {
            Context::Weighted(wt) => wt.taxonomy(),
            Context::Taxonomy(t) | Context::Idf(t, _) => t,
        }
    }

    pub fn score(&self, a: &AnnotationVector, b: &AnnotationVector) -> Result<f64> {
        Ok(match (&self.measure, &self.context) {
            (Measure::SemSim { norm, .. }, Context::Weighted(wt)) => {
                semsim::semsim(wt, a, b, *norm)
            }
            (Measure::Dice, _) => baselines::dice(a, b),
            (Measure::Jaccard, _) => baselines::jaccard(a, b),
            (Measure::Sigmoid, _) => baselines::sigmoid(a, b),
            (Measure::WnSim, Context::Idf(t, idf)) => baselines::wnsim_sym(t, idf, a, b)?,
            (Measure::RezaeiFranti, Context::Taxonomy(t)) => baselines::rezaei_franti(t, a, b),
            (Measure::Haase { alpha, beta }, Context::Taxonomy(t)) => {
                baselines::haase_sym(t, a, b, *alpha, *beta)
            }
            _ => unreachable!("scorer context matches its measure"),
        })
    }

    pub fn score_ids(&self, corpus: &Corpus, a: &str, b: &str) -> Result<f64> {
        self.score(
            &corpus.resource(a)?.annotations,
            &corpus.resource(b)?.annotations,
        )
    }
}

/// Dense symmetric all-pairs similarity matrix over a corpus.
#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityMatrix {
    ids: Vec<String>,
    values: Vec<f64>,
}

impl SimilarityMatrix {
    pub fn from_values(ids: Vec<String>, values: Vec<f64>) -> Result<Self> {
        let n = ids.len();
        if values.len() != n * n {
            return Err(Error::LengthMismatch {
                left: values.len(),
                right: n * n,
            });
        }
        Ok(SimilarityMatrix { ids, values })
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.ids.len() + j]
    }

    pub fn position(&self, id: &str) -> Result<usize> {
        self.ids
            .iter()
            .position(|x| x == id)
            .ok_or_else(|| Error::UnknownResource(id.to_owned()))
    }

    /// Header row and column of resource ids, values with six decimals.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec![String::new()];
        header.extend(self.ids.iter().cloned());
        w.write_record(&header).expect("in-memory write");
        for (i, id) in self.ids.iter().enumerate() {
            let mut row = vec![id.clone()];
            row.extend((0..self.len()).map(|j| format!("{:.6}", self.get(i, j))));
            w.write_record(&row).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
    }
}

/// Scores every unordered pair (and the diagonal) of `corpus`. Rows are
/// computed in parallel; each cell is a pure function of its pair, so the
/// result does not depend on the number of workers.
pub fn similarity_matrix(scorer: &Scorer, corpus: &Corpus) -> Result<SimilarityMatrix> {
    let resources = corpus.resources();
    let n = resources.len();
    let rows: Vec<Result<Vec<f64>>> = (0..n)
        .into_par_iter()
        .map(|i| {
            (i..n)
                .map(|j| scorer.score(&resources[i].annotations, &resources[j].annotations))
                .collect()
        })
        .collect();
    let mut values = vec![0.0; n * n];
    for (i, row) in rows.into_iter().enumerate() {
        for (offset, v) in row?.into_iter().enumerate() {
            let j = i + offset;
            values[i * n + j] = v;
            values[j * n + i] = v;
        }
    }
    SimilarityMatrix::from_values(resources.iter().map(|r| r.id.clone()).collect(), values)
}
