//! Concept weights and information content.
//!
//! Four methods are supported. The extensional ones read frequencies off a
//! corpus:
//!
//! * **CF** (concept frequency): `w(c) = n(c+) / N`
//! * **AF** (annotation frequency): `w(c) = |AV_c+| / |AV|`, i.e. `e^-IDF(c)`
//!
//! The intensional ones use the tree alone:
//!
//! * **TD** (top-down): the root weighs 1 and each concept gets an equal
//!   share of its parent's weight.
//! * **IIC** (intrinsic IC): `iic(c) = 1 - ln(|desc(c)| + 1) / ln(|C|)`,
//!   used directly as information content.
//!
//! For CF, AF and TD the information content is `-ln w(c)`. Zero-weight
//! concepts get an infinite IC rather than being smoothed.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::corpus::Corpus;
use crate::error::{Error, Result};
use crate::taxonomy::{Concept, Taxonomy};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WeightingMethod {
    Cf,
    Af,
    Td,
    Iic,
}

impl WeightingMethod {
    pub const ALL: [WeightingMethod; 4] = [Self::Af, Self::Cf, Self::Td, Self::Iic];

    pub fn is_extensional(self) -> bool {
        matches!(self, Self::Cf | Self::Af)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Cf => "CF",
            Self::Af => "AF",
            Self::Td => "TD",
            Self::Iic => "IIC",
        }
    }
}

impl fmt::Display for WeightingMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for WeightingMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "CF" => Ok(Self::Cf),
            "AF" => Ok(Self::Af),
            "TD" => Ok(Self::Td),
            "IIC" => Ok(Self::Iic),
            _ => Err(Error::InvalidMethod {
                spec: s.to_owned(),
                message: "weighting must be one of CF, AF, TD, IIC".into(),
            }),
        }
    }
}

/// A taxonomy together with per-concept weights and information content
/// under one weighting method.
#[derive(Debug, Clone)]
pub struct WeightedTaxonomy {
    taxonomy: Arc<Taxonomy>,
    method: WeightingMethod,
    /// Empty for IIC.
    weight: Vec<f64>,
    ic: Vec<f64>,
}

fn check_corpus<'a>(
    taxonomy: &Taxonomy,
    corpus: Option<&'a Corpus>,
    method: WeightingMethod,
) -> Result<&'a Corpus> {
    let corpus = corpus.ok_or_else(|| Error::MissingCorpus(method.to_string()))?;
    if corpus.is_empty() || corpus.total_occurrences() == 0 {
        return Err(Error::EmptyCorpus);
    }
    if !std::ptr::eq(corpus.taxonomy().as_ref(), taxonomy)
        && !corpus.taxonomy().same_shape(taxonomy)
    {
        return Err(Error::TaxonomyMismatch);
    }
    Ok(corpus)
}

/// `n(c+) / N`.
pub fn w_cf(corpus: &Corpus, c: Concept) -> f64 {
    corpus.occurrences_plus(c) as f64 / corpus.total_occurrences() as f64
}

/// `|AV_c+| / |AV|`.
pub fn w_af(corpus: &Corpus, c: Concept) -> f64 {
    corpus.vectors_containing_plus(c) as f64 / corpus.len() as f64
}

/// Natural-log inverse annotation frequency; infinite when no vector mentions
/// `c` or a descendant.
pub fn idf(corpus: &Corpus, c: Concept) -> f64 {
    let hits = corpus.vectors_containing_plus(c);
    if hits == 0 {
        f64::INFINITY
    } else {
        (corpus.len() as f64 / hits as f64).ln()
    }
}

/// Top-down weights for every concept, indexed by handle.
pub fn td_weights(t: &Taxonomy) -> Vec<f64> {
    let mut w = vec![0.0; t.len()];
    for c in t.breadth_first() {
        w[c.index()] = match t.parent(c) {
            None => 1.0,
            Some(p) => w[p.index()] / t.children(p).len() as f64,
        };
    }
    w
}

pub fn w_td(t: &Taxonomy, c: Concept) -> f64 {
    // Walk the root path instead of building the full table.
    t.ancestors_or_self(c)
        .filter_map(|x| t.parent(x))
        .fold(1.0, |acc, p| acc / t.children(p).len() as f64)
}

pub fn iic(t: &Taxonomy, c: Concept) -> Result<f64> {
    if t.len() < 2 {
        return Err(Error::DegenerateTaxonomy);
    }
    if c == t.root() {
        return Ok(0.0);
    }
    let desc = t.descendant_count(c) as f64;
    Ok(1.0 - (desc + 1.0).ln() / (t.len() as f64).ln())
}

fn ic_from_weight(w: f64, base: f64) -> f64 {
    if w > 0.0 {
        // -log(1) is 0 exactly; avoid emitting -0.0.
        let ic = if base == std::f64::consts::E {
            -w.ln()
        } else {
            -w.log(base)
        };
        if ic == 0.0 {
            0.0
        } else {
            ic
        }
    } else {
        f64::INFINITY
    }
}

/// Weighs `taxonomy` with `method`. CF and AF require `corpus`; TD and IIC ignore it.
///
/// The corpus may be a different collection from the one being compared, as
/// long as it was loaded against the same taxonomy.
pub fn weigh(
    taxonomy: &Arc<Taxonomy>,
    method: WeightingMethod,
    corpus: Option<&Corpus>,
) -> Result<WeightedTaxonomy> {
    let weight: Vec<f64> = match method {
        WeightingMethod::Cf => {
            let corpus = check_corpus(taxonomy, corpus, method)?;
            taxonomy.concepts().map(|c| w_cf(corpus, c)).collect()
        }
        WeightingMethod::Af => {
            let corpus = check_corpus(taxonomy, corpus, method)?;
            taxonomy.concepts().map(|c| w_af(corpus, c)).collect()
        }
        WeightingMethod::Td => td_weights(taxonomy),
        WeightingMethod::Iic => {
            let ic = taxonomy
                .concepts()
                .map(|c| iic(taxonomy, c))
                .collect::<Result<Vec<_>>>()?;
            return Ok(WeightedTaxonomy {
                taxonomy: taxonomy.clone(),
                method,
                weight: Vec::new(),
                ic,
            });
        }
    };
    let ic = weight
        .iter()
        .map(|&w| ic_from_weight(w, std::f64::consts::E))
        .collect();
    Ok(WeightedTaxonomy {
        taxonomy: taxonomy.clone(),
        method,
        weight,
        ic,
    })
}

impl WeightedTaxonomy {
    pub fn taxonomy(&self) -> &Arc<Taxonomy> {
        &self.taxonomy
    }

    pub fn method(&self) -> WeightingMethod {
        self.method
    }

    /// Probability weight of `c`; `None` under IIC, which has no weights.
    pub fn weight(&self, c: Concept) -> Option<f64> {
        self.weight.get(c.index()).copied()
    }

    /// Information content of `c`, possibly `f64::INFINITY`.
    pub fn ic(&self, c: Concept) -> f64 {
        self.ic[c.index()]
    }

    /// Same weights with information content taken in another logarithm base.
    pub fn with_log_base(&self, base: f64) -> Result<Self> {
        if self.method == WeightingMethod::Iic {
            return Err(Error::InvalidArgument(
                "IIC does not derive from weights".into(),
            ));
        }
        if !(base > 0.0 && base != 1.0) {
            return Err(Error::InvalidArgument(format!(
                "invalid logarithm base {base}"
            )));
        }
        Ok(WeightedTaxonomy {
            taxonomy: self.taxonomy.clone(),
            method: self.method,
            weight: self.weight.clone(),
            ic: self
                .weight
                .iter()
                .map(|&w| ic_from_weight(w, base))
                .collect(),
        })
    }

    /// `concept_id,weight,ic` rows sorted by concept id. Infinity prints as
    /// `inf`; the weight column is empty under IIC.
    pub fn to_csv(&self) -> String {
        let mut rows: Vec<Concept> = self.taxonomy.concepts().collect();
        rows.sort_by(|&a, &b| self.taxonomy.name(a).cmp(self.taxonomy.name(b)));
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["concept_id", "weight", "ic"])
            .expect("in-memory write");
        for c in rows {
            let weight = self.weight(c).map(|x| x.to_string()).unwrap_or_default();
            w.write_record([self.taxonomy.name(c), &weight, &self.ic(c).to_string()])
                .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
    }
}
